//! Bistellar simplification: greedy descent toward the minimal sphere,
//! with a small annealing escape hatch.
//!
//! The search minimizes the lexicographic key `(f_0, f_d)`. Moves with a
//! negative key delta are always preferred; key-neutral or key-worsening
//! moves are accepted with a decaying probability and tagged as annealing
//! steps in the trace. Verdict REDUCED means the final complex is
//! isomorphic to `∂Δ^{d+1}`. The heuristic makes no completeness claim in
//! dimension 3; UNKNOWN is an acceptable verdict.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{derive_seed, ExploreError};
use crate::complex::Complex;
use crate::generate;
use crate::iso::are_isomorphic;
use crate::moves::{self, MoveSite};
use crate::trace::Trace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Reduced,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SimplifyOptions {
    pub max_steps: usize,
    pub restarts: usize,
    /// Extra vertices the annealing phase may add above the input count.
    pub vertex_slack: usize,
    /// Starting acceptance probability for non-improving moves; halves
    /// every `max_steps / 5` accepted steps.
    pub initial_acceptance: f64,
}

impl Default for SimplifyOptions {
    fn default() -> Self {
        SimplifyOptions {
            max_steps: 400,
            restarts: 12,
            vertex_slack: 3,
            initial_acceptance: 0.3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub seed: u64,
    pub moves_by_kind: Vec<usize>,
    pub annealing_steps: usize,
    pub restarts_used: usize,
    /// Excluded from serialized reports so identical seeds produce
    /// byte-identical output.
    #[serde(skip)]
    pub wall_time_ms: u128,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub verdict: Verdict,
    pub final_complex: Complex,
    pub trace: Trace,
    pub stats: SearchStats,
}

impl SearchReport {
    /// Deterministic text rendering (wall time excluded).
    pub fn render(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Reduced => "REDUCED",
            Verdict::Unknown => "UNKNOWN",
        };
        let kinds: Vec<String> = self
            .stats
            .moves_by_kind
            .iter()
            .enumerate()
            .map(|(k, n)| format!("kind{k}={n}"))
            .collect();
        format!(
            "verdict: {verdict}\nseed: {}\nsteps: {}\nmoves: {}\nannealing: {}\nrestarts: {}\nfinal: f-vector {} vertices {}\n",
            self.stats.seed,
            self.trace.len(),
            kinds.join(" "),
            self.stats.annealing_steps,
            self.stats.restarts_used,
            self.final_complex.f_vector(),
            self.final_complex.vertex_count(),
        )
    }
}

fn key(c: &Complex) -> (usize, usize) {
    (c.vertex_count(), c.facet_count())
}

fn key_delta(c: &Complex, site: &MoveSite) -> (isize, isize) {
    let d = c.dim();
    let dv = if site.kind() == d {
        1
    } else if site.kind() == 0 {
        -1
    } else {
        0
    };
    (dv, site.facet_delta())
}

fn improving(delta: (isize, isize)) -> bool {
    delta < (0, 0)
}

struct RestartOutcome {
    reduced: bool,
    final_complex: Complex,
    trace: Trace,
    moves_by_kind: Vec<usize>,
    annealing_steps: usize,
}

fn run_restart(
    c: &Complex,
    seed: u64,
    opts: &SimplifyOptions,
    target: &Complex,
    vertex_cap: usize,
) -> RestartOutcome {
    let d = c.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = c.clone();
    let mut trace = Trace::new("input", Some(seed));
    let mut moves_by_kind = vec![0usize; d + 1];
    let mut annealing_steps = 0usize;
    let mut acceptance = opts.initial_acceptance;
    let halving = (opts.max_steps / 5).max(1);
    let mut reduced = false;
    for _ in 0..opts.max_steps {
        if current.f_vector() == target.f_vector()
            && are_isomorphic(&current, target).is_some()
        {
            reduced = true;
            break;
        }
        let sites = super::walk::budgeted_moves(&current, vertex_cap);
        let improving_sites: Vec<&MoveSite> = sites
            .iter()
            .filter(|s| improving(key_delta(&current, s)))
            .collect();
        let (site, annealed) = if !improving_sites.is_empty() {
            (
                improving_sites[rng.gen_range(0..improving_sites.len())].clone(),
                false,
            )
        } else if !sites.is_empty() {
            // plateau: drift along the flattest moves, occasionally
            // accepting an arbitrary (possibly uphill) one
            let site = if rng.gen_bool(acceptance) {
                sites[rng.gen_range(0..sites.len())].clone()
            } else {
                let min = sites
                    .iter()
                    .map(|s| key_delta(&current, s))
                    .min()
                    .expect("sites is nonempty");
                let lateral: Vec<&MoveSite> = sites
                    .iter()
                    .filter(|s| key_delta(&current, s) == min)
                    .collect();
                lateral[rng.gen_range(0..lateral.len())].clone()
            };
            (site, true)
        } else {
            break;
        };
        current = moves::apply_move(&current, &site).expect("enumerated sites are admissible");
        moves_by_kind[site.kind()] += 1;
        if annealed {
            annealing_steps += 1;
            trace.push_annealed_move(site);
            if annealing_steps % halving == 0 {
                acceptance /= 2.0;
            }
        } else {
            trace.push_move(site);
        }
    }
    if !reduced {
        // a final check in case the last accepted move landed on the target
        reduced = current.f_vector() == target.f_vector()
            && are_isomorphic(&current, target).is_some();
    }
    trace.end = Some(current.clone());
    RestartOutcome {
        reduced,
        final_complex: current,
        trace,
        moves_by_kind,
        annealing_steps,
    }
}

/// Greedy bistellar descent with restarts; verdict REDUCED means the
/// result is isomorphic to the minimal `d`-sphere. Deterministic given the
/// seed. Supported for closed pseudomanifolds of dimension at most 3.
pub fn simplify(
    c: &Complex,
    seed: u64,
    opts: &SimplifyOptions,
) -> Result<SearchReport, ExploreError> {
    let d = c.dim();
    if d > 3 {
        return Err(ExploreError::UnsupportedDimension(d));
    }
    if !c.is_closed_pseudomanifold() {
        return Err(ExploreError::NotClosed);
    }
    let start = std::time::Instant::now();
    let target = generate::sphere(d);
    let vertex_cap = c.vertex_count() + opts.vertex_slack;
    let mut best: Option<(usize, (usize, usize), RestartOutcome)> = None;
    for r in 0..opts.restarts.max(1) {
        let outcome = run_restart(c, derive_seed(seed, r as u64), opts, &target, vertex_cap);
        if outcome.reduced {
            return Ok(SearchReport {
                verdict: Verdict::Reduced,
                final_complex: outcome.final_complex.clone(),
                stats: SearchStats {
                    seed,
                    moves_by_kind: outcome.moves_by_kind.clone(),
                    annealing_steps: outcome.annealing_steps,
                    restarts_used: r + 1,
                    wall_time_ms: start.elapsed().as_millis(),
                },
                trace: outcome.trace,
            });
        }
        let k = key(&outcome.final_complex);
        if best.as_ref().map_or(true, |(_, bk, _)| k < *bk) {
            best = Some((r, k, outcome));
        }
    }
    let (_, _, outcome) = best.expect("at least one restart ran");
    Ok(SearchReport {
        verdict: Verdict::Unknown,
        final_complex: outcome.final_complex.clone(),
        stats: SearchStats {
            seed,
            moves_by_kind: outcome.moves_by_kind.clone(),
            annealing_steps: outcome.annealing_steps,
            restarts_used: opts.restarts.max(1),
            wall_time_ms: start.elapsed().as_millis(),
        },
        trace: outcome.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explore::random_walk;

    #[test]
    fn already_minimal_sphere_reduces_immediately() {
        let s = generate::sphere(2);
        let report = simplify(&s, 1, &SimplifyOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Reduced);
        assert!(report.trace.is_empty());
    }

    #[test]
    fn perturbed_sphere_reduces() {
        let s = generate::sphere(2);
        let (perturbed, _) = random_walk(&s, 30, 12, 5).unwrap();
        let report = simplify(&perturbed, 5, &SimplifyOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Reduced);
        assert!(are_isomorphic(&report.final_complex, &s).is_some());
        // replaying the trace reproduces the final complex
        assert_eq!(report.trace.replay(&perturbed).unwrap(), report.final_complex);
    }

    #[test]
    fn projective_plane_stays_unknown() {
        let rp2 = generate::projective_plane();
        let opts = SimplifyOptions {
            max_steps: 60,
            restarts: 3,
            ..SimplifyOptions::default()
        };
        let report = simplify(&rp2, 3, &opts).unwrap();
        assert_eq!(report.verdict, Verdict::Unknown);
    }

    #[test]
    fn unsupported_dimension() {
        assert_eq!(
            simplify(&generate::sphere(4), 0, &SimplifyOptions::default()).unwrap_err(),
            ExploreError::UnsupportedDimension(4)
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let s = generate::sphere(2);
        let (perturbed, _) = random_walk(&s, 20, 10, 8).unwrap();
        let a = simplify(&perturbed, 8, &SimplifyOptions::default()).unwrap();
        let b = simplify(&perturbed, 8, &SimplifyOptions::default()).unwrap();
        assert_eq!(a.render(), b.render());
        assert_eq!(a.trace.to_text(), b.trace.to_text());
    }
}
