//! Replayable traces of applied moves and shellings.
//!
//! Line-oriented text format:
//!
//! ```text
//! start <name> seed <seed|->
//! <k> a1 a2 ... | b1 b2 ...        # one Pachner move, optional trailing *
//! S s1 s2 ... | a1 ... | b1 ...    # one elementary shelling (deletion)
//! end f1.f2.f3 | ...               # optional: expected final facet set
//! ```
//!
//! A trailing `*` on a move line marks an annealing acceptance during
//! simplification; replay ignores the tag. Replaying a trace from its
//! start complex is bit-deterministic and re-verifies admissibility at
//! every step.

use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::Complex;
use crate::moves::{self, MoveError, MoveSite};
use crate::shellings::{self, ShellingError, ShellingSite};
use crate::simplex::Simplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    Move { site: MoveSite, annealed: bool },
    Shelling { site: ShellingSite },
}

/// A materialized finite sequence of moves applied to a named start
/// complex.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Trace {
    pub start: String,
    pub seed: Option<u64>,
    pub steps: Vec<TraceStep>,
    /// The expected end complex, when recorded.
    pub end: Option<Complex>,
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("step {index}: {source}")]
    Move {
        index: usize,
        #[source]
        source: MoveError,
    },
    #[error("step {index}: {source}")]
    Shelling {
        index: usize,
        #[source]
        source: ShellingError,
    },
    #[error("replayed complex differs from the recorded end state")]
    EndMismatch,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("trace line {line}: {msg}")]
pub struct TraceParseError {
    pub line: usize,
    pub msg: String,
}

impl Trace {
    pub fn new(start: impl Into<String>, seed: Option<u64>) -> Self {
        Trace {
            start: start.into(),
            seed,
            steps: Vec::new(),
            end: None,
        }
    }

    pub fn push_move(&mut self, site: MoveSite) {
        self.steps.push(TraceStep::Move {
            site,
            annealed: false,
        });
    }

    pub fn push_annealed_move(&mut self, site: MoveSite) {
        self.steps.push(TraceStep::Move {
            site,
            annealed: true,
        });
    }

    pub fn push_shelling(&mut self, site: ShellingSite) {
        self.steps.push(TraceStep::Shelling { site });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays every step from `start`, re-verifying admissibility, and
    /// checks the recorded end state when present.
    pub fn replay(&self, start: &Complex) -> Result<Complex, ReplayError> {
        let mut current = start.clone();
        for (index, step) in self.steps.iter().enumerate() {
            current = match step {
                TraceStep::Move { site, .. } => moves::apply_move(&current, site)
                    .map_err(|source| ReplayError::Move { index, source })?,
                TraceStep::Shelling { site } => shellings::apply_shelling(&current, site)
                    .map(|(c, _)| c)
                    .map_err(|source| ReplayError::Shelling { index, source })?,
            };
        }
        if let Some(end) = &self.end {
            if *end != current {
                return Err(ReplayError::EndMismatch);
            }
        }
        Ok(current)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let seed = match self.seed {
            Some(s) => s.to_string(),
            None => "-".to_string(),
        };
        writeln!(out, "start {} seed {}", self.start, seed).unwrap();
        for step in &self.steps {
            match step {
                TraceStep::Move { site, annealed } => {
                    writeln!(
                        out,
                        "{} {} | {}{}",
                        site.kind(),
                        labels(site.a()),
                        labels(site.b()),
                        if *annealed { " *" } else { "" }
                    )
                    .unwrap();
                }
                TraceStep::Shelling { site } => {
                    writeln!(
                        out,
                        "S {} | {} | {}",
                        labels(&site.sigma),
                        labels(&site.a),
                        labels(&site.b)
                    )
                    .unwrap();
                }
            }
        }
        if let Some(end) = &self.end {
            let facets: Vec<String> = end.facets().iter().map(labels).collect();
            writeln!(out, "end {}", facets.join(" | ")).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Trace, TraceParseError> {
        let err = |line, msg: &str| TraceParseError {
            line,
            msg: msg.to_string(),
        };
        let mut trace: Option<Trace> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some(trace_ref) = trace.as_mut() else {
                let mut parts = line.split_whitespace();
                if parts.next() != Some("start") {
                    return Err(err(line_no, "expected `start <name> seed <seed>` header"));
                }
                let name = parts
                    .next()
                    .ok_or_else(|| err(line_no, "missing start name"))?;
                if parts.next() != Some("seed") {
                    return Err(err(line_no, "missing `seed` in header"));
                }
                let seed_tok = parts.next().ok_or_else(|| err(line_no, "missing seed"))?;
                let seed = if seed_tok == "-" {
                    None
                } else {
                    Some(
                        seed_tok
                            .parse::<u64>()
                            .map_err(|_| err(line_no, "seed is not an integer"))?,
                    )
                };
                trace = Some(Trace::new(name, seed));
                continue;
            };
            if let Some(rest) = line.strip_prefix("end ") {
                let mut facets = Vec::new();
                for part in rest.split('|') {
                    facets.push(parse_simplex(part, line_no)?);
                }
                let end = Complex::from_simplices(facets)
                    .map_err(|e| err(line_no, &format!("bad end state: {e}")))?;
                trace_ref.end = Some(end);
                continue;
            }
            if let Some(rest) = line.strip_prefix("S ") {
                let fields: Vec<&str> = rest.split('|').collect();
                if fields.len() != 3 {
                    return Err(err(line_no, "shelling line needs `S sigma | A | B`"));
                }
                let sigma = parse_simplex(fields[0], line_no)?;
                let a = parse_simplex(fields[1], line_no)?;
                let b = parse_simplex(fields[2], line_no)?;
                trace_ref.push_shelling(ShellingSite { sigma, a, b });
                continue;
            }
            // move line: `k a... | b... [*]`
            let (body, annealed) = match line.strip_suffix('*') {
                Some(body) => (body.trim(), true),
                None => (line, false),
            };
            let fields: Vec<&str> = body.split('|').collect();
            if fields.len() != 2 {
                return Err(err(line_no, "move line needs `k A | B`"));
            }
            let mut head = fields[0].split_whitespace();
            let kind: usize = head
                .next()
                .ok_or_else(|| err(line_no, "missing move kind"))?
                .parse()
                .map_err(|_| err(line_no, "move kind is not an integer"))?;
            let a = parse_labels(head, line_no)?;
            let b = parse_simplex(fields[1], line_no)?;
            if a.dim() != kind as isize {
                return Err(err(line_no, "move kind does not match |A| - 1"));
            }
            let site = MoveSite::new(a, b);
            if annealed {
                trace_ref.push_annealed_move(site);
            } else {
                trace_ref.push_move(site);
            }
        }
        trace.ok_or_else(|| err(0, "empty trace"))
    }
}

fn labels(s: &Simplex) -> String {
    s.vertices()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_labels<'a>(
    tokens: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<Simplex, TraceParseError> {
    let labels: Result<Vec<u32>, _> = tokens.map(str::parse).collect();
    let labels = labels.map_err(|_| TraceParseError {
        line,
        msg: "vertex label is not an integer".to_string(),
    })?;
    Simplex::try_from_labels(labels).map_err(|e| TraceParseError {
        line,
        msg: e.to_string(),
    })
}

fn parse_simplex(field: &str, line: usize) -> Result<Simplex, TraceParseError> {
    parse_labels(field.split_whitespace(), line)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::moves::apply_move;

    #[test]
    fn text_round_trip() {
        let s = generate::sphere(2);
        let mut trace = Trace::new("sphere2", Some(42));
        let site = MoveSite::new(Simplex::from_labels(&[1, 2, 3]), Simplex::from_labels(&[5]));
        let end = apply_move(&s, &site).unwrap();
        trace.push_move(site);
        trace.end = Some(end.clone());

        let text = trace.to_text();
        let parsed = Trace::parse(&text).unwrap();
        assert_eq!(parsed, trace);
        assert_eq!(parsed.to_text(), text);
        assert_eq!(parsed.replay(&s).unwrap(), end);
    }

    #[test]
    fn replay_rejects_divergence() {
        let s = generate::sphere(2);
        let mut trace = Trace::new("sphere2", None);
        trace.push_move(MoveSite::new(
            Simplex::from_labels(&[1, 2]),
            Simplex::from_labels(&[3, 4]),
        ));
        let err = trace.replay(&s).unwrap_err();
        assert!(matches!(err, ReplayError::Move { index: 0, .. }));
    }

    #[test]
    fn annealed_tag_survives_round_trip() {
        let mut trace = Trace::new("c", Some(1));
        trace.push_annealed_move(MoveSite::new(
            Simplex::from_labels(&[1, 2]),
            Simplex::from_labels(&[3, 4]),
        ));
        let text = trace.to_text();
        assert!(text.contains('*'));
        assert_eq!(Trace::parse(&text).unwrap(), trace);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "start c seed 1\nnot a move line\n";
        let err = Trace::parse(bad).unwrap_err();
        assert_eq!(err.line, 2);
    }
}
