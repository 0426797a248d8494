//! Command-line surface for the pachner library.
//!
//! Exit codes: 0 success, 2 usage error, 3 input error, 4 inadmissible
//! operation, 5 search verdict UNKNOWN. Every failure prints exactly one
//! `ERROR <code>: <message>` line on stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pachner::complex::Complex;
use pachner::explore::{
    build_flip_graph, random_walk, simplify, ExploreError, SimplifyOptions, Verdict,
};
use pachner::generate;
use pachner::io::{self, Document};
use pachner::moves::{admissible_move_at, apply_move, enumerate_moves, MoveSite};
use pachner::shellings::{apply_shelling, enumerate_shellings, shell_to_facet, terminal_deletion};
use pachner::simplex::Simplex;
use pachner::trace::Trace;

#[derive(Parser)]
#[command(
    name = "pachner",
    about = "Pachner moves and elementary shellings on pure simplicial complexes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a complex from the builtin catalog
    Gen(GenArgs),
    /// Print invariants of a complex
    Info { file: PathBuf },
    /// List admissible Pachner moves, one per line, in deterministic order
    Moves {
        file: PathBuf,
        /// Only list moves of this kind (0..=d)
        #[arg(long)]
        kind: Option<usize>,
    },
    /// Apply the Pachner move at a face A
    Apply {
        file: PathBuf,
        /// Vertices of A, e.g. "1 2"
        #[arg(long)]
        a: String,
        /// Vertices of B; derived when omitted (fresh label for the k=d move)
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a seeded random walk of admissible moves
    Walk {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        /// Maximum number of vertices the walk may reach
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        seed: u64,
        /// Write the replayable trace here
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bistellar simplification toward the minimal sphere
    Simplify {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = SimplifyOptions::default().max_steps)]
        max_steps: usize,
        #[arg(long, default_value_t = SimplifyOptions::default().restarts)]
        restarts: usize,
        /// Reserved for parallel restarts; the search is deterministic and
        /// currently runs restarts sequentially regardless
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the flip graph up to isomorphism under a vertex budget
    Flipgraph {
        file: PathBuf,
        #[arg(long)]
        budget: usize,
        /// Directory receiving graph.txt and the node facet lists
        #[arg(long)]
        out: PathBuf,
        /// Reserved for parallel expansion; enumeration is deterministic
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Enumerate elementary shellings, or search for a full shelling order
    Shell {
        file: PathBuf,
        /// Search for a shelling order down to a single facet
        #[arg(long)]
        to_facet: bool,
        /// Seed for the shelling-order search (required with --to-facet)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Replay a trace against a start complex and check it step by step
    Verify {
        file: PathBuf,
        #[arg(long)]
        trace: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    kind: GenKind,
    /// Dimension, for sphere and simplex
    #[arg(long)]
    dim: Option<usize>,
    /// Input complexes, for cone (one) and suspension (one) and join (two)
    inputs: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    /// ∂Δ^{d+1}, the minimal d-sphere
    Sphere,
    /// The solid d-simplex as a single facet
    Simplex,
    Cone,
    Suspension,
    Join,
    Octahedron,
    ProjectivePlane,
}

/// A failure with its exit code; rendered as one `ERROR <code>` line.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: 3,
            message: message.to_string(),
        }
    }

    fn inadmissible(message: impl ToString) -> Self {
        Failure {
            code: 4,
            message: message.to_string(),
        }
    }

    fn unknown(message: impl ToString) -> Self {
        Failure {
            code: 5,
            message: message.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<Document, Failure> {
    io::load(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn parse_simplex(text: &str) -> Result<Simplex, Failure> {
    let labels: Vec<u32> = text
        .split_whitespace()
        .map(|t| t.parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::input(format!("not a vertex list: {text:?}")))?;
    Simplex::try_from_labels(labels).map_err(|e| Failure::input(e))
}

/// Writes the complex to `out` (text or `.json` by extension), or prints
/// its sorted facet list to stdout.
fn emit(c: &Complex, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => io::save(path, &Document::bare(c.clone()))
            .map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{}", io::format_facets(c));
            Ok(())
        }
    }
}

fn write_trace(trace: &Trace, path: Option<&Path>) -> Result<(), Failure> {
    if let Some(path) = path {
        std::fs::write(path, trace.to_text())
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn move_line(site: &MoveSite) -> String {
    format!(
        "{} {} | {}",
        site.kind(),
        io::simplex_labels(site.a()),
        io::simplex_labels(site.b())
    )
}

fn run_gen(args: GenArgs) -> Result<(), Failure> {
    let need_dim = || {
        args.dim
            .ok_or_else(|| Failure::input("--dim is required for this kind"))
    };
    let need_inputs = |n: usize| -> Result<Vec<Complex>, Failure> {
        if args.inputs.len() != n {
            return Err(Failure::input(format!(
                "this kind takes exactly {n} input file(s), got {}",
                args.inputs.len()
            )));
        }
        args.inputs
            .iter()
            .map(|p| load(p).map(|d| d.complex))
            .collect()
    };
    let c = match args.kind {
        GenKind::Sphere => generate::sphere(need_dim()?),
        GenKind::Simplex => generate::simplex(need_dim()?),
        GenKind::Cone => generate::cone(&need_inputs(1)?[0]),
        GenKind::Suspension => generate::suspension(&need_inputs(1)?[0]),
        GenKind::Join => {
            let inputs = need_inputs(2)?;
            generate::join(&inputs[0], &inputs[1]).map_err(Failure::input)?
        }
        GenKind::Octahedron => generate::octahedron(),
        GenKind::ProjectivePlane => generate::projective_plane(),
    };
    emit(&c, args.out.as_deref())
}

fn run_info(file: &Path) -> Result<(), Failure> {
    let c = load(file)?.complex;
    println!("dim: {}", c.dim());
    println!("f-vector: {}", c.f_vector());
    println!("euler: {}", c.euler_characteristic());
    match c.boundary_complex() {
        Ok(None) => {
            println!("closed: yes");
        }
        Ok(Some(b)) => {
            println!("closed: no");
            println!("boundary facets: {}", b.facet_count());
        }
        Err(_) => println!("closed: no (not a pseudomanifold)"),
    }
    match c.is_orientable() {
        Ok(true) => println!("orientable: yes"),
        Ok(false) => println!("orientable: no"),
        Err(_) => println!("orientable: n/a"),
    }
    match c.is_combinatorial_manifold() {
        Ok(true) => println!("manifold: yes"),
        Ok(false) => println!("manifold: no"),
        Err(_) => println!("manifold: unsupported above dimension 3"),
    }
    Ok(())
}

fn run_moves(file: &Path, kind: Option<usize>) -> Result<(), Failure> {
    let c = load(file)?.complex;
    if let Some(k) = kind {
        if k > c.dim() {
            return Err(Failure::input(format!(
                "kind {k} out of range for dimension {}",
                c.dim()
            )));
        }
    }
    for site in enumerate_moves(&c) {
        if kind.map_or(true, |k| site.kind() == k) {
            println!("{}", move_line(&site));
        }
    }
    Ok(())
}

fn run_apply(
    file: &Path,
    a: &str,
    b: Option<&str>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let c = load(file)?.complex;
    let a = parse_simplex(a)?;
    let site = match b {
        Some(b) => MoveSite::new(a, parse_simplex(b)?),
        None => admissible_move_at(&c, &a)
            .map_err(Failure::inadmissible)?
            .ok_or_else(|| Failure::inadmissible(format!("no admissible move at {a}")))?,
    };
    let moved = apply_move(&c, &site).map_err(Failure::inadmissible)?;
    emit(&moved, out)
}

fn run_walk(
    file: &Path,
    steps: usize,
    budget: usize,
    seed: u64,
    trace_out: Option<&Path>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let c = load(file)?.complex;
    let (end, mut trace) =
        random_walk(&c, steps, budget, seed).map_err(Failure::inadmissible)?;
    trace.start = file.display().to_string();
    write_trace(&trace, trace_out)?;
    emit(&end, out)
}

fn run_simplify(
    file: &Path,
    seed: u64,
    max_steps: usize,
    restarts: usize,
    jobs: usize,
    trace_out: Option<&Path>,
    out: Option<&Path>,
) -> Result<(), Failure> {
    if jobs == 0 {
        return Err(Failure::input("--jobs must be at least 1"));
    }
    let c = load(file)?.complex;
    let opts = SimplifyOptions {
        max_steps,
        restarts,
        ..SimplifyOptions::default()
    };
    let report = simplify(&c, seed, &opts).map_err(|e| match e {
        ExploreError::NotClosed | ExploreError::UnsupportedDimension(_) => Failure::input(e),
        other => Failure::inadmissible(other),
    })?;
    print!("{}", report.render());
    write_trace(&report.trace, trace_out)?;
    if out.is_some() {
        emit(&report.final_complex, out)?;
    }
    if report.verdict == Verdict::Unknown {
        return Err(Failure::unknown("simplification verdict UNKNOWN"));
    }
    Ok(())
}

fn run_flipgraph(file: &Path, budget: usize, out: &Path, jobs: usize) -> Result<(), Failure> {
    if jobs == 0 {
        return Err(Failure::input("--jobs must be at least 1"));
    }
    let c = load(file)?.complex;
    let graph = build_flip_graph(&c, budget).map_err(|e| match e {
        ExploreError::BudgetTooSmall { .. } | ExploreError::NotClosed => Failure::input(e),
        other => Failure::inadmissible(other),
    })?;
    std::fs::create_dir_all(out)
        .and_then(|_| graph.export_to(out))
        .map_err(|e| Failure::input(format!("{}: {e}", out.display())))?;
    println!("nodes: {}", graph.node_count());
    println!("edges: {}", graph.edge_count());
    println!(
        "connected: {}",
        if graph.is_connected() { "yes" } else { "no" }
    );
    Ok(())
}

fn run_shell(
    file: &Path,
    to_facet: bool,
    seed: Option<u64>,
    trace_out: Option<&Path>,
) -> Result<(), Failure> {
    let c = load(file)?.complex;
    if to_facet {
        let seed = seed.ok_or_else(|| Failure::input("--to-facet requires --seed"))?;
        let trace = shell_to_facet(&c, seed)
            .map_err(Failure::inadmissible)?
            .ok_or_else(|| Failure::unknown("no shelling order found within the attempt budget"))?;
        // print each deletion with its verified boundary-move witness
        let mut current = c;
        for step in &trace.steps {
            let pachner::TraceStep::Shelling { site } = step else {
                unreachable!("shelling traces contain only shellings");
            };
            let (next, witness) = apply_shelling(&current, site).map_err(Failure::inadmissible)?;
            println!(
                "S {} | {} | {} => boundary {}",
                io::simplex_labels(&site.sigma),
                io::simplex_labels(&site.a),
                io::simplex_labels(&site.b),
                move_line(&witness.site)
            );
            current = next;
        }
        write_trace(&trace, trace_out)?;
        return Ok(());
    }
    let sites = enumerate_shellings(&c).map_err(Failure::inadmissible)?;
    for site in &sites {
        let (_, witness) = apply_shelling(&c, site).map_err(Failure::inadmissible)?;
        println!(
            "S {} | {} | {} => boundary {}",
            io::simplex_labels(&site.sigma),
            io::simplex_labels(&site.a),
            io::simplex_labels(&site.b),
            move_line(&witness.site)
        );
    }
    if let Some(sigma) = terminal_deletion(&c) {
        println!("terminal deletion: {}", io::simplex_labels(&sigma));
    }
    Ok(())
}

fn run_verify(file: &Path, trace_path: &Path) -> Result<(), Failure> {
    let c = load(file)?.complex;
    let text = std::fs::read_to_string(trace_path)
        .map_err(|e| Failure::input(format!("{}: {e}", trace_path.display())))?;
    let trace =
        Trace::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", trace_path.display())))?;
    match trace.replay(&c) {
        Ok(end) => {
            println!("exact-match: {} steps, final f-vector {}", trace.len(), end.f_vector());
            Ok(())
        }
        Err(e) => Err(Failure::inadmissible(format!("first divergence: {e}"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Info { file } => run_info(&file),
        Command::Moves { file, kind } => run_moves(&file, kind),
        Command::Apply { file, a, b, out } => {
            run_apply(&file, &a, b.as_deref(), out.as_deref())
        }
        Command::Walk {
            file,
            steps,
            budget,
            seed,
            trace,
            out,
        } => run_walk(&file, steps, budget, seed, trace.as_deref(), out.as_deref()),
        Command::Simplify {
            file,
            seed,
            max_steps,
            restarts,
            jobs,
            trace,
            out,
        } => run_simplify(
            &file,
            seed,
            max_steps,
            restarts,
            jobs,
            trace.as_deref(),
            out.as_deref(),
        ),
        Command::Flipgraph {
            file,
            budget,
            out,
            jobs,
        } => run_flipgraph(&file, budget, &out, jobs),
        Command::Shell {
            file,
            to_facet,
            seed,
            trace,
        } => run_shell(&file, to_facet, seed, trace.as_deref()),
        Command::Verify { file, trace } => run_verify(&file, &trace),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ERROR {}: {}", f.code, f.message);
            ExitCode::from(f.code)
        }
    }
}
