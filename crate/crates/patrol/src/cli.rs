use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use patrol_core::graphdecomp::{
    decompose_even, decompose_odd_anchored, decompose_with_claw, eulerize,
};
use patrol_core::{
    brute_force_cyclic, decide, evaluate, minimal_latency, solve, Configuration, CyclicSolution,
    Decomposition, Partition, PeriodicWitness, SolverConfig,
};
use serde_json::json;

use crate::error::CliError;
use crate::gen::{random_integer_metric, random_points, SEED_VAR};
use crate::instance::{load_instance, read_json, GraphFile, Instance};
use crate::report::{PartitionFile, SolutionReport, TspChoice};
use crate::svg::render_svg;

#[derive(Debug, Parser)]
#[command(name = "patrol", version, about = "Cyclic multi-robot patrol schedules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArg {
    /// Instance JSON: {"points": [...]} or {"matrix": [...]}, optional "labels".
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Approximate the best cyclic solution.
    Solve {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum, default_value = "exact")]
        tsp: TspChoice,
        #[arg(long)]
        parallel: bool,
        /// Also write an SVG drawing (2-D point instances only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Re-evaluate a given partition (or a previous solution report).
    Evaluate {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        solution: PathBuf,
        /// Robot count; defaults to the file's "k", else one robot per part.
        #[arg(long)]
        k: Option<usize>,
        /// Defaults to the file's "tsp", else exact.
        #[arg(long, value_enum)]
        tsp: Option<TspChoice>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Optimal cyclic solution by exhaustive partition search.
    Oracle {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Decide whether k robots can keep every gap at most ell (integer metrics).
    Decide {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        /// Write the periodic witness here when the answer is true.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Smallest integer latency achievable by k robots (integer metrics).
    MinLatency {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        k: usize,
    },
    /// Eulerize or decompose a multigraph given as {"vertices": N, "edges": [[u, v], ...]}.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: DecomposeMode,
        #[arg(long)]
        anchor: Option<usize>,
    },
    /// Print a random instance; the seed comes from PATROL_SEED (default 0).
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "points")]
        kind: GenKind,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 100.0)]
        scale: f64,
        #[arg(long, default_value_t = 3)]
        max_weight: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DecomposeMode {
    Eulerize,
    Even,
    OddAnchored,
    Claw,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Points,
    Integer,
}

/// Parses `args` (program name first), runs the subcommand, and writes JSON
/// to `out`. Returns the exit status: 0 on success, 2 on input errors, 3 when
/// a size limit is exceeded.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let err = CliError::Usage(e.render().to_string().trim().to_owned());
            return fail(&err, out);
        }
    };
    match execute(cli.command) {
        Ok(value) => match serde_json::to_writer_pretty(&mut *out, &value) {
            Ok(()) => {
                let _ = writeln!(out);
                0
            }
            Err(e) => fail(&CliError::Usage(e.to_string()), out),
        },
        Err(err) => fail(&err, out),
    }
}

fn fail(err: &CliError, out: &mut dyn Write) -> u8 {
    let body = json!({ "error": err.to_string(), "kind": err.kind() });
    let _ = writeln!(out, "{body}");
    err.exit_code()
}

fn execute(command: Command) -> Result<serde_json::Value, CliError> {
    match command {
        Command::Solve { input, k, epsilon, tsp, parallel, svg } => {
            let inst = load_instance(&input.input)?;
            let config = SolverConfig { parallel, ..SolverConfig::new(k, epsilon, tsp.algorithm()) };
            let solution = solve(&inst.space, &config)?;
            finish(&inst, &solution, tsp, Some(epsilon), svg.as_deref())
        }
        Command::Evaluate { input, solution, k, tsp, svg } => {
            let inst = load_instance(&input.input)?;
            let file: PartitionFile = read_json(&solution)?;
            let partition = Partition::new(file.partition, inst.space.len())?;
            let k = k.or(file.k).unwrap_or(partition.len());
            let tsp = tsp.or(file.tsp).unwrap_or(TspChoice::Exact);
            let solution = evaluate(&inst.space, &partition, k, tsp.algorithm())?;
            finish(&inst, &solution, tsp, None, svg.as_deref())
        }
        Command::Oracle { input, k, svg } => {
            let inst = load_instance(&input.input)?;
            let solution = brute_force_cyclic(&inst.space, k)?;
            finish(&inst, &solution, TspChoice::Exact, None, svg.as_deref())
        }
        Command::Decide { input, k, ell, witness } => {
            let inst = load_instance(&input.input)?;
            let decision = decide(&inst.space, k, ell)?;
            if let (Some(path), Some(w)) = (witness.as_deref(), decision.witness.as_ref()) {
                let body = witness_json(inst.space.len(), ell, w);
                write_file(path, &format!("{body:#}\n"))?;
            }
            Ok(json!({
                "answer": decision.answer,
                "k": k,
                "ell": ell,
                "explored": decision.explored,
            }))
        }
        Command::MinLatency { input, k } => {
            let inst = load_instance(&input.input)?;
            let latency = minimal_latency(&inst.space, k)?;
            Ok(json!({ "k": k, "minimal_latency": latency }))
        }
        Command::Decompose { input, mode, anchor } => {
            let graph = read_json::<GraphFile>(&input)?.into_graph()?;
            match mode {
                DecomposeMode::Eulerize => {
                    let e = eulerize(&graph)?;
                    Ok(json!({
                        "mode": "eulerize",
                        "duplicated": e.duplicated,
                        "vertices": e.graph.vertex_count(),
                        "edges": e.graph.edges(),
                    }))
                }
                DecomposeMode::Even => Ok(decomposition_json("even", &decompose_even(&graph)?)),
                DecomposeMode::OddAnchored => {
                    let anchor = anchor
                        .ok_or_else(|| CliError::Usage("--anchor is required for odd-anchored".into()))?;
                    Ok(decomposition_json("odd-anchored", &decompose_odd_anchored(&graph, anchor)?))
                }
                DecomposeMode::Claw => Ok(decomposition_json("claw", &decompose_with_claw(&graph)?)),
            }
        }
        Command::Gen { n, kind, dim, scale, max_weight } => {
            let seed = match std::env::var(SEED_VAR) {
                Ok(s) => s
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Usage(format!("{SEED_VAR} must be an unsigned integer, got {s:?}")))?,
                Err(_) => 0,
            };
            if n == 0 {
                return Err(CliError::Usage("--n must be ≥ 1".into()));
            }
            let file = match kind {
                GenKind::Points => {
                    if dim == 0 || !(scale.is_finite() && scale > 0.0) {
                        return Err(CliError::Usage("--dim must be ≥ 1 and --scale positive".into()));
                    }
                    random_points(seed, n, dim, scale)
                }
                GenKind::Integer => random_integer_metric(seed, n, max_weight),
            };
            Ok(serde_json::to_value(file).expect("instance serializes"))
        }
    }
}

/// Positions index the unit-subdivided graph: nodes `0..sites` are the
/// original sites, larger indices lie on subdivided edges.
fn witness_json(sites: usize, ell: usize, w: &PeriodicWitness) -> serde_json::Value {
    let configs = |cs: &[Configuration]| {
        cs.iter()
            .map(|c| json!({ "positions": c.positions, "deadlines": c.deadlines }))
            .collect::<Vec<_>>()
    };
    json!({ "sites": sites, "ell": ell, "prefix": configs(&w.prefix), "cycle": configs(&w.cycle) })
}

fn decomposition_json(mode: &str, d: &Decomposition) -> serde_json::Value {
    json!({
        "mode": mode,
        "two_paths": d.two_paths,
        "claw": d.claw,
        "leftover": d.leftover,
    })
}

fn finish(
    inst: &Instance,
    solution: &CyclicSolution,
    tsp: TspChoice,
    epsilon: Option<f64>,
    svg: Option<&Path>,
) -> Result<serde_json::Value, CliError> {
    if let Some(path) = svg {
        write_file(path, &render_svg(inst, solution)?)?;
    }
    let report = SolutionReport::new(&inst.space, solution, tsp, epsilon);
    Ok(serde_json::to_value(report).expect("report serializes"))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write { path: path.to_owned(), source })
}
