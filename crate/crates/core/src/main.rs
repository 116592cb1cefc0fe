//! `mixsim`: generate topologies, simulate communication, compute measures.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 runtime / IO error.
//! The default seed can be set with `MIXSIM_SEED`; `--seed` and seeds in
//! experiment files take precedence.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mixbiotic::commsim::{run_logged, EventMode, SimConfig};
use mixbiotic::experiment::{compare_networks, repetition_seed, run_repetitions, Case, Execution, ExperimentSpec};
use mixbiotic::fmt::sig6_opt;
use mixbiotic::msm::{classify_phase, PhaseRule};
use mixbiotic::netgen::{degree_histogram, graph_features, to_edge_list, Graph, GraphFeatures};
use mixbiotic::specfile::{parse_experiment, parse_graph_source};
use mixbiotic::{experiment::NetworkKind, msm, svg, trajectory, Error};

const SEED_ENV: &str = "MIXSIM_SEED";
const FALLBACK_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "mixsim", version, about = "Communication simulation and mixbiotic society measures on organizational networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a topology and write it as an edge list.
    Gen(GenArgs),
    /// Print graph features and the degree histogram.
    Features(FeaturesArgs),
    /// Simulate one graph and one rate case over repetitions.
    Run(RunArgs),
    /// Run the network x case comparison grid.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Star,
    Tree,
    Jumpers,
    Ws,
    Ba,
    Hypercube,
}

#[derive(Args, Debug)]
struct GenArgs {
    kind: GenKind,
    /// Vertex count (star, ws, ba).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 9)]
    branching: usize,
    #[arg(long, default_value_t = 2)]
    depth: u32,
    /// Jumper edges added to the tree.
    #[arg(long, default_value_t = 30)]
    jumpers: usize,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = 0.55)]
    p: f64,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 6)]
    dim: u32,
    /// Construction seed for random kinds.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct FeaturesArgs {
    /// Edge-list path or inline constructor such as `star:91`.
    graph: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExecArg {
    Serial,
    Parallel,
}

impl From<ExecArg> for Execution {
    fn from(e: ExecArg) -> Self {
        match e {
            ExecArg::Serial => Execution::Serial,
            ExecArg::Parallel => Execution::Parallel,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Single,
    PerVertex,
}

impl From<ModeArg> for EventMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Single => EventMode::SingleEvent,
            ModeArg::PerVertex => EventMode::PerVertex,
        }
    }
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Edge-list path or inline constructor such as `star:91`.
    #[arg(long)]
    graph: String,
    #[arg(long, default_value_t = 0.4)]
    g: f64,
    #[arg(long, default_value_t = 0.4)]
    d: f64,
    #[arg(long, default_value_t = 1)]
    u: u64,
    #[arg(long, default_value_t = 10)]
    n0: usize,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long, default_value_t = 100)]
    reps: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Single)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = ExecArg::Parallel)]
    execution: ExecArg,
    /// Measures CSV; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Trajectory of repetition 0 as CSV.
    #[arg(long)]
    trajectory_csv: Option<PathBuf>,
    /// Trajectory of repetition 0 as SVG.
    #[arg(long)]
    trajectory_svg: Option<PathBuf>,
    /// Event log of repetition 0 as CSV.
    #[arg(long)]
    events: Option<PathBuf>,
    /// Information series of repetition 0 as CSV.
    #[arg(long)]
    series_csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["default", "spec"])))]
struct CompareArgs {
    /// Built-in six-network, four-case protocol.
    #[arg(long)]
    default: bool,
    /// Experiment file.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "compare-out")]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = ExecArg::Parallel)]
    execution: ExecArg,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let res = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Features(a) => cmd_features(a),
        Command::Run(a) => cmd_run(a),
        Command::Compare(a) => cmd_compare(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn default_seed() -> Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(FALLBACK_SEED),
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    flag.map_or_else(default_seed, Ok)
}

fn load_graph(src: &str, master_seed: u64) -> Result<(String, Graph), Failure> {
    let spec = parse_graph_source(src)?;
    let graph = spec.build(master_seed, 0).map_err(|e| match (&spec.kind, e) {
        (NetworkKind::EdgeList { path }, Error::Io(io)) => {
            Failure::Runtime(format!("{}: {io}", path.display()))
        }
        (_, e) => e.into(),
    })?;
    Ok((spec.name, graph))
}

fn write_output(path: &Path, bytes: &[u8]) -> CliResult {
    fs::write(path, bytes).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn cmd_gen(a: GenArgs) -> CliResult {
    let kind = match a.kind {
        GenKind::Star => NetworkKind::Star { n: a.n.unwrap_or(91) },
        GenKind::Tree => NetworkKind::Tree { branching: a.branching, depth: a.depth },
        GenKind::Jumpers => NetworkKind::TreeJumpers { branching: a.branching, depth: a.depth, jumpers: a.jumpers },
        GenKind::Ws => NetworkKind::Ws { n: a.n.unwrap_or(91), k: a.k, p: a.p },
        GenKind::Ba => NetworkKind::Ba { n: a.n.unwrap_or(91), m: a.m },
        GenKind::Hypercube => NetworkKind::Hypercube { dim: a.dim },
    };
    let seed = resolve_seed(a.seed)?;
    let g = kind.build(seed)?;
    let text = to_edge_list(&g);
    let summary = features_text(&graph_features(&g), &g);
    match a.out {
        Some(path) => {
            write_output(&path, text.as_bytes())?;
            print!("{summary}");
        }
        None => {
            io::stdout().write_all(text.as_bytes())?;
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn features_csv(f: &GraphFeatures, g: &Graph) -> String {
    let mut out = String::from("feature,value\n");
    out.push_str(&format!("vertex_count,{}\n", f.vertex_count));
    out.push_str(&format!("edge_count,{}\n", f.edge_count));
    out.push_str(&format!("diameter,{}\n", f.diameter.map(|d| d.to_string()).unwrap_or_default()));
    out.push_str(&format!("mean_distance,{}\n", sig6_opt(f.mean_distance)));
    out.push_str(&format!("density,{}\n", sig6_opt(Some(f.density))));
    out.push_str(&format!("mean_clustering,{}\n", sig6_opt(Some(f.mean_clustering))));
    out.push_str("\ndegree,count\n");
    for (d, c) in degree_histogram(g).iter() {
        out.push_str(&format!("{d},{c}\n"));
    }
    out
}

fn features_text(f: &GraphFeatures, g: &Graph) -> String {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "undefined".into());
    let mut out = String::new();
    out.push_str(&format!("{:<16}{}\n", "vertex count", f.vertex_count));
    out.push_str(&format!("{:<16}{}\n", "edge count", f.edge_count));
    out.push_str(&format!("{:<16}{}\n", "diameter", opt(f.diameter.map(|d| d.to_string()))));
    out.push_str(&format!("{:<16}{}\n", "mean distance", opt(f.mean_distance.map(|d| format!("{d:.3}")))));
    out.push_str(&format!("{:<16}{:.4}\n", "density", f.density));
    out.push_str(&format!("{:<16}{:.4}\n", "clustering", f.mean_clustering));
    out.push_str("degree histogram\n");
    for (d, c) in degree_histogram(g).iter() {
        out.push_str(&format!("  {d:>6} {c:>8}\n"));
    }
    out
}

fn cmd_features(a: FeaturesArgs) -> CliResult {
    let (_, g) = load_graph(&a.graph, default_seed()?)?;
    let f = graph_features(&g);
    let out = match a.format {
        Format::Csv => features_csv(&f, &g),
        Format::Text => features_text(&f, &g),
    };
    io::stdout().write_all(out.as_bytes())?;
    Ok(())
}

fn cmd_run(a: RunArgs) -> CliResult {
    let seed = resolve_seed(a.seed)?;
    let (name, g) = load_graph(&a.graph, seed)?;
    let case = Case { g: a.g, d: a.d };
    let cfg = SimConfig {
        g_rate: a.g,
        d_rate: a.d,
        u: a.u,
        n0: a.n0,
        t_max: a.steps,
        mode: a.mode.into(),
        seed,
    };
    let summary = run_repetitions(&g, &cfg, a.reps, seed, a.execution.into())?;
    let mut csv = Vec::new();
    msm::write_csv(&mut csv, &[(name.clone(), case.label(), summary.average.clone())])?;
    match &a.out {
        Some(p) => write_output(p, &csv)?,
        None => io::stdout().write_all(&csv)?,
    }
    match classify_phase(&summary.average, &PhaseRule::default()) {
        Ok(p) => eprintln!("phase (heuristic): {p}"),
        Err(e) => eprintln!("phase (heuristic): not classified, {e}"),
    }

    if a.trajectory_csv.is_some() || a.trajectory_svg.is_some() || a.events.is_some() || a.series_csv.is_some() {
        let first = SimConfig { seed: repetition_seed(seed, 0), ..cfg };
        let (series, log) = run_logged(&g, &first)?;
        let points = trajectory::trajectory(&series);
        if let Some(p) = &a.trajectory_csv {
            let mut buf = Vec::new();
            trajectory::write_csv(&mut buf, &points)?;
            write_output(p, &buf)?;
        }
        if let Some(p) = &a.trajectory_svg {
            write_output(p, svg::trajectory_svg(&[(name.as_str(), &points)]).as_bytes())?;
        }
        if let Some(p) = &a.events {
            let mut buf = Vec::new();
            log.write_csv(&mut buf)?;
            write_output(p, &buf)?;
        }
        if let Some(p) = &a.series_csv {
            let mut buf = Vec::new();
            series.write_csv(&mut buf)?;
            write_output(p, &buf)?;
        }
    }
    Ok(())
}

fn cmd_compare(a: CompareArgs) -> CliResult {
    let mut spec = match &a.spec {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
            parse_experiment(&text, default_seed()?)?
        }
        None => ExperimentSpec::paper_default(default_seed()?),
    };
    if let Some(s) = a.seed {
        spec.master_seed = s;
    }
    let report = compare_networks(&spec, a.execution.into())?;
    let written = report
        .write_outputs(&a.out_dir)
        .map_err(|e| Failure::Runtime(format!("{}: {e}", a.out_dir.display())))?;
    for p in &written {
        println!("wrote {}", p.display());
    }
    let failed = report.failed_cells();
    if failed > 0 {
        for c in &report.cells {
            if let mixbiotic::experiment::CellOutcome::Failed(m) = &c.outcome {
                eprintln!(
                    "cell {} / {} failed: {m}",
                    report.networks[c.network].name,
                    report.cases[c.case].label()
                );
            }
        }
        return Err(Failure::Runtime(format!("{failed} cell(s) failed")));
    }
    Ok(())
}
