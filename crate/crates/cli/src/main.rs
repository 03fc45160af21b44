use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spiderweb_cli::config::read_config;
use spiderweb_cli::{acceptance, commands, CliError, ExperimentReport, Params, EXIT_ASSERTION, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(name = "spiderweb", version, about = "Spider's web graphs, maximal operators and hyperbolic discretization")]
struct Cli {
    /// Flat key=value file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Root seed for every random stream.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    out_dir: Option<String>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Interior margin for metric assertions.
    #[arg(long, global = true)]
    margin: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated graph.
    Generate(GenerateArgs),
    /// Check the spider's web rules.
    Validate(ValidateArgs),
    /// Four-point hyperbolicity constant.
    Delta(DeltaArgs),
    /// Standard geodesics and the horizontal-length bound.
    Geodesic(GeodesicArgs),
    /// Evaluate the maximal function of one function.
    Maximal(MaximalArgs),
    /// Weak-type constants over a function family.
    Weaktype(WeaktypeArgs),
    /// Pair counts of random vertex sets.
    Paircount(PaircountArgs),
    /// Discretize the hyperbolic disk or a metric tree.
    Discretize(DiscretizeArgs),
    /// Run the acceptance suite.
    Accept(AcceptArgs),
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(long = "in")]
    input: Option<String>,
    /// Check the quasi rule with this parameter instead.
    #[arg(long)]
    quasi: Option<u32>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct DeltaArgs {
    #[arg(long = "in")]
    input: Option<String>,
    /// exhaustive | sampled
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct GeodesicArgs {
    #[arg(long = "in")]
    input: Option<String>,
    #[arg(long)]
    pairs: Option<usize>,
    /// Hyperbolicity constant; estimated when omitted.
    #[arg(long)]
    delta: Option<String>,
    /// Treat `--delta` as the exact constant of the graph.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    delta_exact: Option<bool>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct MaximalArgs {
    #[arg(long = "in")]
    input: Option<String>,
    /// point:ID | ball:ID:R | radial:A:ALPHA | const:C | file:PATH
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    rmax: Option<u32>,
    /// full | interior
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct WeaktypeArgs {
    #[arg(long = "in")]
    input: Option<String>,
    #[arg(long)]
    tau: Option<f64>,
    /// point_masses | balls | radial
    #[arg(long)]
    family: Option<String>,
    /// A single function instead of a family.
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    rmax: Option<u32>,
    /// full | interior
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct PaircountArgs {
    #[arg(long = "in")]
    input: Option<String>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    /// Comma-separated set sizes.
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    rmax: Option<u32>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct DiscretizeArgs {
    /// disk | tree:FILE
    #[arg(long)]
    space: Option<String>,
    #[arg(long)]
    radius: Option<u32>,
    #[arg(long)]
    theta: Option<f64>,
    /// Completion parameter, or `calibrate`.
    #[arg(long = "K")]
    k: Option<String>,
    #[arg(long)]
    oversample: Option<u32>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    allow_small_theta: Option<bool>,
    #[arg(long)]
    valence_factor: Option<f64>,
    /// Pairs for the rough-isometry report.
    #[arg(long)]
    pairs: Option<usize>,
    /// Probes for the overlap number.
    #[arg(long)]
    probes: Option<usize>,
    /// Also check the completion distortion on all interior pairs.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    check_completion: Option<bool>,
    /// Output graph file.
    #[arg(long)]
    out: Option<String>,
    /// Report CSV.
    #[arg(long)]
    report: Option<String>,
    /// Embedded point cloud CSV.
    #[arg(long)]
    points: Option<String>,
}

#[derive(Args, Debug)]
struct AcceptArgs {
    /// Comma-separated criterion numbers to run.
    #[arg(long)]
    only: Option<String>,
}

macro_rules! flags {
    ($map:ident, $args:expr, $($key:literal => $field:ident),* $(,)?) => {
        $( if let Some(v) = &$args.$field { $map.insert($key.to_string(), v.to_string()); } )*
    };
}

fn collect_flags(cli: &Cli) -> (&'static str, BTreeMap<String, String>) {
    let mut m = BTreeMap::new();
    flags!(m, cli, "seed" => seed, "out_dir" => out_dir, "margin" => margin);
    let name = match &cli.command {
        Command::Generate(a) => {
            flags!(m, a, "family" => family, "depth" => depth, "a" => a, "b" => b, "q" => q, "density" => density, "out" => out);
            "generate"
        }
        Command::Validate(a) => {
            flags!(m, a, "in" => input, "quasi" => quasi, "out" => out);
            "validate"
        }
        Command::Delta(a) => {
            flags!(m, a, "in" => input, "delta_mode" => mode, "samples" => samples, "out" => out);
            "delta"
        }
        Command::Geodesic(a) => {
            flags!(m, a, "in" => input, "pairs" => pairs, "delta" => delta, "delta_exact" => delta_exact,
                "samples" => samples, "out" => out);
            "geodesic"
        }
        Command::Maximal(a) => {
            flags!(m, a, "in" => input, "function" => function, "rmax" => rmax, "mode" => mode, "out" => out);
            "maximal"
        }
        Command::Weaktype(a) => {
            flags!(m, a, "in" => input, "tau" => tau, "family" => family, "function" => function, "rmax" => rmax,
                "mode" => mode, "out" => out);
            "weaktype"
        }
        Command::Paircount(a) => {
            flags!(m, a, "in" => input, "a" => a, "b" => b, "sizes" => sizes, "trials" => trials, "rmax" => rmax,
                "out" => out);
            "paircount"
        }
        Command::Discretize(a) => {
            flags!(m, a, "space" => space, "radius" => radius, "theta" => theta, "k" => k, "oversample" => oversample,
                "allow_small_theta" => allow_small_theta, "valence_factor" => valence_factor, "pairs" => pairs,
                "probes" => probes, "check_completion" => check_completion, "out" => out, "report" => report,
                "points" => points);
            "discretize"
        }
        Command::Accept(a) => {
            flags!(m, a, "only" => only);
            "accept"
        }
    };
    (name, m)
}

fn run(cli: &Cli) -> Result<ExperimentReport, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))?;
    }
    let file = match &cli.config {
        Some(path) => read_config(path)?,
        None => BTreeMap::new(),
    };
    let (name, flags) = collect_flags(cli);
    let params = Params::new(file, flags);
    let report = match name {
        "generate" => commands::generate(&params),
        "validate" => commands::validate(&params),
        "delta" => commands::delta(&params),
        "geodesic" => commands::geodesic(&params),
        "maximal" => commands::maximal(&params),
        "weaktype" => commands::weaktype(&params),
        "paircount" => commands::paircount(&params),
        "discretize" => commands::discretize_cmd(&params),
        "accept" => acceptance::run_command(&params),
        _ => unreachable!(),
    }?;
    let dir = commands::out_dir(&params)?;
    for key in params.unused() {
        eprintln!("warning: parameter `{key}` is not used by `{name}`");
    }
    report.write(&dir, &params.resolved())?;
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(report) => {
            report.print();
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                eprintln!("failed assertions: {}", report.failed_assertions().join(", "));
                ExitCode::from(EXIT_ASSERTION as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
