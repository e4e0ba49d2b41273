//! Command-line surface over the rate-function library: scalar results
//! come out as JSON on stdout, curves and grids as CSV, diagnostics on
//! stderr.  Exit code 0 on success, 1 on computation errors (with the
//! error name printed), 2 on flag errors.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degreeld::combinatorics::{enumerate_frequencies_capped, exact_log_partition_capped};
use degreeld::measures::SparseMeasure;
use degreeld::penalty::{objective_h, phase_scan, PenaltyModel};
use degreeld::sampler::{estimate_log_partition, mcmc_run_detailed, ChainConfig, TraceRow};
use degreeld::statistic::{DegreeStatistic, Growth};
use degreeld::tilted::{solve_j, tilted_measure, SolveOptions};

#[derive(Parser)]
#[command(
    name = "degreeld",
    version,
    about = "Rate functions, variational solutions, and samplers for degree-based random graph models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rate of an empirical degree distribution read from CSV.
    Rate(RateArgs),
    /// Solve the one-dimensional variational problem for a statistic.
    SolveJ(SolveJArgs),
    /// Objective curve H(theta) of the isolated-vertex penalty model.
    PenaltyCurve(PenaltyCurveArgs),
    /// Phase diagram scan of the penalty model over a parameter grid.
    PenaltyPhase(PenaltyPhaseArgs),
    /// Test whether a degree sequence is realizable by a simple graph.
    Graphical(GraphicalArgs),
    /// Exhaustively enumerate degree frequencies of small graphs.
    Enumerate(EnumerateArgs),
    /// Log-partition value, exactly (small n) or by importance sampling.
    Partition(PartitionArgs),
    /// Run the edge-flip Metropolis chain and summarize its samples.
    Simulate(SimulateArgs),
    /// Run the acceptance checklist; nonzero exit if anything fails.
    Verify(VerifyArgs),
}

/// Flags may also be given in an optional `key=value` config file
/// (one per line, `#` comments); explicit flags win.
#[derive(Args, Clone, Default)]
struct ConfigArg {
    /// Config file with key=value lines supplying flag defaults.
    #[arg(long, global = false)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Is,
}

#[derive(Args)]
struct RateArgs {
    /// CSV file with header `i,weight` holding the measure.
    #[arg(long)]
    measure: Option<PathBuf>,
    /// Mean-degree parameter of the reference model.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args, Clone, Default)]
struct StatisticArgs {
    /// Statistic family: zero, linear, kstar, gwd, alt-kstar, penalty, custom.
    #[arg(long)]
    statistic: Option<String>,
    /// Tilt strength gamma (kstar, gwd, alt-kstar, penalty).
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Star size k for kstar [default: 2].
    #[arg(long)]
    k: Option<u32>,
    /// Decay rate lambda1 for gwd.
    #[arg(long, allow_negative_numbers = true)]
    lambda1: Option<f64>,
    /// Geometric weight lambda2 in (0,1) for alt-kstar.
    #[arg(long, allow_negative_numbers = true)]
    lambda2: Option<f64>,
    /// Slope of the linear statistic.
    #[arg(long, allow_negative_numbers = true)]
    slope: Option<f64>,
    /// Comma-separated f(0),f(1),... for custom (f(0) must be 0).
    #[arg(long)]
    table: Option<String>,
}

#[derive(Args)]
struct SolveJArgs {
    #[command(flatten)]
    statistic: StatisticArgs,
    /// Mean-degree parameter of the reference model.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Scan resolution per confinement pass [default: 4096].
    #[arg(long)]
    grid_points: Option<usize>,
    /// Initial scan ceiling [default: 4*beta + 8].
    #[arg(long, allow_negative_numbers = true)]
    theta_max: Option<f64>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct PenaltyCurveArgs {
    /// Mean-degree parameter of the reference model.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Penalty weight as e^gamma.
    #[arg(long, allow_negative_numbers = true)]
    e_gamma: Option<f64>,
    /// Right end of the theta range [default: 4*beta + 8].
    #[arg(long, allow_negative_numbers = true)]
    theta_max: Option<f64>,
    /// Number of rows [default: 2048].
    #[arg(long)]
    points: Option<usize>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct PenaltyPhaseArgs {
    /// Smallest beta of the grid.
    #[arg(long, allow_negative_numbers = true)]
    beta_min: Option<f64>,
    /// Largest beta of the grid.
    #[arg(long, allow_negative_numbers = true)]
    beta_max: Option<f64>,
    /// Smallest e^gamma of the grid.
    #[arg(long, allow_negative_numbers = true)]
    e_gamma_min: Option<f64>,
    /// Largest e^gamma of the grid.
    #[arg(long, allow_negative_numbers = true)]
    e_gamma_max: Option<f64>,
    /// Grid cells per beta axis [default: 20].
    #[arg(long)]
    beta_steps: Option<usize>,
    /// Grid cells per e^gamma axis [default: 20].
    #[arg(long)]
    e_gamma_steps: Option<usize>,
    /// Objective gap below which two wells count as tied [default: 1e-6].
    #[arg(long, allow_negative_numbers = true)]
    tie_tol: Option<f64>,
    /// Output format [default: csv].
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct GraphicalArgs {
    /// Comma-separated degree sequence, any order.
    #[arg(long)]
    sequence: Option<String>,
    /// Output format [default: text].
    #[arg(long, value_enum)]
    format: Option<TextFormat>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Number of vertices.
    #[arg(long)]
    n: Option<usize>,
    /// Mean-degree parameter of the reference model.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Enumeration cap on n [default: 7, hard limit 8].
    #[arg(long)]
    cap: Option<usize>,
    /// Output format [default: csv].
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct PartitionArgs {
    #[command(flatten)]
    statistic: StatisticArgs,
    /// Number of vertices.
    #[arg(long)]
    n: Option<usize>,
    /// Mean-degree parameter of the reference model.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// exact sums over all graphs (small n); is importance-samples.
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Importance-sampling draws [default: 1000000].
    #[arg(long)]
    samples: Option<usize>,
    /// RNG seed [default: env DEGREELD_SEED or 0].
    #[arg(long)]
    seed: Option<u64>,
    /// Enumeration cap on n for the exact method [default: 7].
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    statistic: StatisticArgs,
    /// Number of vertices.
    #[arg(long)]
    n: Option<usize>,
    /// Mean-degree parameter of the reference model.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Sampling sweeps after burn-in [default: 1000].
    #[arg(long)]
    sweeps: Option<usize>,
    /// Burn-in sweeps [default: 1000].
    #[arg(long)]
    burn_in: Option<usize>,
    /// Sweeps between retained samples [default: 10].
    #[arg(long)]
    thin: Option<usize>,
    /// RNG seed [default: env DEGREELD_SEED or 0].
    #[arg(long)]
    seed: Option<u64>,
    /// Independent chains merged into the summary [default: 1].
    #[arg(long)]
    chains: Option<usize>,
    /// Write a CSV trace of the first chain to this path.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Trim Monte Carlo budgets where the check self-normalizes.
    #[arg(long)]
    quick: bool,
}

/// Computation error carrying the library's error name, or a flag
/// error that should exit 2.
enum CliError {
    Computation(String),
    Flag(String),
}

impl From<degreeld::Error> for CliError {
    fn from(e: degreeld::Error) -> Self {
        CliError::Computation(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn flag_err(msg: impl Into<String>) -> CliError {
    CliError::Flag(msg.into())
}

/// key=value lines; `#` starts a comment; keys use the long flag
/// spelling with `-` or `_` accepted interchangeably.
struct FileConfig {
    map: HashMap<String, String>,
}

impl FileConfig {
    fn load(path: Option<&PathBuf>) -> CliResult<Self> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| flag_err(format!("cannot read config {}: {e}", path.display())))?;
            for line in text.lines() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| flag_err(format!("config line without '=': {line}")))?;
                map.insert(key.trim().replace('-', "_"), value.trim().to_string());
            }
        }
        Ok(Self { map })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.map.get(&key.replace('-', "_")) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| flag_err(format!("config value for {key} does not parse: {raw}"))),
        }
    }
}

/// Explicit flag, else config value, else default.
fn resolve<T: std::str::FromStr>(
    cli: Option<T>,
    cfg: &FileConfig,
    key: &str,
    default: T,
) -> CliResult<T> {
    Ok(cli.or(cfg.get(key)?).unwrap_or(default))
}

fn resolve_required<T: std::str::FromStr>(
    cli: Option<T>,
    cfg: &FileConfig,
    key: &str,
) -> CliResult<T> {
    cli.or(cfg.get(key)?)
        .ok_or_else(|| flag_err(format!("missing required flag --{key}")))
}

fn resolve_seed(cli: Option<u64>, cfg: &FileConfig) -> CliResult<u64> {
    if let Some(s) = cli.or(cfg.get("seed")?) {
        return Ok(s);
    }
    match std::env::var("DEGREELD_SEED") {
        Ok(raw) => raw
            .parse::<u64>()
            .map_err(|_| flag_err(format!("DEGREELD_SEED does not parse as u64: {raw}"))),
        Err(_) => Ok(0),
    }
}

impl StatisticArgs {
    fn build(&self, cfg: &FileConfig) -> CliResult<DegreeStatistic> {
        let name: String = resolve_required(self.statistic.clone(), cfg, "statistic")?;
        let gamma = |args: &Self| -> CliResult<f64> {
            resolve_required(args.gamma, cfg, "gamma")
        };
        let statistic = match name.replace('_', "-").as_str() {
            "zero" => DegreeStatistic::zero(),
            "linear" => {
                let slope: f64 = resolve_required(self.slope, cfg, "slope")?;
                DegreeStatistic::linear(slope)?
            }
            "kstar" => {
                let k: u32 = resolve(self.k, cfg, "k", 2)?;
                DegreeStatistic::kstar(k, gamma(self)?)?
            }
            "gwd" => {
                let lambda1: f64 = resolve_required(self.lambda1, cfg, "lambda1")?;
                DegreeStatistic::gwd(lambda1, gamma(self)?)?
            }
            "alt-kstar" => {
                let lambda2: f64 = resolve_required(self.lambda2, cfg, "lambda2")?;
                DegreeStatistic::alt_kstar(lambda2, gamma(self)?)?
            }
            "penalty" => DegreeStatistic::penalty(gamma(self)?)?,
            "custom" => {
                let raw: String = resolve_required(self.table.clone(), cfg, "table")?;
                let values = raw
                    .split(',')
                    .map(|t| t.trim().parse::<f64>())
                    .collect::<Result<Vec<f64>, _>>()
                    .map_err(|_| flag_err(format!("table does not parse as floats: {raw}")))?;
                DegreeStatistic::custom(values)?
            }
            other => {
                return Err(flag_err(format!(
                    "unknown statistic {other}; expected zero, linear, kstar, gwd, alt-kstar, penalty, or custom"
                )))
            }
        };
        Ok(statistic)
    }
}

fn json_number(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::json!(x)
    } else {
        serde_json::Value::String(x.to_string())
    }
}

fn run_rate(args: RateArgs) -> CliResult<()> {
    let cfg = FileConfig::load(args.config.config.as_ref())?;
    let path: PathBuf = resolve_required(args.measure, &cfg, "measure")?;
    let beta: f64 = resolve_required(args.beta, &cfg, "beta")?;
    let text = std::fs::read_to_string(&path)
        .map_err(|e| flag_err(format!("cannot read measure {}: {e}", path.display())))?;
    let measure = SparseMeasure::from_csv(&text)?;
    let record = serde_json::json!({
        "beta": beta,
        "mean": measure.mean(),
        "rate_i": json_number(measure.rate_i(beta)),
    });
    println!("{record}");
    Ok(())
}

fn run_solve_j(args: SolveJArgs) -> CliResult<()> {
    let cfg = FileConfig::load(args.config.config.as_ref())?;
    let statistic = args.statistic.build(&cfg)?;
    let beta: f64 = resolve_required(args.beta, &cfg, "beta")?;
    let mut options = SolveOptions::default();
    options.grid_points = resolve(args.grid_points, &cfg, "grid-points", options.grid_points)?;
    if let Some(t) = args.theta_max.or(cfg.get("theta-max")?) {
        options.theta_max_init = Some(t);
    }
    let solution = solve_j(&statistic, beta, &options)?;
    let value = serde_json::to_value(&solution).expect("solution serializes");
    println!("{value}");
    Ok(())
}

fn run_penalty_curve(args: PenaltyCurveArgs) -> CliResult<()> {
    let cfg = FileConfig::load(args.config.config.as_ref())?;
    let beta: f64 = resolve_required(args.beta, &cfg, "beta")?;
    let e_gamma: f64 = resolve_required(args.e_gamma, &cfg, "e-gamma")?;
    let theta_max: f64 = resolve(args.theta_max, &cfg, "theta-max", 4.0 * beta + 8.0)?;
    let points: usize = resolve(args.points, &cfg, "points", 2048)?;
    if !(theta_max > 0.0) || points < 2 {
        return Err(flag_err("theta-max must be positive and points at least 2"));
    }
    let model = PenaltyModel::from_e_gamma(beta, e_gamma)?;
    let mut out = String::from("theta,H\n");
    for i in 0..points {
        let theta = theta_max * i as f64 / (points - 1) as f64;
        out.push_str(&format!("{theta:.16e},{:.16e}\n", objective_h(theta, &model)));
    }
    print!("{out}");
    Ok(())
}

fn run_penalty_phase(args: PenaltyPhaseArgs) -> CliResult<()> {
    let cfg = FileConfig::load(args.config.config.as_ref())?;
    let beta_min: f64 = resolve_required(args.beta_min, &cfg, "beta-min")?;
    let beta_max: f64 = resolve_required(args.beta_max, &cfg, "beta-max")?;
    let e_gamma_min: f64 = resolve_required(args.e_gamma_min, &cfg, "e-gamma-min")?;
    let e_gamma_max: f64 = resolve_required(args.e_gamma_max, &cfg, "e-gamma-max")?;
    let beta_steps: usize = resolve(args.beta_steps, &cfg, "beta-steps", 20)?;
    let e_gamma_steps: usize = resolve(args.e_gamma_steps, &cfg, "e-gamma-steps", 20)?;
    let tie_tol: f64 = resolve(args.tie_tol, &cfg, "tie-tol", 1e-6)?;
    let format = args.format.unwrap_or(Format::Csv);
    let cells = phase_scan(
        (beta_min, beta_max),
        (e_gamma_min, e_gamma_max),
        (beta_steps, e_gamma_steps),
        tie_tol,
    )?;
    match format {
        Format::Json => {
            let value = serde_json::to_value(&cells).expect("cells serialize");
            println!("{value}");
        }
        Format::Csv => {
            let mut out = String::from("beta,e_gamma,regime,root1,root2,root3\n");
            for cell in cells {
                let mut roots = [String::new(), String::new(), String::new()];
                for (slot, root) in roots.iter_mut().zip(&cell.classification.roots) {
                    *slot = format!("{root:.16e}");
                }
                out.push_str(&format!(
                    "{:.16e},{:.16e},{},{},{},{}\n",
                    cell.beta,
                    cell.e_gamma,
                    cell.classification.regime,
                    roots[0],
                    roots[1],
                    roots[2]
                ));
            }
            print!("{out}");
        }
    }
    Ok(())
}

fn run_graphical(args: GraphicalArgs) -> CliResult<()> {
    let cfg = FileConfig::load(args.config.config.as_ref())?;
    let raw: String = resolve_required(args.sequence, &cfg, "sequence")?;
    let degrees = raw
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<Vec<u64>, _>>()
        .map_err(|_| flag_err(format!("sequence does not parse as integers: {raw}")))?;
    let graphical = degreeld::combinatorics::DegreeSequence::new(degrees.clone())?.is_graphical();
    match args.format.unwrap_or(TextFormat::Text) {
        TextFormat::Text => {
            println!("{}", if graphical { "graphical" } else { "not graphical" })
        }
        TextFormat::Json => {
            println!("{}", serde_json::json!({ "sequence": degrees, "graphical": graphical }))
        }
    }
    Ok(())
}

fn run_enumerate(args: EnumerateArgs) -> CliResult<()> {
    let cfg = FileConfig::load(args.config.config.as_ref())?;
    let n: usize = resolve_required(args.n, &cfg, "n")?;
    let beta: f64 = resolve_required(args.beta, &cfg, "beta")?;
    let cap: usize = resolve(args.cap, &cfg, "cap", degreeld::combinatorics::ENUMERATION_CAP)?;
    let format = args.format.unwrap_or(Format::Csv);
    let classes = enumerate_frequencies_capped(n, beta, cap)?;
    match format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = classes
                .iter()
                .map(|(h, (count, prob))| {
                    serde_json::json!({
                        "h_vector": h.counts(),
                        "count": count,
                        "probability": prob,
                    })
                })
                .collect();
            println!("{}", serde_json::Value::Array(rows));
        }
        Format::Csv => {
            let mut out = String::from("h_vector,count,probability\n");
            for (h, (count, prob)) in classes {
                let joined = h
                    .counts()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                out.push_str(&format!("{joined},{count},{prob:.16e}\n"));
            }
            print!("{out}");
        }
    }
    Ok(())
}

fn run_partition(args: PartitionArgs) -> CliResult<()> {
    let cfg = FileConfig::load(args.config.config.as_ref())?;
    let statistic = args.statistic.build(&cfg)?;
    let n: usize = resolve_required(args.n, &cfg, "n")?;
    let beta: f64 = resolve_required(args.beta, &cfg, "beta")?;
    let method = args.method.ok_or_else(|| flag_err("missing required flag --method"))?;
    let record = match method {
        Method::Exact => {
            let cap: usize =
                resolve(args.cap, &cfg, "cap", degreeld::combinatorics::ENUMERATION_CAP)?;
            let value = exact_log_partition_capped(n, beta, &statistic, cap)?;
            serde_json::json!({
                "n": n,
                "beta": beta,
                "statistic": statistic.label(),
                "method": "exact",
                "log_partition": json_number(value),
            })
        }
        Method::Is => {
            let samples: usize = resolve(args.samples, &cfg, "samples", 1_000_000)?;
            let seed = resolve_seed(args.seed, &cfg)?;
            if statistic.growth() == Growth::Superlinear {
                eprintln!(
                    "warning: superlinear statistic; importance weights are heavy-tailed and the error estimate is optimistic"
                );
            }
            let (value, std_error) = estimate_log_partition(n, beta, &statistic, samples, seed)?;
            serde_json::json!({
                "n": n,
                "beta": beta,
                "statistic": statistic.label(),
                "method": "is",
                "samples": samples,
                "seed": seed,
                "log_partition": json_number(value),
                "std_error": json_number(std_error),
            })
        }
    };
    println!("{record}");
    Ok(())
}

fn write_trace(path: &PathBuf, rows: &[TraceRow]) -> CliResult<()> {
    let mut out = String::from("sweep,edges,mu_f,distance\n");
    for row in rows {
        let distance = row.distance.map(|d| format!("{d:.16e}")).unwrap_or_default();
        out.push_str(&format!("{},{},{:.16e},{distance}\n", row.sweep, row.edges, row.mu_f));
    }
    std::fs::write(path, out)
        .map_err(|e| flag_err(format!("cannot write trace {}: {e}", path.display())))
}

fn run_simulate(args: SimulateArgs) -> CliResult<()> {
    let cfg = FileConfig::load(args.config.config.as_ref())?;
    let statistic = args.statistic.build(&cfg)?;
    let n: usize = resolve_required(args.n, &cfg, "n")?;
    let beta: f64 = resolve_required(args.beta, &cfg, "beta")?;
    let sweeps: usize = resolve(args.sweeps, &cfg, "sweeps", 1000)?;
    let burn_in: usize = resolve(args.burn_in, &cfg, "burn-in", 1000)?;
    let thin: usize = resolve(args.thin, &cfg, "thin", 10)?;
    let seed = resolve_seed(args.seed, &cfg)?;
    let chains: usize = resolve(args.chains, &cfg, "chains", 1)?;
    if thin == 0 || sweeps < thin {
        return Err(flag_err("sweeps must be at least thin, and thin positive"));
    }

    let mut chain_cfg = ChainConfig::new(n, beta, statistic.clone(), seed)?;
    chain_cfg.burn_in = burn_in;
    chain_cfg.samples = sweeps / thin;
    chain_cfg.thin = thin;

    // Predicted limit measures make the distance columns meaningful;
    // a statistic without a solvable limit simply runs without them.
    let predictions: Vec<SparseMeasure> = match solve_j(&statistic, beta, &SolveOptions::default())
    {
        Ok(solution) if !solution.degenerate => solution
            .minimizers
            .iter()
            .map(|m| tilted_measure(m.theta, &statistic, 1e-12).map(|t| t.measure))
            .collect::<degreeld::Result<_>>()?,
        Ok(_) => Vec::new(),
        Err(degreeld::Error::DegenerateStatistic(msg)) => {
            eprintln!("warning: no limit prediction: {msg}");
            Vec::new()
        }
        Err(degreeld::Error::NoConfinement { theta_max }) => {
            eprintln!("warning: no limit prediction: objective unconfined up to theta = {theta_max:.3e}");
            Vec::new()
        }
        Err(e) => return Err(e.into()),
    };

    let (summary, trace) =
        mcmc_run_detailed(&chain_cfg, chains, &predictions, args.trace.is_some())?;
    if let Some(path) = &args.trace {
        write_trace(path, &trace)?;
    }
    // Distance thresholds are engineering choices; the numbers are for
    // trend reading, not hypothesis tests.
    let value = serde_json::to_value(&summary).expect("summary serializes");
    println!("{value}");
    Ok(())
}

fn run_verify(args: VerifyArgs) -> CliResult<()> {
    let results = degreeld::verify::run_all(args.quick);
    let mut all_passed = true;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:2}: {} ({})", r.id, r.name, r.detail);
        all_passed &= r.passed;
    }
    if all_passed {
        Ok(())
    } else {
        Err(CliError::Computation("Verification: acceptance criteria failed".into()))
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Rate(args) => run_rate(args),
        Command::SolveJ(args) => run_solve_j(args),
        Command::PenaltyCurve(args) => run_penalty_curve(args),
        Command::PenaltyPhase(args) => run_penalty_phase(args),
        Command::Graphical(args) => run_graphical(args),
        Command::Enumerate(args) => run_enumerate(args),
        Command::Partition(args) => run_partition(args),
        Command::Simulate(args) => run_simulate(args),
        Command::Verify(args) => run_verify(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Flag(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
