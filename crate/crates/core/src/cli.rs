//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 configuration or usage error,
//! 3 numerical failure, 4 divergent limit integral (`α >= 2`).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coin::{make_coin, named_coin, parse_state};
use crate::complex::parse_complex;
use crate::convergence::{
    conditional_gap_series, convergence_report, default_schedule, distribution, renyi_gap_series,
    tsallis_scaled_series, Method, DEFAULT_THRESHOLD,
};
use crate::entropy::{conditional_from_values, renyi, tsallis, Order, Variant};
use crate::error::Error;
use crate::limitdist::{
    conditional_renyi_limit, integral_falpha, make_limit_density, renyi_limit, tsallis_limit_const,
};
use crate::sample::{random_coin, random_state};
use crate::{Coin, Distribution, EnsemblePrior, LimitDensity, QubitState};

/// Environment variable that relocates relative output paths.
pub const OUT_DIR_ENV: &str = "DTQW_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "dtqw",
    version,
    about = "Quantum walk distributions, entropies and their limits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the position distribution for each requested time.
    Simulate(CommonArgs),
    /// Tsallis/Rényi entropies (and conditional variants with an ensemble).
    Entropy(CommonArgs),
    /// Limit integrals and limiting entropy constants.
    Limit(CommonArgs),
    /// Finite-time statistics against their limits, with verdicts.
    Converge(CommonArgs),
}

#[derive(Debug, Clone, Default, Args)]
struct CommonArgs {
    /// JSON config file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Named coin: hadamard, identity, rotation(θ), or random (uses --seed).
    #[arg(long)]
    coin: Option<String>,
    /// Coin entry `a` as a complex literal (with --b and --delta).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Determinant of the coin (default 1).
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    /// Initial state `alpha,beta`, or L, R, symmetric, random.
    #[arg(long, allow_hyphen_values = true)]
    state: Option<String>,
    /// JSON file with a prior over initial states.
    #[arg(long)]
    ensemble: Option<PathBuf>,
    /// Entropy order (repeatable); `shannon` and `min` for entropy only.
    #[arg(long = "alpha")]
    alphas: Vec<String>,
    /// Time step count (repeatable).
    #[arg(long = "n")]
    times: Vec<usize>,
    /// Comma-separated times.
    #[arg(long, value_delimiter = ',')]
    schedule: Option<Vec<usize>>,
    /// evolve or closedform.
    #[arg(long)]
    method: Option<String>,
    /// Conditional variant (repeatable or comma-separated): C, JA, RW, A, H.
    #[arg(long = "variant", value_delimiter = ',')]
    variants: Vec<String>,
    /// Output path, or `-` for stdout.
    #[arg(long)]
    out: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for `random` coins and states.
    #[arg(long)]
    seed: Option<u64>,
    /// Gap threshold for converge verdicts.
    #[arg(long)]
    threshold: Option<f64>,
}

/// Coin given in a config file.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
enum CoinSpec {
    Named(String),
    Parameters {
        a: String,
        b: String,
        #[serde(default)]
        delta: Option<String>,
    },
}

/// Ensemble given in a config file: a path or the entries inline.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
enum EnsembleSpec {
    Path(PathBuf),
    Inline(serde_json::Value),
}

/// On-disk config; every field optional.
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    coin: Option<CoinSpec>,
    state: Option<String>,
    ensemble: Option<EnsembleSpec>,
    alpha: Option<Vec<serde_json::Value>>,
    n: Option<Vec<usize>>,
    schedule: Option<Vec<usize>>,
    method: Option<String>,
    variant: Option<Vec<String>>,
    out: Option<String>,
    format: Option<String>,
    jobs: Option<usize>,
    seed: Option<u64>,
    threshold: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

/// Fully resolved experiment settings.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    coin: Coin,
    state: Option<QubitState>,
    ensemble: Option<EnsemblePrior>,
    orders: Vec<Order<f64>>,
    schedule: Option<Vec<usize>>,
    method: Option<Method>,
    variants: Vec<Variant>,
    out: Option<PathBuf>,
    format: Format,
    threshold: f64,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn config(e: impl std::fmt::Display) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DivergentIntegral(_) => 4,
            Error::NonConvergedQuadrature { .. } | Error::DivergentScale(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Entry point used by the binary; returns the process exit code.
pub fn main() -> i32 {
    run_cli(std::env::args_os())
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run_cli<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> CliResult<()> {
    let (args, kind) = match command {
        Command::Simulate(a) => (a, "simulate"),
        Command::Entropy(a) => (a, "entropy"),
        Command::Limit(a) => (a, "limit"),
        Command::Converge(a) => (a, "converge"),
    };
    let (config, jobs) = resolve(args)?;
    if let Some(jobs) = jobs {
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    match kind {
        "simulate" => cmd_simulate(&config),
        "entropy" => cmd_entropy(&config),
        "limit" => cmd_limit(&config),
        _ => cmd_converge(&config),
    }
}

fn load_file_config(path: &Path) -> CliResult<FileConfig> {
    let text = fs::read_to_string(path).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))
}

fn resolve_coin(args: &CommonArgs, file: &FileConfig, rng: &mut ChaCha8Rng) -> CliResult<Coin> {
    let from_parts = |a: &str, b: &str, delta: Option<&str>| -> CliResult<Coin> {
        let delta = parse_complex(delta.unwrap_or("1"))?;
        Ok(make_coin(parse_complex(a)?, parse_complex(b)?, delta)?)
    };
    let from_name = |name: &str, rng: &mut ChaCha8Rng| -> CliResult<Coin> {
        if name.trim().eq_ignore_ascii_case("random") {
            Ok(random_coin(rng))
        } else {
            Ok(named_coin(name)?)
        }
    };
    if args.a.is_some() || args.b.is_some() {
        let (Some(a), Some(b)) = (&args.a, &args.b) else {
            return Err(Failure::config("--a and --b must be given together"));
        };
        return from_parts(a, b, args.delta.as_deref());
    }
    if let Some(name) = &args.coin {
        return from_name(name, rng);
    }
    match &file.coin {
        Some(CoinSpec::Named(name)) => from_name(name, rng),
        Some(CoinSpec::Parameters { a, b, delta }) => from_parts(a, b, delta.as_deref()),
        None => Ok(named_coin("hadamard")?),
    }
}

fn resolve_state(text: &str, rng: &mut ChaCha8Rng) -> CliResult<QubitState> {
    Ok(match text.trim().to_ascii_lowercase().as_str() {
        "l" | "left" => QubitState::left(),
        "r" | "right" => QubitState::right(),
        "symmetric" | "sym" => QubitState::symmetric(),
        "random" => random_state(rng),
        _ => parse_state(text)?,
    })
}

fn resolve_ensemble(args: &CommonArgs, file: &FileConfig) -> CliResult<Option<EnsemblePrior>> {
    let read = |p: &Path| -> CliResult<EnsemblePrior> {
        let text = fs::read_to_string(p).map_err(|e| Failure::config(format!("{}: {e}", p.display())))?;
        Ok(EnsemblePrior::from_json(&text)?)
    };
    if let Some(p) = &args.ensemble {
        return read(p).map(Some);
    }
    match &file.ensemble {
        Some(EnsembleSpec::Path(p)) => read(p).map(Some),
        Some(EnsembleSpec::Inline(v)) => Ok(Some(EnsemblePrior::from_json(&v.to_string())?)),
        None => Ok(None),
    }
}

fn resolve(args: CommonArgs) -> CliResult<(ExperimentConfig, Option<usize>)> {
    let file = match &args.config {
        Some(p) => load_file_config(p)?,
        None => FileConfig::default(),
    };
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coin = resolve_coin(&args, &file, &mut rng)?;
    let state = match args.state.as_ref().or(file.state.as_ref()) {
        Some(s) => Some(resolve_state(s, &mut rng)?),
        None => None,
    };
    let ensemble = resolve_ensemble(&args, &file)?;

    let order_texts: Vec<String> = if !args.alphas.is_empty() {
        args.alphas.clone()
    } else if let Some(list) = &file.alpha {
        list.iter()
            .map(|v| match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect()
    } else {
        vec!["0.5".to_string()]
    };
    let orders = order_texts
        .iter()
        .map(|s| s.parse::<Order<f64>>())
        .collect::<Result<Vec<_>, _>>()?;

    let schedule = if !args.times.is_empty() || args.schedule.is_some() {
        let mut s = args.times.clone();
        s.extend(args.schedule.clone().unwrap_or_default());
        Some(s)
    } else {
        match (&file.n, &file.schedule) {
            (None, None) => None,
            (n, sched) => {
                let mut s = n.clone().unwrap_or_default();
                s.extend(sched.clone().unwrap_or_default());
                Some(s)
            }
        }
    };

    let method = match args.method.as_ref().or(file.method.as_ref()) {
        Some(m) => Some(m.parse()?),
        None => None,
    };
    let variant_texts = if !args.variants.is_empty() {
        args.variants.clone()
    } else {
        file.variant.clone().unwrap_or_default()
    };
    let variants = if variant_texts.is_empty() {
        Variant::ALL.to_vec()
    } else {
        variant_texts.iter().map(|v| v.parse()).collect::<Result<Vec<_>, _>>()?
    };
    let format = match args
        .format
        .as_ref()
        .or(file.format.as_ref())
        .map(|s| s.to_ascii_lowercase())
    {
        None => Format::Csv,
        Some(f) if f == "csv" => Format::Csv,
        Some(f) if f == "json" => Format::Json,
        Some(f) => return Err(Failure::config(format!("unknown format `{f}` (csv or json)"))),
    };
    let out = match args.out.as_ref().or(file.out.as_ref()) {
        None => None,
        Some(s) if s == "-" => None,
        Some(s) => {
            let p = PathBuf::from(s);
            match std::env::var_os(OUT_DIR_ENV) {
                Some(dir) if p.is_relative() => Some(PathBuf::from(dir).join(p)),
                _ => Some(p),
            }
        }
    };
    let threshold = args.threshold.or(file.threshold).unwrap_or(DEFAULT_THRESHOLD);
    Ok((
        ExperimentConfig {
            coin,
            state,
            ensemble,
            orders,
            schedule,
            method,
            variants,
            out,
            format,
            threshold,
        },
        args.jobs.or(file.jobs),
    ))
}

fn write_output(path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .map_err(|e| Failure::io(Path::new("<stdout>"), e))
        }
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
            }
            fs::write(p, contents).map_err(|e| Failure::io(p, e))
        }
    }
}

/// `dir/stem_n{n}.ext`
fn per_time_path(path: &Path, n: usize) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_n{n}.{}", ext.to_string_lossy()),
        None => format!("{stem}_n{n}"),
    };
    path.with_file_name(name)
}

fn require_schedule(config: &ExperimentConfig) -> CliResult<Vec<usize>> {
    match &config.schedule {
        Some(s) if !s.is_empty() => Ok(s.clone()),
        Some(_) => Err(Failure::config("empty schedule")),
        None => Err(Failure::config("no times given (use --n or --schedule)")),
    }
}

fn require_state(config: &ExperimentConfig) -> CliResult<QubitState> {
    config
        .state
        .ok_or_else(|| Failure::config("this command needs --state"))
}

fn cmd_simulate(config: &ExperimentConfig) -> CliResult<()> {
    let schedule = require_schedule(config)?;
    let state = require_state(config)?;
    let method = config.method.unwrap_or(Method::Evolve);
    if method == Method::ClosedForm && !config.coin.is_nondegenerate() {
        return Err(Error::CoinDegenerate.into());
    }
    let dists = schedule
        .par_iter()
        .map(|&n| distribution(&config.coin, &state, n, method))
        .collect::<Result<Vec<Distribution>, Error>>()?;
    let render = |d: &Distribution| match config.format {
        Format::Csv => d.to_csv(),
        Format::Json => d.to_json() + "\n",
    };
    match &config.out {
        None => {
            let all: String = dists.iter().map(render).collect();
            write_output(None, &all)
        }
        Some(path) if dists.len() == 1 => write_output(Some(path), &render(&dists[0])),
        Some(path) => {
            for d in &dists {
                write_output(Some(&per_time_path(path, d.time())), &render(d))?;
            }
            Ok(())
        }
    }
}

/// Marginal of the walk position under the prior.
fn mixture(dists: &[Distribution], weights: &[f64]) -> CliResult<Distribution> {
    let first = &dists[0];
    let mut probs = vec![0.0; first.len()];
    for (d, w) in dists.iter().zip(weights) {
        for (p, q) in probs.iter_mut().zip(d.probs()) {
            *p += w * q;
        }
    }
    Ok(Distribution::new(first.time(), first.support().to_vec(), probs)?)
}

#[derive(Debug, Serialize)]
struct EntropyRow {
    n: usize,
    alpha: String,
    tsallis: Option<f64>,
    renyi: f64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    conditional: BTreeMap<String, Option<f64>>,
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

fn cmd_entropy(config: &ExperimentConfig) -> CliResult<()> {
    let schedule = require_schedule(config)?;
    if config.state.is_none() && config.ensemble.is_none() {
        return Err(Failure::config("entropy needs --state or --ensemble"));
    }
    let method = config.method.unwrap_or(Method::Evolve);
    let per_time = schedule
        .par_iter()
        .map(|&n| -> Result<(Distribution, Vec<Distribution>), Error> {
            let ens: Vec<Distribution> = match &config.ensemble {
                Some(prior) => prior
                    .entries()
                    .iter()
                    .map(|(s, _)| distribution(&config.coin, s, n, method))
                    .collect::<Result<_, _>>()?,
                None => Vec::new(),
            };
            let main = match &config.state {
                Some(s) => distribution(&config.coin, s, n, method)?,
                None => ens[0].clone(),
            };
            Ok((main, ens))
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let mut rows = Vec::new();
    for (n, (main, ens)) in schedule.iter().zip(per_time) {
        let main = match (&config.state, &config.ensemble) {
            (None, Some(prior)) => mixture(&ens, &prior.weights())?,
            _ => main,
        };
        for order in &config.orders {
            let mut conditional = BTreeMap::new();
            if let (Some(prior), Order::Finite(alpha)) = (&config.ensemble, order) {
                let values: Vec<f64> = ens.iter().map(|d| renyi(d, *order)).collect();
                for v in &config.variants {
                    let value = match conditional_from_values(*v, &prior.weights(), &values, *alpha) {
                        Ok(x) => Some(x),
                        Err(Error::VariantDomain { .. }) => None,
                        Err(e) => return Err(e.into()),
                    };
                    conditional.insert(v.name().to_string(), value);
                }
            }
            rows.push(EntropyRow {
                n: *n,
                alpha: order.to_string(),
                tsallis: order.value().map(|a| tsallis(&main, a)).transpose()?,
                renyi: renyi(&main, *order),
                conditional,
            });
        }
    }
    let text = match config.format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
        Format::Csv => {
            let mut out = String::from("n,alpha,tsallis,renyi");
            if config.ensemble.is_some() {
                for v in &config.variants {
                    out.push(',');
                    out.push_str(v.name());
                }
            }
            out.push('\n');
            for r in &rows {
                out.push_str(&format!("{},{},{},{:.16e}", r.n, r.alpha, fmt_opt(r.tsallis), r.renyi));
                if config.ensemble.is_some() {
                    for v in &config.variants {
                        out.push(',');
                        out.push_str(&fmt_opt(r.conditional.get(v.name()).copied().flatten()));
                    }
                }
                out.push('\n');
            }
            out
        }
    };
    write_output(config.out.as_deref(), &text)
}

#[derive(Debug, Serialize)]
struct LimitRow {
    alpha: f64,
    integral: Option<f64>,
    integral_error: Option<f64>,
    renyi_limit: Option<f64>,
    tsallis_limit: Option<f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    conditional: BTreeMap<String, Option<f64>>,
}

/// Limit density of the position under the prior: the drift averages.
fn mixture_density(coin: &Coin, prior: &EnsemblePrior) -> Result<LimitDensity, Error> {
    let mut ld = make_limit_density(coin, &prior.entries()[0].0)?;
    ld.drift = 0.0;
    for (s, w) in prior.entries() {
        ld.drift += w * make_limit_density(coin, s)?.drift;
    }
    Ok(ld)
}

fn finite_orders(config: &ExperimentConfig) -> CliResult<Vec<f64>> {
    config
        .orders
        .iter()
        .map(|o| {
            o.value()
                .ok_or_else(|| Failure::config(format!("order `{o}` is not a finite order")))
        })
        .collect()
}

fn cmd_limit(config: &ExperimentConfig) -> CliResult<()> {
    let alphas = finite_orders(config)?;
    let density = match (&config.state, &config.ensemble) {
        (Some(s), _) => make_limit_density(&config.coin, s)?,
        (None, Some(prior)) => mixture_density(&config.coin, prior)?,
        (None, None) => return Err(Failure::config("limit needs --state or --ensemble")),
    };
    let mut rows = Vec::new();
    for &alpha in &alphas {
        let q = integral_falpha(&density, alpha)?;
        let mut conditional = BTreeMap::new();
        if let Some(prior) = &config.ensemble {
            for v in &config.variants {
                let value = match conditional_renyi_limit(*v, &config.coin, prior, alpha) {
                    Ok(x) => Some(x),
                    Err(Error::VariantDomain { .. }) => None,
                    Err(e) => return Err(e.into()),
                };
                conditional.insert(v.name().to_string(), value);
            }
        }
        rows.push(LimitRow {
            alpha,
            integral: Some(q.value),
            integral_error: Some(q.error_estimate),
            renyi_limit: Some(renyi_limit(&density, alpha)?),
            tsallis_limit: Some(tsallis_limit_const(&density, alpha)?),
            conditional,
        });
    }
    let text = match config.format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
        Format::Csv => {
            let mut out = String::from("alpha,integral,integral_error,renyi_limit,tsallis_limit");
            if config.ensemble.is_some() {
                for v in &config.variants {
                    out.push(',');
                    out.push_str(v.name());
                }
            }
            out.push('\n');
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{}",
                    r.alpha,
                    fmt_opt(r.integral),
                    fmt_opt(r.integral_error),
                    fmt_opt(r.renyi_limit),
                    fmt_opt(r.tsallis_limit)
                ));
                if config.ensemble.is_some() {
                    for v in &config.variants {
                        out.push(',');
                        out.push_str(&fmt_opt(r.conditional.get(v.name()).copied().flatten()));
                    }
                }
                out.push('\n');
            }
            out
        }
    };
    write_output(config.out.as_deref(), &text)
}

fn cmd_converge(config: &ExperimentConfig) -> CliResult<()> {
    let schedule = match &config.schedule {
        None => default_schedule(),
        Some(_) => require_schedule(config)?,
    };
    let alphas = finite_orders(config)?;
    if config.state.is_none() && config.ensemble.is_none() {
        return Err(Failure::config("converge needs --state or --ensemble"));
    }
    let method = config.method.unwrap_or_default();
    let mut series = Vec::new();
    for &alpha in &alphas {
        if let Some(state) = &config.state {
            series.push(renyi_gap_series(&config.coin, state, alpha, &schedule, method)?);
            series.push(tsallis_scaled_series(&config.coin, state, alpha, &schedule, method)?);
        }
        if let Some(prior) = &config.ensemble {
            for v in &config.variants {
                if *v == Variant::A && alpha == 0.0 {
                    continue;
                }
                series.push(conditional_gap_series(
                    *v,
                    &config.coin,
                    prior,
                    alpha,
                    &schedule,
                    method,
                )?);
            }
        }
    }
    let report = convergence_report(series, config.threshold)?;
    eprint!("{}", report.to_table());
    match config.format {
        Format::Json => write_output(config.out.as_deref(), &(report.to_json() + "\n")),
        Format::Csv => {
            write_output(config.out.as_deref(), &report.to_csv())?;
            if let Some(path) = &config.out {
                write_output(Some(&path.with_extension("summary.json")), &(report.to_json() + "\n"))?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn per_time_paths() {
        assert_eq!(
            per_time_path(Path::new("out/d.csv"), 12),
            PathBuf::from("out/d_n12.csv")
        );
        assert_eq!(per_time_path(Path::new("d"), 3), PathBuf::from("d_n3"));
    }

    #[test]
    fn file_config_parses_both_coin_forms() {
        let f: FileConfig = serde_json::from_str(r#"{"coin": "hadamard", "alpha": [0.5, "min"], "n": [4]}"#).unwrap();
        assert!(matches!(f.coin, Some(CoinSpec::Named(_))));
        let f: FileConfig = serde_json::from_str(r#"{"coin": {"a": "0.8", "b": "0.6j", "delta": "1j"}}"#).unwrap();
        assert!(matches!(f.coin, Some(CoinSpec::Parameters { .. })));
        assert!(serde_json::from_str::<FileConfig>(r#"{"colour": 1}"#).is_err());
    }

    #[test]
    fn mixture_density_averages_drift() {
        let coin = named_coin("hadamard").unwrap();
        let prior = EnsemblePrior::uniform(vec![QubitState::left(), QubitState::right()]).unwrap();
        let ld = mixture_density(&coin, &prior).unwrap();
        assert!(ld.drift.abs() < 1e-15);
    }

    #[test]
    fn failure_codes() {
        assert_eq!(Failure::from(Error::DivergentIntegral(2.0)).code, 4);
        assert_eq!(Failure::from(Error::DivergentScale("x".into())).code, 3);
        assert_eq!(Failure::from(Error::BadOrder(1.0)).code, 2);
    }
}
