mod cache;
mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use normtrace::{Error, MonomialSpec, Preset, Strategy};
use serde_json::{json, Value};

use cache::{Cache, Lookup};
use commands::{CurveSel, GhwArgs, Method, Pair};
use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "normtrace", version, about = "Weight hierarchies of decreasing norm-trace codes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; overrides NORMTRACE_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Work budget for brute-force enumeration and literal subset scans.
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Do not read or write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, env = "NORMTRACE_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Report wall-clock time (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args, Debug, Clone)]
struct CurveArgs {
    /// Base field size q
    #[arg(long)]
    q: u32,
    /// Extension degree s
    #[arg(long)]
    s: u32,
    /// Exponent u, a divisor of (q^s - 1)/(q - 1)
    #[arg(long)]
    u: u32,
    /// Field modulus coefficients over GF(p), constant term first, e.g. 2,4,1.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

impl CurveArgs {
    fn sel(&self) -> CurveSel {
        CurveSel { q: self.q, s: self.s, u: self.u, modulus: self.modulus.clone() }
    }
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    /// Maximization strategy of the exhaustive engine.
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Disable pruning in the literal subset scan.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum StrategyArg {
    Auto,
    Subsets,
    Staircase,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Subsets => Strategy::Subsets,
            StrategyArg::Staircase => Strategy::Staircase,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe GF(q^s) and its modulus.
    Field {
        /// Base field size q
        #[arg(long)]
        q: u32,
        /// Extension degree s
        #[arg(long)]
        s: u32,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
    },
    /// Parameters of the curve x^u = Tr(y).
    Curve {
        #[command(flatten)]
        curve: CurveArgs,
        /// List the rational points as element codes.
        #[arg(long)]
        points: bool,
    },
    /// Parameters of ev(M) or of its dual.
    Code {
        #[command(flatten)]
        curve: CurveArgs,
        /// deg<=D | wdeg<=L | box | list:x2y1,y3,1
        #[arg(long)]
        monomials: MonomialSpec,
        /// Describe the dual code instead
        #[arg(long)]
        dual: bool,
        /// Include the generator matrix.
        #[arg(long)]
        emit_generators: bool,
    },
    /// Generalized Hamming weights of ev(M).
    Ghw {
        #[command(flatten)]
        curve: CurveArgs,
        /// deg<=D | wdeg<=L | box | list:x2y1,y3,1
        #[arg(long)]
        monomials: MonomialSpec,
        /// Index r of d_r
        #[arg(long, conflicts_with = "hierarchy", required_unless_present = "hierarchy")]
        r: Option<usize>,
        /// Compute d_1, ..., d_k.
        #[arg(long)]
        hierarchy: bool,
        #[arg(long, value_enum, default_value_t = Method::Exhaustive)]
        method: Method,
        /// Accept a non-decreasing M and report a lower bound.
        #[arg(long)]
        bound_only: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Relative generalized Hamming weight of a nested pair.
    Rghw {
        #[command(flatten)]
        curve: CurveArgs,
        /// Larger monomial set
        #[arg(long, requires = "m2", conflicts_with_all = ["lambda1", "lambda2"])]
        m1: Option<MonomialSpec>,
        /// Smaller monomial set, contained in --m1
        #[arg(long, requires = "m1")]
        m2: Option<MonomialSpec>,
        /// Weight bound of the larger one-point set
        #[arg(long, requires = "lambda2", required_unless_present = "m1")]
        lambda1: Option<u64>,
        /// Weight bound of the smaller one-point set
        #[arg(long, requires = "lambda1")]
        lambda2: Option<u64>,
        /// Index r of M_r
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Method::Exhaustive)]
        method: Method,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// CSS parameters of the one-point pair L(lambda2) in L(lambda1).
    Quantum {
        #[command(flatten)]
        curve: CurveArgs,
        /// Weight bound of C1
        #[arg(long)]
        lambda1: u64,
        /// Weight bound of C2, below lambda1
        #[arg(long)]
        lambda2: u64,
    },
    /// Built-in tables of CSS parameters.
    QuantumTable {
        /// Preset name, or `all`.
        #[arg(long, default_value = "all")]
        preset: String,
    },
    /// Compare the engines with brute-force enumeration on small sets.
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        /// Largest decreasing set tried.
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
}

const DEFAULT_BUDGET: u128 = normtrace::oracle::DEFAULT_SUBSPACE_BUDGET;

/// Exit code for a failed run: 3 for budget overruns, 2 for invalid input, 1 otherwise.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(_) => 2,
        None => 1,
    }
}

fn cache_key(command: &str, sel: Option<&CurveSel>, args: Value) -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "curve": sel.map(CurveSel::key),
        "args": args,
    })
}

fn run(cli: &Cli) -> Result<(Report, bool, Lookup)> {
    let budget = cli.global.budget;
    let b = budget.unwrap_or(DEFAULT_BUDGET);
    let cache =
        (!cli.global.no_cache).then(|| Cache::new(cli.global.cache_dir.clone().unwrap_or_else(Cache::default_dir)));
    let mut passed = true;

    let compute = |passed: &mut bool| -> Result<Report> {
        match &cli.command {
            Command::Field { q, s, modulus } => commands::cmd_field(*q, *s, modulus.as_deref()),
            Command::Curve { curve, points } => commands::cmd_curve(&curve.sel(), *points),
            Command::Code { curve, monomials, dual, emit_generators } => {
                commands::cmd_code(&curve.sel(), monomials, *dual, *emit_generators)
            }
            Command::Ghw { curve, monomials, r, method, bound_only, search, .. } => {
                let options = commands::strategy_options(search.strategy.into(), !search.no_prune, *bound_only, budget);
                let args = GhwArgs { spec: monomials, r: *r, method: *method, options, budget: b };
                commands::cmd_ghw(&curve.sel(), &args)
            }
            Command::Rghw { curve, m1, m2, lambda1, lambda2, r, method, search } => {
                let options = commands::strategy_options(search.strategy.into(), !search.no_prune, false, budget);
                let pair = match (m1, m2, lambda1, lambda2) {
                    (Some(a), Some(b), _, _) => Pair::Sets(a, b),
                    (_, _, Some(l1), Some(l2)) => Pair::Lambdas(*l1, *l2),
                    _ => anyhow::bail!(Error::OutOfRange("give --m1/--m2 or --lambda1/--lambda2".into())),
                };
                commands::cmd_rghw(&curve.sel(), pair, *r, *method, &options, b)
            }
            Command::Quantum { curve, lambda1, lambda2 } => {
                commands::cmd_quantum(&curve.sel(), *lambda1, *lambda2, &Default::default())
            }
            Command::QuantumTable { preset } => {
                let presets: Vec<Preset> =
                    if preset == "all" { Preset::ALL.to_vec() } else { vec![preset.parse::<Preset>()?] };
                commands::cmd_quantum_table(&presets, &Default::default())
            }
            Command::Verify { curve, max_size } => {
                let (report, ok) = commands::cmd_verify(&curve.sel(), *max_size, b)?;
                *passed = ok;
                Ok(report)
            }
        }
    };

    // Only the expensive, deterministic commands are cached.
    let key = match &cli.command {
        Command::Ghw { curve, monomials, r, hierarchy, method, bound_only, search } => Some(cache_key(
            "ghw",
            Some(&curve.sel()),
            json!({
                "monomials": monomials.to_string(),
                "r": r,
                "hierarchy": hierarchy,
                "method": format!("{method:?}"),
                "bound_only": bound_only,
                "strategy": format!("{:?}", search.strategy),
                "prune": !search.no_prune,
                "budget": budget.map(|b| b.to_string()),
            }),
        )),
        Command::Rghw { curve, m1, m2, lambda1, lambda2, r, method, search } => Some(cache_key(
            "rghw",
            Some(&curve.sel()),
            json!({
                "m1": m1.as_ref().map(|m| m.to_string()),
                "m2": m2.as_ref().map(|m| m.to_string()),
                "lambda1": lambda1,
                "lambda2": lambda2,
                "r": r,
                "method": format!("{method:?}"),
                "strategy": format!("{:?}", search.strategy),
                "prune": !search.no_prune,
                "budget": budget.map(|b| b.to_string()),
            }),
        )),
        Command::Quantum { curve, lambda1, lambda2 } => {
            Some(cache_key("quantum", Some(&curve.sel()), json!({"lambda1": lambda1, "lambda2": lambda2})))
        }
        Command::QuantumTable { preset } => Some(cache_key("quantum-table", None, json!({"preset": preset}))),
        _ => None,
    };

    if let (Some(cache), Some(key)) = (&cache, &key) {
        let (hit, how) = cache.get(key);
        if let Some(report) = hit {
            return Ok((report, true, how));
        }
        let report = compute(&mut passed)?;
        cache.put(key, &report);
        return Ok((report, passed, how));
    }
    let report = compute(&mut passed)?;
    Ok((report, passed, Lookup::Miss))
}

fn render(report: &Report, format: Format, elapsed_ms: Option<f64>) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut json = report.json.clone();
            if let (Some(ms), Value::Object(map)) = (elapsed_ms, &mut json) {
                map.insert("elapsed_ms".into(), json!(ms));
            }
            let mut s = serde_json::to_string_pretty(&json)?;
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = report.text.clone();
            if let Some(ms) = elapsed_ms {
                s.push_str(&format!("elapsed: {ms:.1} ms\n"));
            }
            s
        }
        Format::Csv => match &report.csv {
            Some(csv) => csv.clone(),
            None => anyhow::bail!(Error::OutOfRange("this command has no CSV output; use text or json".into())),
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match cli.global.threads {
        Some(n) => Some(n),
        None => match std::env::var("NORMTRACE_THREADS") {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) => Some(n),
                Err(_) => {
                    eprintln!("error: NORMTRACE_THREADS must be a thread count, got {v:?}");
                    return ExitCode::from(2);
                }
            },
            Err(_) => None,
        },
    };
    if let Some(n) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let result = run(&cli).and_then(|(report, passed, how)| {
        let elapsed = cli.global.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        let out = render(&report, cli.global.format, elapsed)?;
        std::io::stdout().write_all(out.as_bytes())?;
        match how {
            Lookup::Hit => eprintln!("cache: hit"),
            Lookup::Evicted => eprintln!("cache: discarded a corrupt entry"),
            _ => {}
        }
        Ok(passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
