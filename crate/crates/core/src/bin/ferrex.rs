//! Command-line front end: every library operation with JSON/CSV output
//! for batch use.
//!
//! Exit codes: 0 success, 1 validation error, 2 internal invariant
//! violation, 3 verify-suite failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ferrex::bounds::{self, LayerCakeValue, TailEnvelope};
use ferrex::diagrams::{self, StepFn};
use ferrex::partitions::{self, Partition};
use ferrex::rational::{format_f64, format_rat, parse_rat, rat, Rat};
use ferrex::search::{self, SearchReport};
use ferrex::verify;

#[derive(Parser)]
#[command(name = "ferrex", version, about = "Extremal quantities of coherent distributions, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Conjugate a partition in an n x n box
    Conjugate {
        /// Comma-separated parts, e.g. 5,4,3,3,2
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
        #[arg(long)]
        n: usize,
    },
    /// Gale-Ryser test: is (a, b) the bipartite degree pair of some graph?
    Bigraphic {
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
        #[arg(long)]
        n: usize,
    },
    /// Evaluate a diagram: moment E|X-Y|^k or tail P(|X-Y| > delta)
    Eval {
        /// Path to a step-function JSON file
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long, conflicts_with_all = ["delta", "strict"])]
        k: Option<u32>,
        /// Tail threshold, e.g. 3/5 or 0.6
        #[arg(long)]
        delta: Option<String>,
        /// Strict inequality |X-Y| > delta (default is >=)
        #[arg(long)]
        strict: bool,
    },
    /// Maximisation over partitions, diagrams and graphs
    Search {
        #[command(subcommand)]
        cmd: SearchCmd,
    },
    /// Closed-form bounds
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
    /// Run the property suites
    Verify {
        /// all, slicing, garyser, chord or zagreb
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Best partition objective value at (n, k)
    Best {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Method::Exhaustive)]
        method: Method,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        iters: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Hunt for E|X-Y|^k > 2^-k (k >= 4)
    Counterexample {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Best strict tail at delta over an m x m box
    Tail {
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 10)]
        resolution: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// CSV table of every closed form
    Table {
        #[arg(long, default_value_t = 8)]
        k_max: u32,
        /// start:end:step, rationals or decimals
        #[arg(long, default_value = "0.55:0.95:0.05")]
        delta_grid: String,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Exhaustive,
    Local,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct PrefixCheck {
    prefix: usize,
    b_star_sum: usize,
    a_sum: usize,
    ok: bool,
}

#[derive(Serialize)]
struct BigraphicReport {
    bigraphic: bool,
    b_star: Vec<usize>,
    trace: Vec<PrefixCheck>,
}

#[derive(Serialize)]
struct EvalReport {
    value: String,
    float: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // --help/--version are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", e);
                return ExitCode::SUCCESS;
            }
            eprint!("{}", e);
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Conjugate { parts, n } => {
            let b = Partition::new(n, parts).map_err(|e| e.to_string())?;
            let conj = partitions::conjugate(&b);
            println!("{}", serde_json::to_string(&conj).map_err(|e| e.to_string())?);
            Ok(0)
        }
        Cmd::Bigraphic { a, b, n } => {
            let a = Partition::new(n, a).map_err(|e| e.to_string())?;
            let b = Partition::new(n, b).map_err(|e| e.to_string())?;
            let report = bigraphic_report(&a, &b).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string(&report).map_err(|e| e.to_string())?);
            Ok(0)
        }
        Cmd::Eval { diagram, k, delta, strict } => {
            let text = std::fs::read_to_string(&diagram)
                .map_err(|e| format!("{}: {}", diagram.display(), e))?;
            let f = StepFn::from_json(&text).map_err(|e| e.to_string())?;
            let value = match (k, delta) {
                (Some(k), None) => diagrams::moment(&f, k),
                (None, Some(d)) => {
                    let d = parse_rat(&d).map_err(|e| e.to_string())?;
                    diagrams::tail(&f, &d, strict)
                }
                _ => return Err("exactly one of --k and --delta is required".into()),
            };
            let report = EvalReport {
                value: format_rat(&value),
                float: ferrex::rational::to_f64(&value),
            };
            println!("{}", serde_json::to_string(&report).map_err(|e| e.to_string())?);
            Ok(0)
        }
        Cmd::Search { cmd } => run_search(cmd),
        Cmd::Bounds { cmd } => run_bounds(cmd),
        Cmd::Verify { suite, seed } => {
            let reports = verify::run_suite(&suite, seed).map_err(|e| e.to_string())?;
            let mut all_passed = true;
            for r in &reports {
                for c in &r.checks {
                    let status = if c.passed { "pass" } else { "FAIL" };
                    match &c.detail {
                        Some(d) => println!("{}: {} ({} cases): {} [{}]", r.suite, status, c.cases, c.name, d),
                        None => println!("{}: {} ({} cases): {}", r.suite, status, c.cases, c.name),
                    }
                    all_passed &= c.passed;
                }
            }
            Ok(if all_passed { 0 } else { 3 })
        }
    }
}

fn bigraphic_report(a: &Partition, b: &Partition) -> ferrex::Result<BigraphicReport> {
    let bigraphic = partitions::is_bigraphic(a, b)?;
    let b_star = partitions::conjugate(b).parts;
    let a_sorted = a.sorted_desc();
    let n = b_star.len();
    let mut trace = Vec::with_capacity(n);
    let (mut sb, mut sa) = (0usize, 0usize);
    for i in 0..n {
        sb += b_star[i];
        sa += a_sorted[i];
        let ok = if i + 1 < n { sb >= sa } else { sb == sa };
        trace.push(PrefixCheck { prefix: i + 1, b_star_sum: sb, a_sum: sa, ok });
    }
    Ok(BigraphicReport { bigraphic, b_star, trace })
}

fn run_search(cmd: SearchCmd) -> Result<u8, String> {
    let (report, k, delta, format) = match cmd {
        SearchCmd::Best { n, k, method, seed, iters, format } => {
            let report = match method {
                Method::Exhaustive => search::exhaustive_best(n, k),
                Method::Local => search::local_search(n, k, seed, iters),
            }
            .map_err(|e| e.to_string())?;
            (report, Some(k), None, format)
        }
        SearchCmd::Counterexample { k, n_max, format } => {
            let report = search::counterexample_hunt(k, n_max).map_err(|e| e.to_string())?;
            (report, Some(k), None, format)
        }
        SearchCmd::Tail { delta, resolution, format } => {
            let d = parse_rat(&delta).map_err(|e| e.to_string())?;
            let report = search::tail_search(&d, resolution).map_err(|e| e.to_string())?;
            (report, None, Some(d), format)
        }
    };
    let check = search::reevaluate(&report, k, delta.as_ref()).map_err(|e| e.to_string())?;
    if check != report.best_value {
        eprintln!(
            "internal error: witness re-evaluates to {}, reported {}",
            format_rat(&check),
            format_rat(&report.best_value)
        );
        return Ok(2);
    }
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?)
        }
        Format::Csv => print_search_csv(&report),
    }
    Ok(0)
}

fn print_search_csv(report: &SearchReport) {
    println!("method,parameter,n,value-exact,value-float,bound,gap");
    for b in &report.bounds {
        let gap = &b.value - &report.best_value;
        println!(
            "{},{},{},{},{},{},{}",
            report.method,
            report.parameter,
            report.n,
            format_rat(&report.best_value),
            format_f64(&report.best_value),
            b.name,
            format_f64(&gap)
        );
    }
}

fn parse_grid(spec: &str) -> Result<Vec<Rat>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("bad grid '{}', expected start:end:step", spec));
    }
    let start = parse_rat(parts[0]).map_err(|e| e.to_string())?;
    let end = parse_rat(parts[1]).map_err(|e| e.to_string())?;
    let step = parse_rat(parts[2]).map_err(|e| e.to_string())?;
    if step <= rat(0, 1) {
        return Err("grid step must be positive".into());
    }
    let mut out = Vec::new();
    let mut d = start;
    while d <= end {
        out.push(d.clone());
        d += &step;
    }
    Ok(out)
}

fn run_bounds(cmd: BoundsCmd) -> Result<u8, String> {
    let BoundsCmd::Table { k_max, delta_grid } = cmd;
    let grid = parse_grid(&delta_grid)?;
    println!("name,parameter,value-exact,value-float");
    let row = |name: &str, parameter: &str, v: &Rat| {
        println!("{},{},{},{}", name, parameter, format_rat(v), format_f64(v));
    };
    for k in 1..=k_max.min(2) {
        let v = ferrex::rational::pow2_neg(k);
        row("power_bound", &format!("k={}", k), &v);
    }
    for k in 1..=k_max {
        match bounds::layer_cake(&TailEnvelope::eps(), k).map_err(|e| e.to_string())? {
            LayerCakeValue::Exact(v) => row("eps_layer_cake", &format!("k={}", k), &v),
            LayerCakeValue::Approximate { .. } => unreachable!("eps envelope is polynomial"),
        }
    }
    for k in 3..=k_max {
        let v = bounds::new_bound(k).map_err(|e| e.to_string())?;
        row("new_bound", &format!("k={}", k), &v);
    }
    for d in &grid {
        if d <= &rat(1, 2) || d > &rat(1, 1) {
            continue;
        }
        let param = format!("delta={}", format_rat(d));
        let v = bounds::independent_tail_curve(d).map_err(|e| e.to_string())?;
        row("independent_tail_curve", &param, &v);
        let v = bounds::burdzy_pal_tail(d).map_err(|e| e.to_string())?;
        row("burdzy_pal_tail", &param, &v);
    }
    Ok(0)
}
