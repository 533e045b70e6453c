//! Batch command-line surface for the `ldseq` library.
//!
//! One subcommand per invocation; results go to standard output (or to
//! `--out PATH`), diagnostics to standard error. Exit codes: 0 on success,
//! 1 when a verification sweep finds discrepancies, 2 on usage or
//! precondition errors (the message names the violated condition).
//!
//! Rationals are written as `"R"` or `"R/S"` in decimal; no floating-point
//! input is accepted anywhere.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use rayon::prelude::*;

use ldseq::{
    average_slope, build_rauzy, build_transition_graph, complexity_line, conjecture_stats,
    empirical_profile, generate_prefix, generate_prefix_from, g_table, is_squarefree, lk_set,
    lk_sizes, AdmissiblePair, Bound, Digit, EnumerationBounds, Mode, PrefixPolicy, ProfileMethod,
    Rational,
};

#[derive(Parser)]
#[command(name = "ldseq", version, about = "Leading-digit sequences of a^n and their block complexity")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the result to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Cap worker parallelism for sweeps (default: available cores).
    /// Output is identical regardless of the setting.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the leading digits of a^start, a^(start+1), … in base b.
    Digits {
        /// The rational a, as "R" or "R/S".
        #[arg(long, value_parser = parse_rational)]
        a: Rational,
        /// The base b.
        #[arg(long)]
        b: u64,
        /// How many digits to print.
        #[arg(long)]
        count: usize,
        /// First exponent (0 or 1).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(0..=1))]
        start: u64,
        /// Digit generation mode.
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Block complexity profile p(1), …, p(n-max) by one of three methods.
    Complexity {
        #[arg(long, value_parser = parse_rational)]
        a: Rational,
        #[arg(long)]
        b: u64,
        /// Largest block length.
        #[arg(long = "n-max")]
        n_max: u64,
        /// How to compute the profile.
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Digit prefix length for the empirical method.
        #[arg(long, default_value_t = 10_000)]
        prefix: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// The exact circle-point set L_k behind the oracle, as JSON.
    Torus {
        #[arg(long, value_parser = parse_rational)]
        a: Rational,
        #[arg(long)]
        b: u64,
        /// Layer count.
        #[arg(long)]
        k: u64,
    },
    /// Cross-validate the closed form against the torus oracle over a sweep.
    Verify {
        /// Largest base; all squarefree b in [5, b-max] are swept.
        #[arg(long = "b-max")]
        b_max: u64,
        /// Blocks n = 1..k-max are compared for every pair.
        #[arg(long = "k-max")]
        k_max: u64,
        /// Largest canonical numerator r.
        #[arg(long = "r-max", default_value_t = 12)]
        r_max: u64,
        /// Largest canonical denominator s.
        #[arg(long = "s-max", default_value_t = 12)]
        s_max: u64,
    },
    /// The good pairs (c, d) with smallest witnesses, or conjecture statistics.
    Goodpairs {
        /// Largest slope c.
        #[arg(long = "c-max")]
        c_max: u64,
        /// Emit per-c counts and ratios instead of the pair table.
        #[arg(long)]
        stats: bool,
        /// Override the per-base numerator cap (default: r ≤ b²).
        #[arg(long = "r-max")]
        r_max: Option<u64>,
        /// Override the per-base denominator cap (default: s ≤ b).
        #[arg(long = "s-max")]
        s_max: Option<u64>,
    },
    /// Transition or Rauzy graph of a digit prefix and its cyclomatic number.
    Graph {
        #[arg(long, value_parser = parse_rational)]
        a: Rational,
        #[arg(long)]
        b: u64,
        /// Digit prefix length the graph is built from.
        #[arg(long)]
        prefix: usize,
        /// Build the level-N Rauzy graph instead of the transition graph.
        #[arg(long, value_name = "N")]
        rauzy: Option<usize>,
        /// Emit the vertex and edge lists instead of the cyclomatic summary.
        #[arg(long)]
        edges: bool,
        #[arg(long, value_enum, default_value_t = GraphFormatArg::Json)]
        format: GraphFormatArg,
    },
    /// Average complexity slope over integer a, for one base or a sweep.
    Average {
        /// A single squarefree base ≥ 5.
        #[arg(long, conflicts_with = "b_max", required_unless_present = "b_max")]
        b: Option<u64>,
        /// Sweep all squarefree bases in [5, b-max].
        #[arg(long = "b-max")]
        b_max: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Adaptive,
}

impl From<ModeArg> for Mode {
    fn from(arg: ModeArg) -> Mode {
        match arg {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Adaptive => Mode::Adaptive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Formula,
    Oracle,
    Empirical,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormatArg {
    Json,
    Text,
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    Rational::from_str(text).map_err(|e| e.to_string())
}

/// Rendered result plus whether a verification sweep failed (exit 1).
struct Report {
    body: String,
    verification_failed: bool,
}

impl Report {
    fn ok(body: String) -> Self {
        Report {
            body,
            verification_failed: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match run(cli.command) {
        Ok(report) => report,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = cli.out {
        if let Err(e) = fs::write(&path, &report.body) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{}", report.body);
    }
    if report.verification_failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(command: Command) -> Result<Report, String> {
    match command {
        Command::Digits {
            a,
            b,
            count,
            start,
            mode,
        } => {
            let prefix = generate_prefix_from(&a, b, start, count, mode.into())
                .map_err(|e| e.to_string())?;
            Ok(Report::ok(format!("{prefix}\n")))
        }
        Command::Complexity {
            a,
            b,
            n_max,
            method,
            prefix,
            format,
        } => complexity_report(&a, b, n_max, method, prefix, format),
        Command::Torus { a, b, k } => {
            let set = lk_set(&a, b, k).map_err(|e| e.to_string())?;
            Ok(Report::ok(format!("{}\n", set.to_json())))
        }
        Command::Verify {
            b_max,
            k_max,
            r_max,
            s_max,
        } => verify_report(b_max, k_max, r_max, s_max),
        Command::Goodpairs {
            c_max,
            stats,
            r_max,
            s_max,
        } => goodpairs_report(c_max, stats, r_max, s_max),
        Command::Graph {
            a,
            b,
            prefix,
            rauzy,
            edges,
            format,
        } => graph_report(&a, b, prefix, rauzy, edges, format),
        Command::Average { b, b_max } => average_report(b, b_max),
    }
}

fn complexity_report(
    a: &Rational,
    b: u64,
    n_max: u64,
    method: MethodArg,
    prefix: usize,
    format: FormatArg,
) -> Result<Report, String> {
    let (points, method_name, prefix_length): (Vec<(u64, u64)>, &str, Option<usize>) = match method
    {
        MethodArg::Formula => {
            let pair = AdmissiblePair::new(a.clone(), b).map_err(|e| e.to_string())?;
            let line = complexity_line(&pair);
            ((1..=n_max).map(|n| (n, line.eval(n))).collect(), "formula", None)
        }
        MethodArg::Oracle => {
            let sizes = lk_sizes(a, b, n_max).map_err(|e| e.to_string())?;
            let points = sizes
                .into_iter()
                .enumerate()
                .map(|(i, p)| (i as u64 + 1, p))
                .collect();
            (points, "oracle", None)
        }
        MethodArg::Empirical => {
            let profile = empirical_profile(a, b, n_max, prefix, PrefixPolicy::Fixed, Mode::Adaptive)
                .map_err(|e| e.to_string())?;
            let used = match profile.method {
                ProfileMethod::Empirical { prefix_length, .. } => prefix_length,
                _ => unreachable!("empirical profile reports its prefix"),
            };
            (profile.points, "empirical", Some(used))
        }
    };
    let body = match format {
        FormatArg::Csv => {
            let mut out = String::from("n,p,method,prefix_length\n");
            let prefix_cell = prefix_length.map(|l| l.to_string()).unwrap_or_default();
            for (n, p) in &points {
                out.push_str(&format!("{n},{p},{method_name},{prefix_cell}\n"));
            }
            out
        }
        FormatArg::Json => {
            let mut object = serde_json::Map::new();
            object.insert("a".into(), serde_json::json!(a.to_string()));
            object.insert("b".into(), serde_json::json!(b));
            object.insert("method".into(), serde_json::json!(method_name));
            let pairs: Vec<[u64; 2]> = points.iter().map(|&(n, p)| [n, p]).collect();
            object.insert("points".into(), serde_json::json!(pairs));
            if let Some(used) = prefix_length {
                object.insert("prefix_length".into(), serde_json::json!(used));
            }
            format!("{}\n", serde_json::Value::Object(object))
        }
    };
    Ok(Report::ok(body))
}

fn verify_report(b_max: u64, k_max: u64, r_max: u64, s_max: u64) -> Result<Report, String> {
    if b_max < 5 {
        return Err(format!("--b-max {b_max} is below the smallest admissible base 5"));
    }
    if k_max < 1 {
        return Err("--k-max must be at least 1".into());
    }
    let mut work: Vec<(u64, u64, u64)> = Vec::new();
    for b in (5..=b_max).filter(|&b| is_squarefree(b)) {
        for r in 2..=r_max {
            for s in 1..r.min(s_max + 1) {
                if r.gcd(&s) == 1 && r < s * b {
                    work.push((b, r, s));
                }
            }
        }
    }
    let discrepancies: Vec<String> = work
        .par_iter()
        .flat_map_iter(|&(b, r, s)| {
            let a = rational(r, s);
            let pair = AdmissiblePair::new(a.clone(), b).expect("canonical pair is admissible");
            let line = complexity_line(&pair);
            let sizes = lk_sizes(&a, b, k_max).expect("oracle preconditions hold on the sweep");
            sizes
                .into_iter()
                .enumerate()
                .filter_map(move |(i, oracle)| {
                    let n = i as u64 + 1;
                    let formula = line.eval(n);
                    (formula != oracle).then(|| {
                        format!("DISCREPANCY a={r}/{s} b={b} n={n} formula={formula} oracle={oracle}\n")
                    })
                })
                .collect::<Vec<String>>()
                .into_iter()
        })
        .collect();
    let mut body = discrepancies.concat();
    body.push_str(&format!(
        "checked {} pairs, n = 1..{k_max}: {} discrepancies\n",
        work.len(),
        discrepancies.len()
    ));
    Ok(Report {
        body,
        verification_failed: !discrepancies.is_empty(),
    })
}

fn goodpairs_report(
    c_max: u64,
    stats: bool,
    r_max: Option<u64>,
    s_max: Option<u64>,
) -> Result<Report, String> {
    if c_max < 1 {
        return Err("--c-max must be at least 1".into());
    }
    let mut bounds = EnumerationBounds::default();
    if let Some(r) = r_max {
        bounds.r_max = Bound::Fixed(r);
    }
    if let Some(s) = s_max {
        bounds.s_max = Bound::Fixed(s);
    }
    let body = if stats {
        let mut out = String::from("c,count,ratio,cumulative_ratio\n");
        for row in conjecture_stats(c_max, &bounds) {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.c, row.count, row.ratio, row.cumulative_ratio
            ));
        }
        out
    } else {
        let mut out = String::from("c,d,b,r,s\n");
        for row in g_table(c_max, &bounds) {
            for pair in row {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    pair.c, pair.d, pair.witness.b, pair.witness.r, pair.witness.s
                ));
            }
        }
        out
    };
    Ok(Report::ok(body))
}

fn graph_report(
    a: &Rational,
    b: u64,
    prefix: usize,
    rauzy: Option<usize>,
    edges: bool,
    format: GraphFormatArg,
) -> Result<Report, String> {
    let digits = generate_prefix(a, b, prefix, Mode::Adaptive).map_err(|e| e.to_string())?;
    let (vertices, edge_list, cyclomatic) = match rauzy {
        None => {
            let graph = build_transition_graph(&digits).map_err(|e| e.to_string())?;
            let vertices: Vec<String> = graph.vertices().map(|d| digit_label(&[d], b)).collect();
            let edge_list: Vec<[String; 2]> = graph
                .edges()
                .map(|(u, v)| [digit_label(&[u], b), digit_label(&[v], b)])
                .collect();
            (vertices, edge_list, graph.cyclomatic())
        }
        Some(n) => {
            if n < 1 {
                return Err("--rauzy level must be at least 1".into());
            }
            let graph = build_rauzy(&digits, n).map_err(|e| e.to_string())?;
            let vertices: Vec<String> = graph.vertices().map(|w| digit_label(w, b)).collect();
            let edge_list: Vec<[String; 2]> = graph
                .edges()
                .map(|(u, v)| [digit_label(u, b), digit_label(v, b)])
                .collect();
            (vertices, edge_list, graph.cyclomatic())
        }
    };
    let body = match (edges, format) {
        (false, GraphFormatArg::Json) => {
            let value = serde_json::json!({
                "e": cyclomatic.e,
                "n": cyclomatic.n,
                "p": cyclomatic.p,
                "C": cyclomatic.c,
            });
            format!("{value}\n")
        }
        (false, GraphFormatArg::Text) => {
            return Err("the cyclomatic summary is JSON-only; --format text requires --edges".into())
        }
        (true, GraphFormatArg::Json) => {
            let value = serde_json::json!({
                "vertices": vertices,
                "edges": edge_list,
            });
            format!("{value}\n")
        }
        (true, GraphFormatArg::Text) => {
            let mut out = String::new();
            for [u, v] in &edge_list {
                out.push_str(&format!("{u} {v}\n"));
            }
            out
        }
    };
    Ok(Report::ok(body))
}

fn average_report(b: Option<u64>, b_max: Option<u64>) -> Result<Report, String> {
    let bases: Vec<u64> = match (b, b_max) {
        (Some(b), None) => vec![b],
        (None, Some(b_max)) => {
            if b_max < 5 {
                return Err(format!("--b-max {b_max} is below the smallest admissible base 5"));
            }
            (5..=b_max).filter(|&b| is_squarefree(b)).collect()
        }
        _ => unreachable!("clap enforces exactly one of --b/--b-max"),
    };
    let rows: Vec<Result<String, String>> = bases
        .par_iter()
        .map(|&b| {
            average_slope(b)
                .map(|mean| format!("{b},{mean}\n"))
                .map_err(|e| e.to_string())
        })
        .collect();
    let mut body = String::from("b,c_bar\n");
    for row in rows {
        body.push_str(&row?);
    }
    Ok(Report::ok(body))
}

/// A vertex label: contiguous digits for `b ≤ 10`, comma-separated otherwise
/// (the same convention digit listings use).
fn digit_label(word: &[Digit], b: u64) -> String {
    let mut out = String::new();
    for (i, d) in word.iter().enumerate() {
        if b > 10 && i > 0 {
            out.push(',');
        }
        out.push_str(&d.to_string());
    }
    out
}

fn rational(num: u64, den: u64) -> Rational {
    Rational::new(num.into(), den.into()).expect("positive numerator and denominator")
}
