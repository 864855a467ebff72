use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use higman_core::density::{run_density, trend_holds, write_csv, DensityConfig, Mode};
use higman_core::experiments::{analysis_document, stringify_numbers, table1, worked_examples};
use higman_core::expr::parse_poly;
use higman_core::groupkit::{
    build_elementary_abelian, build_semidirect, companion_matrix, default_identity, verify_theorem_main,
    Automorphism, FiniteGroup, Outcome, DEFAULT_ORDER_CAP,
};
use higman_core::higman::{AnalyzeOptions, ProdantPairs, Status};
use higman_core::Poly;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_FIXED_POINT: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_HYPOTHESIS: u8 = 4;
const EXIT_VERIFICATION: u8 = 5;

#[derive(Parser)]
#[command(name = "higman", version, about = "Higman invariants of integer polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the machine-readable report to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Pairs counted by prodant.
    #[arg(long, default_value = "all", value_name = "all|distinct")]
    prodant_pairs: ProdantPairs,
}

#[derive(Subcommand)]
enum Command {
    /// Δ-chain, level invariants, inv and root-set bounds of a polynomial.
    Analyze {
        /// Polynomial expression, e.g. "(x^4-5)*(x^2-2)*(x+1)".
        expr: String,
        #[command(flatten)]
        out: Output,
    },
    /// Invariants of Φ_p against their closed forms.
    Table1 {
        /// Primes p <= 13.
        #[arg(default_values_t = [2u32, 3, 5, 7])]
        primes: Vec<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// The three worked examples with their fidelity reports.
    Examples {
        #[command(flatten)]
        out: Output,
    },
    /// Share of inflated products reaching the target Higman length.
    Density(DensityArgs),
    /// Build a group with an automorphism and check the Fitting-height bound.
    GroupVerify(GroupArgs),
}

#[derive(Args)]
struct DensityArgs {
    /// Factor degrees d_1..d_c.
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 1])]
    degrees: Vec<usize>,
    /// Inflations n_1..n_c.
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 1])]
    inflations: Vec<usize>,
    /// Coefficient heights.
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 2, 4, 8])]
    heights: Vec<u64>,
    /// Enumerate every coefficient tuple or sample uniformly.
    #[arg(long, default_value = "montecarlo", value_name = "exhaustive|montecarlo")]
    mode: Mode,
    /// Samples per height in Monte Carlo mode.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Seed of the sampling stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write rows as CSV to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Write the rows and trend verdict as JSON to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct GroupArgs {
    /// Elementary abelian (Z/P)^d acted on by a matrix.
    #[arg(long, value_name = "P", conflicts_with = "semidirect")]
    ea: Option<u64>,
    /// Acting matrix is the companion matrix of this monic polynomial.
    #[arg(long, value_name = "EXPR", requires = "ea", conflicts_with = "matrix")]
    companion: Option<String>,
    /// Acting matrix as rows, e.g. "2,0;0,4".
    #[arg(long, value_name = "ROWS", requires = "ea")]
    matrix: Option<String>,
    /// (Z/P)^D ⋊ <M> with M given by D*D row-major entries.
    #[arg(long, num_args = 3.., value_names = ["P", "D", "ENTRIES"], allow_negative_numbers = true)]
    semidirect: Option<Vec<i64>>,
    /// Twist matrix B of (v, k) -> (B v, j k), row-major.
    #[arg(long, num_args = 1.., requires = "semidirect", allow_negative_numbers = true)]
    twist: Option<Vec<i64>>,
    /// Exponent j of the twist.
    #[arg(long, default_value_t = 1, requires = "twist")]
    twist_power: usize,
    /// Largest GL_d(p) searched for a fixed-point-free twist.
    #[arg(long, default_value_t = 100_000)]
    twist_budget: usize,
    /// Ordered identity to check; defaults to -1 + |G| x^(k-1) + x^k.
    #[arg(long, value_name = "EXPR")]
    identity: Option<String>,
    /// Refuse to build groups larger than this.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    max_group_order: usize,
    /// Write the verdict as JSON to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<higman_core::Error> for Failure {
    fn from(e: higman_core::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Analyze { expr, out } => cmd_analyze(&expr, &out),
        Command::Table1 { primes, out } => cmd_table1(&primes, &out),
        Command::Examples { out } => cmd_examples(&out),
        Command::Density(args) => cmd_density(&args),
        Command::GroupVerify(args) => cmd_group_verify(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn write_json(path: Option<&Path>, value: &Value) -> Result<(), Failure> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value).expect("serializable");
        fs::write(path, text + "\n").map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn to_doc<T: serde::Serialize>(v: &T) -> Value {
    let mut doc = serde_json::to_value(v).expect("serializable");
    stringify_numbers(&mut doc);
    doc
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(if *b { "TRUE" } else { "FALSE" }.into()),
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.iter().all(|x| x.as_array().is_some_and(|i| i.iter().all(|y| scalar(y).is_some()))) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

/// Indented text rendering of a report document.
fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn print_doc(v: &Value) {
    let mut s = String::new();
    render(v, 0, &mut s);
    print!("{s}");
}

fn parse(expr: &str) -> Result<Poly, Failure> {
    parse_poly(expr).map_err(|e| usage(format!("{e} in {expr:?}")))
}

fn options(out: &Output) -> AnalyzeOptions {
    AnalyzeOptions {
        prodant_pairs: out.prodant_pairs,
    }
}

fn cmd_analyze(expr: &str, out: &Output) -> CmdResult {
    let f = parse(expr)?;
    let (report, doc) = analysis_document(&f, options(out))?;
    println!("chain:");
    for (i, g) in report.chain.iter().enumerate() {
        println!("  Δ^{i}(f) = {g}");
    }
    print_doc(&doc);
    write_json(out.json.as_deref(), &doc)?;
    Ok(match report.status {
        Status::Solvable => EXIT_OK,
        Status::FixedPoint => EXIT_FIXED_POINT,
        Status::Degenerate => EXIT_DEGENERATE,
    })
}

fn cmd_table1(primes: &[u32], out: &Output) -> CmdResult {
    if let Some(&p) = primes.iter().find(|&&p| p > 13 || !is_small_prime(p)) {
        return Err(usage(format!("{p} is not a prime at most 13")));
    }
    let rows = table1(primes, options(out))?;
    for row in &rows {
        println!("p = {} (sign of inv {})", row.p, row.inv_sign);
        for c in &row.cells {
            let mark = if c.matches { "MATCH" } else { "MISMATCH" };
            println!("  {:<8} {:>24}  expected {:>24}  {mark}", c.name, c.value, c.expected);
        }
    }
    write_json(out.json.as_deref(), &to_doc(&rows))?;
    Ok(if rows.iter().all(|r| r.all_match()) {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn is_small_prime(p: u32) -> bool {
    matches!(p, 2 | 3 | 5 | 7 | 11 | 13)
}

fn cmd_examples(out: &Output) -> CmdResult {
    let examples = worked_examples(options(out))?;
    for e in &examples {
        println!("== {}: f = {}", e.name, e.f);
        println!("  factorization: {}", e.factorization);
        println!("  status: {}", e.status.as_str());
        for (i, g) in e.chain.iter().enumerate() {
            println!("  Δ^{i}(f) = {g}");
        }
        let len = e.len.map_or("none".to_string(), |l| l.to_string());
        println!("  len: {len}  irr: {}", e.irr);
        println!(
            "  product-free: {}  arithmetically free: {}",
            e.rootset.product_free, e.rootset.arithmetically_free
        );
        if let Some(b) = &e.bounds {
            println!(
                "  bounds: Fitting height <= {}, derived length <= {}, residual derived length <= {}",
                b.fitting_height_bound,
                show(&b.derived_length_bound),
                show(&b.residual_derived_length_bound)
            );
        }
        if let Some(s) = &e.support {
            println!("  inv support: {{{}}} vs Hall set {{{}}}", s.computed.join(", "), join(&s.hall_set));
            for (q, sources) in &s.excess {
                println!("    excess prime {q}: {}", sources.join(", "));
            }
        }
        for (name, ok) in &e.checks {
            println!("  [{}] {name}", if *ok { "ok" } else { "FAILED" });
        }
        for n in &e.notes {
            println!("  note: {n}");
        }
    }
    write_json(out.json.as_deref(), &to_doc(&examples))?;
    Ok(if examples.iter().all(|e| e.all_checks_hold()) {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn show<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("none".to_string(), |x| x.to_string())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn cmd_density(a: &DensityArgs) -> CmdResult {
    let cfg = DensityConfig {
        degrees: a.degrees.clone(),
        inflations: a.inflations.clone(),
        heights: a.heights.clone(),
        mode: a.mode,
        samples: a.samples,
        seed: a.seed,
    };
    let rows = run_density(&cfg)?;
    match &a.csv {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            write_csv(&rows, file)?;
            for r in &rows {
                println!(
                    "h = {}: total {}, solvable {}, target length {} ({}), ratio {:.6} ± {:.6}",
                    r.h,
                    r.total,
                    r.solvable,
                    cfg.target_length(),
                    r.target_length,
                    r.count_ratio,
                    r.std_error()
                );
            }
        }
        None => write_csv(&rows, std::io::stdout().lock())?,
    }
    if rows.len() >= 2 {
        eprintln!("trend within two standard errors: {}", trend_holds(&rows));
    }
    write_json(
        a.json.as_deref(),
        &to_doc(&json!({ "config": cfg, "target_length": cfg.target_length(), "rows": rows })),
    )?;
    Ok(EXIT_OK)
}

fn parse_rows(text: &str) -> Result<Vec<Vec<i64>>, Failure> {
    text.split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| usage(format!("matrix entry {x:?}: {e}"))))
                .collect()
        })
        .collect()
}

fn square(entries: &[i64], d: usize) -> Result<Vec<Vec<i64>>, Failure> {
    if d == 0 || entries.len() != d * d {
        return Err(usage(format!("expected {} matrix entries, got {}", d * d, entries.len())));
    }
    Ok(entries.chunks(d).map(|r| r.to_vec()).collect())
}

fn cmd_group_verify(a: &GroupArgs) -> CmdResult {
    let cap = a.max_group_order;
    let mut notes: Vec<String> = Vec::new();
    let (g, alpha): (FiniteGroup, Automorphism) = if let Some(p) = a.ea {
        let m = match (&a.companion, &a.matrix) {
            (Some(expr), _) => companion_matrix(&parse(expr)?)?,
            (None, Some(rows)) => parse_rows(rows)?,
            (None, None) => return Err(usage("--ea needs --companion or --matrix")),
        };
        build_elementary_abelian(p, &m, cap)?
    } else if let Some(spec) = &a.semidirect {
        let (p, d) = (spec[0], spec[1]);
        if p < 2 || d < 1 {
            return Err(usage("--semidirect needs a prime P and a dimension D >= 1"));
        }
        let m = square(&spec[2..], d as usize)?;
        let s = build_semidirect(p as u64, &m, cap)?;
        let alpha = match &a.twist {
            Some(entries) => s.twisted_automorphism(&square(entries, d as usize)?, a.twist_power)?,
            None => match s.find_fixed_point_free_twist(a.twist_budget) {
                Some((b, j, alpha)) => {
                    notes.push(format!("fixed-point-free twist B = {b:?}, j = {j}"));
                    alpha
                }
                None => {
                    notes.push("no fixed-point-free twist (v, k) -> (B v, j k) exists; using the identity".into());
                    Automorphism::identity(&s.group)
                }
            },
        };
        (s.group, alpha)
    } else {
        return Err(usage("one of --ea or --semidirect is required"));
    };
    let f = match &a.identity {
        Some(expr) => parse(expr)?,
        None => default_identity(&g, &alpha),
    };
    let v = verify_theorem_main(&g, &alpha, &f)?;
    println!("group order {}, automorphism order {}, identity {}", v.group_order, v.automorphism_order, f);
    for n in &notes {
        println!("note: {n}");
    }
    for (title, checks) in [("hypotheses", &v.hypotheses), ("conclusions", &v.conclusions)] {
        println!("{title}:");
        for c in checks {
            println!("  [{}] {}: {}", if c.holds { "ok" } else { "FAILED" }, c.name, c.detail);
        }
    }
    let opt = |x: Option<usize>| x.map_or("none".to_string(), |h| h.to_string());
    println!(
        "Fitting height {}, derived length {}, irr {}, len {}, gcd(|G|, inv) {}",
        opt(v.fitting_height),
        opt(v.derived_length),
        v.irr,
        opt(v.len),
        v.order_inv_gcd
    );
    println!("section checks: {}", v.section_scope);
    println!("verdict: {}", v.outcome.as_str());
    let mut doc = to_doc(&v);
    if let Value::Object(o) = &mut doc {
        o.insert("notes".into(), json!(notes));
    }
    write_json(a.json.as_deref(), &doc)?;
    Ok(match v.outcome {
        Outcome::Pass => EXIT_OK,
        Outcome::HypothesisViolated => EXIT_HYPOTHESIS,
        Outcome::ConclusionViolated => EXIT_VERIFICATION,
    })
}
