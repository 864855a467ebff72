//! Reproduction of the cyclotomic invariant table and the worked examples,
//! and the analysis document shared by the command-line reports.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::factorz::{cyclotomic, factor, factor_integer, PolyFactorization};
use crate::higman::{analyze_with, AnalyzeOptions, HigmanReport, LevelInvariants, Status};
use crate::polycore::{resultant, Poly};
use crate::rootset::{rootset_report, theorem_bounds, RootSetReport, TheoremBounds};

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub name: &'static str,
    pub value: String,
    pub expected: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub p: u32,
    pub cells: Vec<TableCell>,
    /// Sign of `inv`, reported apart from the absolute value.
    pub inv_sign: i8,
}

impl Table1Row {
    pub fn all_match(&self) -> bool {
        self.cells.iter().all(|c| c.matches)
    }
}

fn cell(name: &'static str, value: impl ToString, expected: impl ToString) -> TableCell {
    let (value, expected) = (value.to_string(), expected.to_string());
    TableCell {
        name,
        matches: value == expected,
        value,
        expected,
    }
}

/// Invariants of `Φ_p` against the closed forms `1`, `p^(p-2)`, `p^(p-1)`,
/// `p^(2(p-1))`.
pub fn table1_row(p: u32, opts: AnalyzeOptions) -> Result<Table1Row> {
    let phi = cyclotomic(p as usize);
    let r = analyze_with(&phi, opts)?;
    let l = &r.levels[0];
    let pb = BigInt::from(p);
    let inv = r.inv.clone().expect("cyclotomic polynomials of prime index are solvable");
    let cells = vec![
        cell("fbar", &l.fbar, &phi),
        cell("f_*", &l.fstar, 1),
        cell("Δ(f)", &r.chain[1], 1),
        cell("‖f‖", l.norm, 1),
        cell("ρ₁", &l.rho1, 1),
        cell("ρ₂", &l.rho2, 1),
        cell("f_*²", &l.fstar2, 1),
        cell("u", &l.u, 1),
        cell("ρ₃", &l.rho3, 1),
        cell("|disc|", l.disc.abs(), pb.pow(p - 2)),
        cell("prodant", &l.prodant, pb.pow(p - 1)),
        cell("len", r.len.expect("solvable"), 1),
        cell("irr", r.irr, 1),
        cell("|inv|", inv.abs(), pb.pow(2 * (p - 1))),
    ];
    Ok(Table1Row {
        p,
        cells,
        inv_sign: if inv.is_negative() { -1 } else { 1 },
    })
}

pub fn table1(primes: &[u32], opts: AnalyzeOptions) -> Result<Vec<Table1Row>> {
    primes.iter().map(|&p| table1_row(p, opts)).collect()
}

/// Level components whose absolute value is divisible by `p`.
pub fn trace_prime(levels: &[LevelInvariants], terminal: &BigInt, p: &BigUint) -> Vec<String> {
    let p = BigInt::from(p.clone());
    let divides = |v: &BigInt| (v % &p).bits() == 0;
    let mut out = Vec::new();
    for (i, l) in levels.iter().enumerate() {
        for (name, v) in [
            ("f(1)", &l.f_at_1),
            ("lc", &l.lc),
            ("rho1", &l.rho1),
            ("rho2", &l.rho2),
            ("rho3", &l.rho3),
            ("disc", &l.disc),
            ("prodant", &l.prodant),
        ] {
            if divides(v) {
                out.push(format!("level {i} {name}"));
            }
        }
    }
    if divides(terminal) {
        out.push("terminal constant".into());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportComparison {
    pub computed: Vec<String>,
    pub hall_set: Vec<u32>,
    /// Computed primes outside the stated Hall set, with their sources.
    pub excess: Vec<(String, Vec<String>)>,
    pub subset: bool,
}

fn compare_support(report: &HigmanReport, hall: &[u32]) -> SupportComparison {
    let fac = report.inv_factorization.as_ref().expect("solvable");
    let hall_set: BTreeSet<BigUint> = hall.iter().map(|&p| BigUint::from(p)).collect();
    let terminal = report.terminal_constant.clone().unwrap_or_else(BigInt::one);
    let excess: Vec<(String, Vec<String>)> = fac
        .support()
        .into_iter()
        .filter(|p| !hall_set.contains(p))
        .map(|p| (p.to_string(), trace_prime(&report.levels, &terminal, &p)))
        .collect();
    SupportComparison {
        computed: fac.support().iter().map(|p| p.to_string()).collect(),
        hall_set: hall.to_vec(),
        subset: excess.is_empty() && fac.is_complete(),
        excess,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub name: &'static str,
    pub f: Poly,
    pub factorization: PolyFactorization,
    pub status: Status,
    pub chain: Vec<Poly>,
    pub len: Option<usize>,
    pub irr: usize,
    pub rootset: RootSetReport,
    pub bounds: Option<TheoremBounds>,
    pub support: Option<SupportComparison>,
    pub checks: Vec<(String, bool)>,
    pub notes: Vec<String>,
}

impl ExampleReport {
    pub fn all_checks_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn p(c: &[i64]) -> Poly {
    Poly::from_i64s(c)
}

fn example(name: &'static str, f: Poly, hall: Option<&[u32]>, opts: AnalyzeOptions) -> Result<ExampleReport> {
    let report = analyze_with(&f, opts)?;
    let rootset = rootset_report(&f)?;
    let bounds = if report.status == Status::Solvable {
        Some(theorem_bounds(&report, &rootset)?)
    } else {
        None
    };
    let support = hall.filter(|_| report.status == Status::Solvable).map(|h| compare_support(&report, h));
    Ok(ExampleReport {
        name,
        factorization: factor(&f)?,
        status: report.status,
        chain: report.chain.clone(),
        len: report.len,
        irr: report.irr,
        rootset,
        bounds,
        support,
        checks: Vec::new(),
        notes: Vec::new(),
        f,
    })
}

/// The three worked examples, with every stated claim checked and every
/// divergence listed.
pub fn worked_examples(opts: AnalyzeOptions) -> Result<Vec<ExampleReport>> {
    let two = Some(BigUint::from(2u32));

    let f1a = p(&[1, 0, 3, 0, 1]);
    let f1 = &(&f1a * &p(&[1, 0, 1])) * &p(&[2, 1]);
    let mut e1 = example("length-2 product", f1.clone(), Some(&[2, 3, 5]), opts)?;
    e1.checks = vec![
        ("len = 2".into(), e1.len == Some(2)),
        ("irr = 3".into(), e1.irr == 3),
        ("root set product-free".into(), e1.rootset.product_free),
        (
            "derived-length bound 2".into(),
            e1.bounds.as_ref().and_then(|b| b.derived_length_bound.clone()) == two,
        ),
    ];
    let res29 = resultant(&f1a, &p(&[2, 1]))?;
    let f_at_4 = f1.eval_i64(4);
    e1.notes.push(format!(
        "Res(x^4 + 3*x^2 + 1, x + 2) = {res29}, entering the discriminant of the radical"
    ));
    e1.notes.push(format!(
        "f(4) = {f_at_4} = 305*17*6 = {}, the diagonal root pair (-2, -2) in prodant",
        factor_integer(&f_at_4)
            .primes
            .iter()
            .map(|(q, e)| if *e == 1 { q.to_string() } else { format!("{q}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    ));

    let f2a = &p(&[-5, 0, 0, 0, 1]) * &p(&[-2, 0, 1]);
    let f2 = &f2a * &p(&[1, 1]);
    let mut e2 = example("length-3 chain", f2.clone(), Some(&[2, 3, 5, 7, 11, 19]), opts)?;
    let r2 = analyze_with(&f2, opts)?;
    let delta_pf = crate::rootset::is_product_free(&f2a)?;
    e2.checks = vec![
        ("len = 3".into(), e2.len == Some(3)),
        (
            "Δ-chain (x^4 - 5)(x^2 - 2), x^2 - 5, 1".into(),
            e2.chain == vec![f2.clone(), f2a.clone(), p(&[-5, 0, 1]), Poly::one()],
        ),
        ("ρ₂ = 4".into(), r2.levels[0].rho2 == BigInt::from(4)),
        ("root set not arithmetically free".into(), !e2.rootset.arithmetically_free),
        ("Δ(f) product-free".into(), delta_pf),
        (
            "residual derived-length bound 2".into(),
            e2.bounds.as_ref().and_then(|b| b.residual_derived_length_bound.clone()) == two,
        ),
    ];

    let h = &p(&[-2, 0, 1]) * &p(&[-3, 0, 0, 1]);
    let f3 = &p(&[-8, 0, 0, 0, 0, 0, 1]) * &p(&[-9, 0, 0, 0, 0, 0, 1]);
    let eh = example("fixed-point divisor h", h.clone(), None, opts)?;
    let mut e3 = example("solvable multiple of h", f3.clone(), Some(&[2, 3, 5, 7, 11, 17, 73]), opts)?;
    e3.checks = vec![
        ("h not Higman-solvable".into(), eh.status == Status::FixedPoint),
        ("h arithmetically free".into(), eh.rootset.arithmetically_free),
        ("f solvable".into(), e3.status == Status::Solvable),
        ("len(f) = 1".into(), e3.len == Some(1)),
        ("h divides f".into(), f3.div_exact(&h).is_some()),
        ("f product-free".into(), e3.rootset.product_free),
        (
            "inv support within 2*3*5*7*11*17*73".into(),
            e3.support.as_ref().is_some_and(|s| s.subset),
        ),
    ];
    Ok(vec![e1, e2, eh, e3])
}

/// Rewrites every JSON number as a decimal string.
pub fn stringify_numbers(v: &mut Value) {
    match v {
        Value::Number(n) => *v = Value::String(n.to_string()),
        Value::Array(a) => a.iter_mut().for_each(stringify_numbers),
        Value::Object(o) => o.values_mut().for_each(stringify_numbers),
        _ => {}
    }
}

/// Fixed-order analysis report with integers as decimal strings.
pub fn analysis_document(f: &Poly, opts: AnalyzeOptions) -> Result<(HigmanReport, Value)> {
    let report = analyze_with(f, opts)?;
    let rootset = if f.is_constant() {
        None
    } else {
        Some(rootset_report(f)?)
    };
    let bounds = match (&rootset, report.status) {
        (Some(rs), Status::Solvable) => Some(theorem_bounds(&report, rs)?),
        _ => None,
    };
    let inv = report.inv.as_ref().map(|v| {
        json!({
            "value_abs": v.abs().to_string(),
            "sign": if v.is_negative() { "-1" } else { "1" },
            "prime_factorization": report.inv_factorization.as_ref().map(|fac| {
                fac.primes.iter().map(|(q, e)| json!([q.to_string(), e.to_string()])).collect::<Vec<_>>()
            }),
        })
    });
    let mut notes = Vec::new();
    if let Some(fac) = &report.inv_factorization {
        if !fac.is_complete() {
            notes.push(format!("inv has an unfactored cofactor {}", fac.unfactored));
        }
    }
    if let Some(l) = report.levels.iter().find(|l| l.lc != l.lc_fstar) {
        notes.push(format!(
            "lc(f) = {} differs from lc(f_*) = {} at level f = {}; lc(f) enters inv",
            l.lc, l.lc_fstar, l.f
        ));
    }
    let mut doc = serde_json::Map::new();
    doc.insert("input".into(), json!(f.to_string()));
    doc.insert("status".into(), json!(report.status.as_str()));
    doc.insert("len".into(), json!(report.len));
    doc.insert("irr".into(), json!(report.irr));
    doc.insert("inv".into(), inv.unwrap_or(Value::Null));
    doc.insert("levels".into(), serde_json::to_value(&report.levels).expect("serializable"));
    doc.insert("rootset".into(), serde_json::to_value(&rootset).expect("serializable"));
    doc.insert("bounds".into(), serde_json::to_value(&bounds).expect("serializable"));
    doc.insert("fidelity_notes".into(), json!(notes));
    let mut value = Value::Object(doc);
    stringify_numbers(&mut value);
    Ok((report, value))
}
