//! Instance verdicts for the Fitting-height bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::group::{identity_holds_modulo, is_fixed_point_free, ordered_identity_holds, Automorphism, FiniteGroup};
use super::series::{commutator_subgroup, derived_length, is_solvable, lower_fitting_series};
use crate::error::Result;
use crate::higman::{analyze, Status};
use crate::polycore::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            holds,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    HypothesisViolated,
    ConclusionViolated,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::HypothesisViolated => "hypothesis violated",
            Outcome::ConclusionViolated => "conclusion violated",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationVerdict {
    pub group_order: usize,
    pub automorphism_order: usize,
    pub polynomial: Poly,
    pub hypotheses: Vec<Check>,
    pub conclusions: Vec<Check>,
    /// Label of the section checks: only lower Fitting sections are examined.
    pub section_scope: &'static str,
    pub section_checks: Vec<Check>,
    pub fitting_height: Option<usize>,
    pub derived_length: Option<usize>,
    pub irr: usize,
    pub len: Option<usize>,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub order_inv_gcd: BigInt,
    pub outcome: Outcome,
}

/// Checks the hypotheses of the Fitting-height bound on `(G, α, f)` and,
/// only when all hold, its conclusions.
pub fn verify_theorem_main(g: &FiniteGroup, alpha: &Automorphism, f: &Poly) -> Result<VerificationVerdict> {
    let report = analyze(f)?;
    let identity = ordered_identity_holds(g, alpha, f);
    let fpf = is_fixed_point_free(g, alpha);
    let order = BigInt::from(g.order());
    let gcd = match &report.inv {
        Some(v) => order.gcd(v),
        None => order.clone(),
    };
    let hypotheses = vec![
        Check::new("ordered identity", identity, format!("{f} on order {}", g.order())),
        Check::new("fixed-point-free", fpf, format!("automorphism of order {}", alpha.order())),
        Check::new(
            "Higman-solvable",
            report.status == Status::Solvable,
            report.status.as_str(),
        ),
        Check::new("gcd(|G|, inv(f)) = 1", gcd.is_one(), format!("gcd = {gcd}")),
    ];
    let solvable = is_solvable(g);
    let series = if solvable { Some(lower_fitting_series(g)?) } else { None };
    let height = series.as_ref().map(|s| s.len() - 1);
    let dl = if solvable { Some(derived_length(g)?) } else { None };
    let mut verdict = VerificationVerdict {
        group_order: g.order(),
        automorphism_order: alpha.order(),
        polynomial: f.clone(),
        hypotheses,
        conclusions: Vec::new(),
        section_scope: "partial (lower-Fitting sections)",
        section_checks: Vec::new(),
        fitting_height: height,
        derived_length: dl,
        irr: report.irr,
        len: report.len,
        order_inv_gcd: gcd,
        outcome: Outcome::HypothesisViolated,
    };
    if !verdict.hypotheses.iter().all(|c| c.holds) {
        return Ok(verdict);
    }
    let len = report.len.expect("solvable");
    let mut conclusions = vec![Check::new("G solvable", solvable, "derived series reaches 1")];
    if let Some(h) = height {
        conclusions.push(Check::new("h(G) <= irr(f)", h <= report.irr, format!("{h} <= {}", report.irr)));
        conclusions.push(Check::new("h(G) <= len(f)", h <= len, format!("{h} <= {len}")));
    }
    // Δ^i(f) on the abelianized i-th lower Fitting term, for α^(‖f‖ ⋯ ‖Δ^(i-1) f‖)
    if let Some(series) = &series {
        let mut exponent = 1usize;
        for (i, term) in series.iter().enumerate().skip(1) {
            let prev = &report.chain[i - 1];
            if prev.is_constant() {
                break;
            }
            exponent *= prev.deflate()?.0;
            let Some(poly) = report.chain.get(i) else { break };
            let derived = commutator_subgroup(g, term, term);
            let beta = alpha.pow(exponent % alpha.order().max(1));
            let holds = identity_holds_modulo(g, &beta, poly, term, &derived);
            verdict.section_checks.push(Check::new(
                &format!("F_{i} abelianized"),
                holds,
                format!("Δ^{i}(f) = {poly} for α^{exponent} on order {}", term.order()),
            ));
        }
    }
    conclusions.extend(verdict.section_checks.iter().cloned());
    verdict.outcome = if conclusions.iter().all(|c| c.holds) {
        Outcome::Pass
    } else {
        Outcome::ConclusionViolated
    };
    verdict.conclusions = conclusions;
    Ok(verdict)
}

/// `-1 + |G| x^(k-1) + x^k` with `k` the order of `α`.
pub fn default_identity(g: &FiniteGroup, alpha: &Automorphism) -> Poly {
    let k = alpha.order();
    let mut p = &Poly::monomial(1, k) - &Poly::one();
    p = &p + &Poly::monomial(g.order() as i64, k - 1);
    p
}
