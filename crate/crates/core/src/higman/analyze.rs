//! The Δ-chain, per-level invariants and the recursive invariant `inv`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::closed::{deflate_and_reduce, delta};
use super::disc::{disc_radical, prodant, ProdantPairs};
use super::rho::{fstar2_of, rho1_parts, rho2_parts, rho3_parts};
use crate::error::{Error, Result};
use crate::factorz::{factor_integer, irr_count, IntFactorization};
use crate::polycore::{compose_mul, compose_pow, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Solvable,
    FixedPoint,
    Degenerate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Solvable => "solvable",
            Status::FixedPoint => "fixed_point",
            Status::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelInvariants {
    pub f: Poly,
    pub norm: usize,
    pub fbar: Poly,
    pub fstar: Poly,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub rho1: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub rho2: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub rho3: BigInt,
    pub fstar2: Poly,
    pub u: Poly,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub disc: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub prodant: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub lc: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub lc_fstar: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub f_at_1: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub level_factor: BigInt,
}

impl LevelInvariants {
    pub fn compute(f: &Poly, pairs: ProdantPairs) -> Result<Self> {
        if f.is_constant() {
            return Err(Error::domain("level", "constant input"));
        }
        let d = deflate_and_reduce(f)?;
        let (rho1, _) = rho1_parts(&d.fbar, &d.fstar, false)?;
        let rho2 = rho2_parts(&d.fbar, &d.fstar)?;
        let fstar2 = fstar2_of(&d.fstar)?;
        let (rho3, u) = rho3_parts(&d.fbar, &fstar2)?;
        let disc = disc_radical(f)?;
        let prodant = prodant(f, pairs)?;
        let lc = f.lc();
        let f_at_1 = f.eval(&BigInt::one());
        let level_factor = [&f_at_1, &lc, &rho1, &rho2, &rho3, &disc, &prodant]
            .into_iter()
            .fold(BigInt::one(), |acc, x| acc * x);
        Ok(LevelInvariants {
            f: f.clone(),
            norm: d.norm,
            lc_fstar: d.fstar.lc(),
            fbar: d.fbar,
            fstar: d.fstar,
            rho1,
            rho2,
            rho3,
            fstar2,
            u,
            disc,
            prodant,
            lc,
            f_at_1,
            level_factor,
        })
    }
}

/// The Δ-chain `f, Δ(f), Δ²(f), …` up to a constant or a fixed point.
#[derive(Clone, Debug, Serialize)]
pub struct HigmanChain {
    pub status: Status,
    pub chain: Vec<Poly>,
    pub len: Option<usize>,
}

pub fn higman_chain(f: &Poly) -> Result<HigmanChain> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("analyze"));
    }
    if f.constant_term().is_zero() || f.eval(&BigInt::one()).is_zero() {
        return Ok(HigmanChain {
            status: Status::Degenerate,
            chain: vec![f.clone()],
            len: None,
        });
    }
    let mut chain = vec![f.clone()];
    loop {
        let g = chain.last().expect("nonempty");
        if g.is_constant() {
            let len = chain.len() - 1;
            return Ok(HigmanChain {
                status: Status::Solvable,
                chain,
                len: Some(len),
            });
        }
        let next = delta(g)?;
        if next.is_associate(g) {
            return Ok(HigmanChain {
                status: Status::FixedPoint,
                chain,
                len: None,
            });
        }
        chain.push(next);
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub prodant_pairs: ProdantPairs,
}

#[derive(Clone, Debug, Serialize)]
pub struct HigmanReport {
    pub input: Poly,
    pub status: Status,
    pub chain: Vec<Poly>,
    pub len: Option<usize>,
    pub irr: usize,
    pub levels: Vec<LevelInvariants>,
    #[serde(serialize_with = "ser_opt_bigint")]
    pub terminal_constant: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_bigint")]
    pub inv: Option<BigInt>,
    pub inv_factorization: Option<IntFactorization>,
    pub prodant_pairs: ProdantPairs,
}

fn ser_opt_bigint<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

pub fn analyze(f: &Poly) -> Result<HigmanReport> {
    analyze_with(f, AnalyzeOptions::default())
}

pub fn analyze_with(f: &Poly, opts: AnalyzeOptions) -> Result<HigmanReport> {
    let mut report = analyze_unfactored(f, opts)?;
    report.inv_factorization = report.inv.as_ref().map(factor_integer);
    Ok(report)
}

fn analyze_unfactored(f: &Poly, opts: AnalyzeOptions) -> Result<HigmanReport> {
    let chain = higman_chain(f)?;
    let irr = irr_count(f)?;
    let mut report = HigmanReport {
        input: f.clone(),
        status: chain.status,
        len: chain.len,
        irr,
        levels: Vec::new(),
        terminal_constant: None,
        inv: None,
        inv_factorization: None,
        prodant_pairs: opts.prodant_pairs,
        chain: chain.chain,
    };
    if report.status == Status::Degenerate {
        return Ok(report);
    }
    report.levels = report
        .chain
        .par_iter()
        .filter(|g| !g.is_constant())
        .map(|g| LevelInvariants::compute(g, opts.prodant_pairs))
        .collect::<Result<Vec<_>>>()?;
    if report.status == Status::Solvable {
        let terminal = report.chain.last().expect("nonempty").constant_term();
        let value = report
            .levels
            .iter()
            .fold(terminal.clone(), |acc, l| acc * &l.level_factor);
        debug_assert!(!value.is_zero());
        report.inv = Some(value);
        report.terminal_constant = Some(terminal);
    }
    Ok(report)
}

/// `inv(f)` for Higman-solvable `f`; a nonzero constant is its own invariant.
pub fn inv(f: &Poly) -> Result<BigInt> {
    inv_with(f, ProdantPairs::All)
}

pub fn inv_with(f: &Poly, pairs: ProdantPairs) -> Result<BigInt> {
    let report = analyze_unfactored(f, AnalyzeOptions { prodant_pairs: pairs })?;
    match report.status {
        Status::Solvable => Ok(report.inv.expect("solvable")),
        Status::FixedPoint => Err(Error::NotSolvable("fixed point of Δ")),
        Status::Degenerate => Err(Error::NotSolvable("f(0) f(1) = 0")),
    }
}

/// `x (x - 1) χ_{C⊗C} ∏_{i=1}^{bound} χ_{C^i}(x^i)` for the companion matrix
/// `C` of monic `a`.
pub fn certificate_poly(a: &Poly, bound: usize) -> Result<Poly> {
    if a.is_constant() {
        return Err(Error::domain("certificate_poly", "constant input"));
    }
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    if bound == 0 {
        return Err(Error::domain("certificate_poly", "bound must be positive"));
    }
    if higman_chain(a)?.status != Status::Solvable {
        return Err(Error::NotSolvable("certificate_poly"));
    }
    let mut out = &Poly::x() * &Poly::linear_root(1);
    out = &out * &compose_mul(a, a)?;
    for i in 1..=bound {
        out = &out * &compose_pow(a, i)?;
    }
    Ok(out)
}

/// Sign and absolute value of a nonzero invariant.
pub fn split_sign(v: &BigInt) -> (BigInt, i8) {
    (v.abs(), if v.is_negative() { -1 } else { 1 })
}
