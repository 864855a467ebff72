//! The integers ρ₁, ρ₂, ρ₃, the polynomial f_*², and their cofactor witnesses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::bezout::resultant_bezout;
use super::closed::{deflate_and_reduce, partial_sums};
use crate::error::{Error, Result};
use crate::polycore::{compose_mul, minimal_multiplier, poly_gcd, resultant, solve_in_lattice, IntMatrix, Poly};

fn check_level(op: &'static str, f: &Poly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial(op));
    }
    if f.is_constant() {
        return Err(Error::domain(op, "constant input"));
    }
    if f.constant_term().is_zero() {
        return Err(Error::domain(op, "zero constant term"));
    }
    Ok(())
}

/// Columns `x^k * part` for `0 <= k <= bound`, padded to `rows`.
fn shift_matrix(parts: &[Poly], bound: usize, rows: usize) -> IntMatrix {
    let mut columns = Vec::with_capacity(parts.len() * (bound + 1));
    for part in parts {
        for k in 0..=bound {
            let mut col = vec![BigInt::zero(); rows];
            for (i, c) in part.coeffs().iter().enumerate() {
                col[i + k] = c.clone();
            }
            columns.push(col);
        }
    }
    IntMatrix::from_columns(rows, &columns)
}

fn padded(p: &Poly, rows: usize) -> Vec<BigInt> {
    let mut v = p.coeffs().to_vec();
    v.resize(rows, BigInt::zero());
    v
}

/// `r_n` with the cofactors `a_i` of `sum a_i fbar_{n,i} = r_n f_*`.
#[derive(Clone, Debug, Serialize)]
pub struct Rho1Witness {
    pub n: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub r: BigInt,
    pub parts: Vec<Poly>,
    pub cofactors: Vec<Poly>,
    pub degree_bound: usize,
}

impl Rho1Witness {
    pub fn verify(&self, fstar: &Poly) -> bool {
        let lhs = self
            .parts
            .iter()
            .zip(&self.cofactors)
            .fold(Poly::zero(), |acc, (p, a)| &acc + &(p * a));
        lhs == fstar.scale(&self.r)
    }
}

fn rho1_step(fbar: &Poly, fstar: &Poly, n: usize, certify: bool) -> Result<Rho1Witness> {
    let parts: Vec<Poly> = partial_sums(fbar, n)?.into_iter().filter(|p| !p.is_zero()).collect();
    let mut bound = 2 * fbar.deg();
    for attempt in 0..3 {
        let rows = fbar.deg() + bound + 1;
        let a = shift_matrix(&parts, bound, rows);
        let v = padded(fstar, rows);
        match minimal_multiplier(&a, &v) {
            Ok(r) => {
                let cofactors = if certify {
                    let target: Vec<BigInt> = v.iter().map(|x| x * &r).collect();
                    let coords = solve_in_lattice(&a, &target)
                        .ok_or_else(|| Error::domain("rho1", "multiplier without cofactors"))?;
                    coords.chunks(bound + 1).map(|c| Poly::new(c.to_vec())).collect()
                } else {
                    Vec::new()
                };
                return Ok(Rho1Witness {
                    n,
                    r,
                    parts,
                    cofactors,
                    degree_bound: bound,
                });
            }
            Err(Error::Infeasible) if attempt < 2 => bound *= 2,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Infeasible)
}

pub(crate) fn rho1_parts(fbar: &Poly, fstar: &Poly, certify: bool) -> Result<(BigInt, Vec<Rho1Witness>)> {
    let mut rho = BigInt::one();
    let mut witnesses = Vec::new();
    for n in 2..=fbar.deg() + 1 {
        let w = rho1_step(fbar, fstar, n, certify)?;
        rho = rho.lcm(&w.r);
        witnesses.push(w);
    }
    Ok((rho, witnesses))
}

/// Least `ρ >= 1` with `ρ f_*` in the ideal of the partial sums for every `n`.
pub fn rho1(f: &Poly) -> Result<BigInt> {
    check_level("rho1", f)?;
    let d = deflate_and_reduce(f)?;
    Ok(rho1_parts(&d.fbar, &d.fstar, false)?.0)
}

/// `rho1` together with exact cofactors for each `n`.
pub fn rho1_certified(f: &Poly) -> Result<(BigInt, Vec<Rho1Witness>)> {
    check_level("rho1", f)?;
    let d = deflate_and_reduce(f)?;
    let out = rho1_parts(&d.fbar, &d.fstar, true)?;
    if let Some(bad) = out.1.iter().find(|w| !w.verify(&d.fstar)) {
        return Err(Error::domain("rho1", format!("cofactor check failed at n = {}", bad.n)));
    }
    Ok(out)
}

pub(crate) fn rho2_parts(fbar: &Poly, fstar: &Poly) -> Result<BigInt> {
    if fstar.is_constant() {
        return Ok(fstar.constant_term());
    }
    let q = fbar.div_exact(fstar).expect("f_* divides fbar");
    if q.is_constant() {
        return Ok(q.constant_term());
    }
    resultant(fstar, &q)
}

pub fn rho2(f: &Poly) -> Result<BigInt> {
    check_level("rho2", f)?;
    let d = deflate_and_reduce(f)?;
    rho2_parts(&d.fbar, &d.fstar)
}

pub(crate) fn fstar2_of(fstar: &Poly) -> Result<Poly> {
    if fstar.is_constant() {
        return Ok(fstar.clone());
    }
    compose_mul(fstar, fstar)
}

/// Root products of pairs of roots of `f_*`; `f_*` itself when constant.
pub fn fstar2(f: &Poly) -> Result<Poly> {
    check_level("fstar2", f)?;
    fstar2_of(&deflate_and_reduce(f)?.fstar)
}

/// `(ρ₃, u)` with `u = gcd(f_*², fbar)`.
pub(crate) fn rho3_parts(fbar: &Poly, fstar2: &Poly) -> Result<(BigInt, Poly)> {
    let u = poly_gcd(fstar2, fbar)?;
    let qbar = fbar.div_exact(&u).expect("u divides fbar");
    if qbar.is_constant() {
        return Ok((qbar.constant_term(), u));
    }
    let q2 = fstar2.div_exact(&u).expect("u divides f_*^2");
    if q2.is_constant() {
        return Ok((q2.constant_term(), u));
    }
    Ok((resultant(&q2, &qbar)?, u))
}

pub fn rho3(f: &Poly) -> Result<BigInt> {
    check_level("rho3", f)?;
    let d = deflate_and_reduce(f)?;
    Ok(rho3_parts(&d.fbar, &fstar2_of(&d.fstar)?)?.0)
}

/// `rho^k * lhs = a * rhs + b * fbar`, checked by expansion.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub rho: BigInt,
    pub k: u32,
    pub lhs: Poly,
    pub rhs: Poly,
    pub fbar: Poly,
    pub a: Poly,
    pub b: Poly,
}

impl Certificate {
    pub fn verify(&self) -> bool {
        let left = self.lhs.scale(&num_traits::pow(self.rho.clone(), self.k as usize));
        left == &(&self.a * &self.rhs) + &(&self.b * &self.fbar)
    }
}

fn finish(rho: BigInt, k: u32, lhs: Poly, rhs: Poly, fbar: Poly, a: Poly) -> Result<Certificate> {
    let left = lhs.scale(&num_traits::pow(rho.clone(), k as usize));
    let b = (&left - &(&a * &rhs))
        .div_exact(&fbar)
        .ok_or_else(|| Error::domain("certificate", "remainder not divisible by fbar"))?;
    Ok(Certificate {
        rho,
        k,
        lhs,
        rhs,
        fbar,
        a,
        b,
    })
}

/// Witness of `ρ₂^k f_* = A f_*^k + B fbar`.
pub fn rho2_certificate(f: &Poly, k: u32) -> Result<Certificate> {
    check_level("rho2_certificate", f)?;
    if k == 0 {
        return Err(Error::domain("rho2_certificate", "k must be positive"));
    }
    let d = deflate_and_reduce(f)?;
    let (fbar, fstar) = (d.fbar, d.fstar);
    let rho = rho2_parts(&fbar, &fstar)?;
    let rhs = fstar.pow(k);
    let q = fbar.div_exact(&fstar).expect("f_* divides fbar");
    let a = if fstar.is_constant() {
        fstar.clone()
    } else if q.is_constant() {
        Poly::zero()
    } else {
        let (s, _, _) = resultant_bezout(&fstar, &q)?;
        &s.pow(k) * &fstar
    };
    finish(rho, k, fstar, rhs, fbar, a)
}

/// Witness of `ρ₃^k f_*^k = A (f_*²)^k + B fbar`.
pub fn rho3_certificate(f: &Poly, k: u32) -> Result<Certificate> {
    check_level("rho3_certificate", f)?;
    if k == 0 {
        return Err(Error::domain("rho3_certificate", "k must be positive"));
    }
    let d = deflate_and_reduce(f)?;
    let (fbar, fstar) = (d.fbar, d.fstar);
    let f2 = fstar2_of(&fstar)?;
    let (rho, u) = rho3_parts(&fbar, &f2)?;
    let w = fstar
        .div_exact(&u)
        .ok_or_else(|| Error::domain("rho3_certificate", "u does not divide f_*"))?;
    let qbar = fbar.div_exact(&u).expect("u divides fbar");
    let q2 = f2.div_exact(&u).expect("u divides f_*^2");
    let a = if qbar.is_constant() {
        Poly::zero()
    } else if q2.is_constant() {
        w.pow(k)
    } else {
        let (s, _, _) = resultant_bezout(&q2, &qbar)?;
        (&s * &w).pow(k)
    };
    finish(rho, k, fstar.pow(k), f2.pow(k), fbar, a)
}
