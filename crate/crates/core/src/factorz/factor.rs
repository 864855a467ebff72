//! Squarefree decomposition and complete factorization over the integers.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::hensel::{multifactor_lift, symmetric};
use super::modp::{factor_squarefree, is_prime_u64, ZpPoly};
use crate::error::{Error, Result};
use crate::polycore::resultant::primitive_gcd;
use crate::polycore::Poly;

/// `sign * content * prod poly^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyFactorization {
    pub sign: i8,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub content: BigInt,
    pub factors: Vec<(Poly, u32)>,
}

impl std::fmt::Display for PolyFactorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let scalar = &self.content * BigInt::from(self.sign);
        let mut parts: Vec<String> = Vec::new();
        if self.factors.is_empty() || scalar != BigInt::from(1) {
            parts.push(scalar.to_string());
        }
        for (q, e) in &self.factors {
            let base = if q.deg() == 1 && q.coeffs().iter().filter(|c| c.bits() != 0).count() == 1 {
                q.to_string()
            } else {
                format!("({q})")
            };
            parts.push(if *e == 1 { base } else { format!("{base}^{e}") });
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl PolyFactorization {
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(&self.content * BigInt::from(self.sign));
        for (q, e) in &self.factors {
            acc = &acc * &q.pow(*e);
        }
        acc
    }

    /// Number of irreducible factors of positive degree, with multiplicity.
    pub fn irr(&self) -> usize {
        self.factors.iter().map(|(_, e)| *e as usize).sum()
    }

    pub fn distinct(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(q, _)| q)
    }

    /// Product of the distinct factors, primitive.
    pub fn radical(&self) -> Poly {
        self.distinct().product()
    }
}

/// Squarefree parts `(part, multiplicity)` of `pp(f)`, ascending multiplicity.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree_decomposition"));
    }
    let a = f.primitive();
    if a.is_constant() {
        return Ok(Vec::new());
    }
    let mut b = primitive_gcd(&a, &a.derivative().primitive());
    let mut c = a.div_exact(&b).expect("gcd divides");
    let mut out = Vec::new();
    let mut i = 1;
    while !c.is_constant() {
        let d = primitive_gcd(&c, &b);
        let e = c.div_exact(&d).expect("gcd divides");
        if !e.is_constant() {
            out.push((e, i));
        }
        b = b.div_exact(&d).expect("gcd divides");
        c = d;
        i += 1;
    }
    Ok(out)
}

/// Complete factorization over the integers, factors sorted canonically.
pub fn factor(f: &Poly) -> Result<PolyFactorization> {
    let (content, sign, _) = f.content_primitive()?;
    let mut factors = Vec::new();
    for (part, e) in squarefree_decomposition(f)? {
        for q in factor_squarefree_integral(&part) {
            factors.push((q, e));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(PolyFactorization {
        sign,
        content,
        factors,
    })
}

pub fn irr_count(f: &Poly) -> Result<usize> {
    Ok(factor(f)?.irr())
}

/// Irreducible factors of a squarefree primitive polynomial with positive
/// leading coefficient.
pub(crate) fn factor_squarefree_integral(f: &Poly) -> Vec<Poly> {
    let d = f.deg();
    if d <= 1 {
        return vec![f.clone()];
    }
    if f.constant_term().is_zero() {
        let rest = f.div_exact(&Poly::x()).expect("x divides");
        let mut out = vec![Poly::x()];
        out.extend(factor_squarefree_integral(&rest));
        return out;
    }
    let p = choose_prime(f);
    let modular = factor_squarefree(&ZpPoly::from_poly(f, p));
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let lc = f.lc();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << d) * (l2_norm_ceil(f));
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lifted = multifactor_lift(f, &modular, p, k);
    recombine(f, lifted, &pk)
}

/// Subset recombination, smallest subsets first.
fn recombine(f: &Poly, mut lifted: Vec<Poly>, pk: &BigInt) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        for subset in (0..lifted.len()).combinations(size) {
            let lc = rest.lc();
            let mut cand = Poly::constant(lc.clone());
            for &i in &subset {
                cand = symmetric(&(&cand * &lifted[i]), pk);
            }
            let cand = cand.primitive();
            if let Some(q) = rest.div_exact(&cand) {
                out.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    out.push(rest.primitive());
    out
}

fn choose_prime(f: &Poly) -> u64 {
    let lc = f.lc();
    (3u64..)
        .filter(|&p| is_prime_u64(p))
        .find(|&p| {
            !(&lc % BigInt::from(p)).is_zero() && ZpPoly::from_poly(f, p).is_squarefree()
        })
        .expect("a squarefree polynomial has finitely many bad primes")
}

fn l2_norm_ceil(f: &Poly) -> BigInt {
    let sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    num_integer::Roots::sqrt(&sq) + BigInt::one()
}
