//! Multiplicative structure of root sets and the derived-length bounds built on it.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorz::{cyclotomic_index, factor};
use crate::higman::{HigmanReport, Status};
use crate::polycore::{compose_mul, poly_gcd, radical, Poly};

/// Largest root-set size for which `|X|^(2^|X|)` is expanded in reports.
pub const H_BOUND_EXACT_MAX: usize = 8;

fn check_input(op: &'static str, f: &Poly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial(op));
    }
    if f.is_constant() {
        return Err(Error::domain(op, "constant input"));
    }
    Ok(())
}

/// No roots `a`, `b` (possibly equal) with `ab` again a root.
pub fn is_product_free(f: &Poly) -> Result<bool> {
    check_input("is_product_free", f)?;
    if f.constant_term().is_zero() {
        return Err(Error::domain("is_product_free", "zero constant term"));
    }
    let rad = radical(f);
    Ok(poly_gcd(&compose_mul(&rad, &rad)?, &rad)?.is_constant())
}

/// Indices `m` with `Φ_m` dividing `f`, ascending.
pub fn cyclotomic_divisors(f: &Poly) -> Result<Vec<(usize, Poly)>> {
    check_input("cyclotomic_divisors", f)?;
    let mut out: Vec<(usize, Poly)> = factor(f)?
        .factors
        .into_iter()
        .filter_map(|(q, _)| cyclotomic_index(&q).map(|m| (m, q)))
        .collect();
    out.sort_by_key(|(m, _)| *m);
    Ok(out)
}

/// No subset `{b, a, ab, ab², …}` among the roots.
pub fn is_arithmetically_free(f: &Poly) -> Result<bool> {
    check_input("is_arithmetically_free", f)?;
    let rad = radical(f);
    if rad.constant_term().is_zero() || rad.eval(&num_bigint::BigInt::one()).is_zero() {
        return Ok(false);
    }
    let cyclo = cyclotomic_divisors(&rad)?;
    if cyclo.is_empty() {
        return Ok(true);
    }
    let irreducibles: Vec<Poly> = factor(&rad)?.factors.into_iter().map(|(q, _)| q).collect();
    for (m, _) in &cyclo {
        let roots_of_unity = &Poly::monomial(1, *m) - &Poly::one();
        for q in &irreducibles {
            // roots a ω over all m-th roots of unity ω
            let coset = radical(&compose_mul(q, &roots_of_unity)?);
            if rad.div_exact(&coset).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `size^(2^size)`, and 0 for the empty set.
pub fn nilpotency_bound(size: usize) -> BigUint {
    if size == 0 {
        return BigUint::zero();
    }
    let exp = 1usize
        .checked_shl(size as u32)
        .filter(|_| size < usize::BITS as usize)
        .expect("exponent 2^size overflows");
    num_traits::pow(BigUint::from(size), exp)
}

/// `size^(2^size)`, set only when small enough to print.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HBound {
    pub size: usize,
    #[serde(serialize_with = "ser_opt_biguint")]
    pub value: Option<BigUint>,
}

impl HBound {
    pub fn new(size: usize) -> Self {
        HBound {
            size,
            value: (size <= H_BOUND_EXACT_MAX).then(|| nilpotency_bound(size)),
        }
    }
}

fn ser_opt_biguint<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSetReport {
    pub radical: Poly,
    pub root_count: usize,
    pub product_free: bool,
    pub arithmetically_free: bool,
    pub cyclotomic_divisors: Vec<(usize, Poly)>,
    pub h_bound: HBound,
}

impl RootSetReport {
    /// `H(X)` bound: 1 when product-free, `|X|^(2^|X|)` when only
    /// arithmetically free, none otherwise.
    pub fn class_bound(&self) -> Option<BigUint> {
        if self.product_free {
            Some(BigUint::one())
        } else if self.arithmetically_free {
            self.h_bound.value.clone()
        } else {
            None
        }
    }
}

pub fn rootset_report(f: &Poly) -> Result<RootSetReport> {
    check_input("rootset_report", f)?;
    let rad = radical(f);
    let product_free = if rad.constant_term().is_zero() {
        false
    } else {
        is_product_free(&rad)?
    };
    Ok(RootSetReport {
        root_count: rad.deg(),
        product_free,
        arithmetically_free: is_arithmetically_free(&rad)?,
        cyclotomic_divisors: cyclotomic_divisors(&rad)?,
        h_bound: HBound::new(rad.deg()),
        radical: rad,
    })
}

/// Fitting-height and derived-length bounds for a group with `f` as identity.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremBounds {
    pub fitting_height_bound: usize,
    pub irr: usize,
    pub deg: usize,
    #[serde(serialize_with = "ser_opt_biguint")]
    pub derived_length_bound: Option<BigUint>,
    /// Bound on the first lower Fitting subgroup from the root set of Δ(f).
    #[serde(serialize_with = "ser_opt_biguint")]
    pub residual_derived_length_bound: Option<BigUint>,
}

pub fn theorem_bounds(report: &HigmanReport, rs: &RootSetReport) -> Result<TheoremBounds> {
    if report.status != Status::Solvable {
        return Err(Error::NotSolvable("theorem_bounds"));
    }
    let len = report.len.expect("solvable");
    let deg = report.input.deg();
    if len == 0 {
        return Ok(TheoremBounds {
            fitting_height_bound: 0,
            irr: report.irr,
            deg,
            derived_length_bound: Some(BigUint::zero()),
            residual_derived_length_bound: Some(BigUint::zero()),
        });
    }
    let derived_length_bound = rs.class_bound().map(|h| h * BigUint::from(len));
    let next = &report.chain[1];
    let residual_derived_length_bound = if next.is_constant() {
        Some(BigUint::zero())
    } else {
        rootset_report(next)?.class_bound().map(|h| h * BigUint::from(len - 1))
    };
    Ok(TheoremBounds {
        fitting_height_bound: len,
        irr: report.irr,
        deg,
        derived_length_bound,
        residual_derived_length_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorz::cyclotomic;
    use crate::higman::analyze;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn ex61() -> Poly {
        &(&p(&[1, 0, 3, 0, 1]) * &p(&[1, 0, 1])) * &p(&[2, 1])
    }

    fn ex62() -> Poly {
        &(&p(&[-5, 0, 0, 0, 1]) * &p(&[-2, 0, 1])) * &p(&[1, 1])
    }

    #[test]
    fn product_free_examples() {
        assert!(is_product_free(&ex61()).unwrap());
        assert!(!is_product_free(&cyclotomic(3)).unwrap());
        assert!(!is_product_free(&(&p(&[-2, 1]) * &p(&[-4, 1]))).unwrap());
        assert!(is_product_free(&(&p(&[-8, 0, 0, 0, 0, 0, 1]) * &p(&[-9, 0, 0, 0, 0, 0, 1]))).unwrap());
        assert!(is_product_free(&p(&[0, 1, 1])).is_err());
    }

    #[test]
    fn arithmetically_free_examples() {
        assert!(is_arithmetically_free(&(&p(&[-2, 0, 1]) * &p(&[-3, 0, 0, 1]))).unwrap());
        assert!(is_arithmetically_free(&p(&[1, 1])).unwrap());
        assert!(!is_arithmetically_free(&p(&[0, -1, 1])).unwrap());
        assert!(!is_arithmetically_free(&ex62()).unwrap());
        assert!(is_arithmetically_free(&ex61()).unwrap());
        // a full coset of the 4th roots of unity
        assert!(!is_arithmetically_free(&(&p(&[1, 0, 1]) * &p(&[-16, 0, 0, 0, 1]))).unwrap());
    }

    #[test]
    fn nilpotency_bound_values() {
        assert_eq!(nilpotency_bound(0), BigUint::zero());
        assert_eq!(nilpotency_bound(2), BigUint::from(16u32));
        assert_eq!(nilpotency_bound(3), BigUint::from(6561u32));
        assert!(HBound::new(9).value.is_none());
    }

    #[test]
    fn example_bounds() {
        let f = ex61();
        let r = analyze(&f).unwrap();
        let b = theorem_bounds(&r, &rootset_report(&f).unwrap()).unwrap();
        assert_eq!(b.fitting_height_bound, 2);
        assert_eq!(b.derived_length_bound, Some(BigUint::from(2u32)));

        let g = ex62();
        let r = analyze(&g).unwrap();
        let b = theorem_bounds(&r, &rootset_report(&g).unwrap()).unwrap();
        assert_eq!(b.derived_length_bound, None);
        assert_eq!(b.residual_derived_length_bound, Some(BigUint::from(2u32)));

        let c = p(&[7]);
        let r = analyze(&c).unwrap();
        let rs = rootset_report(&ex61()).unwrap();
        let b = theorem_bounds(&r, &rs).unwrap();
        assert_eq!(b.fitting_height_bound, 0);
        assert_eq!(b.derived_length_bound, Some(BigUint::zero()));
    }

    #[test]
    fn cyclotomic_divisor_listing() {
        let f = &(&cyclotomic(4) * &cyclotomic(3)) * &p(&[-2, 1]);
        let idx: Vec<usize> = cyclotomic_divisors(&f).unwrap().into_iter().map(|(m, _)| m).collect();
        assert_eq!(idx, vec![3, 4]);
    }
}
