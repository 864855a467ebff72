//! Discriminant of the radical and the root-pair product `prodant`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{compose_mul, compose_pow_pre, discriminant, poly_gcd, radical, resultant, Poly};

/// Which ordered root pairs `(λ, μ)` enter `prodant`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProdantPairs {
    /// Every ordered pair, the diagonal `λ = μ` included.
    #[default]
    All,
    /// Ordered pairs with `λ ≠ μ` only.
    Distinct,
}

impl std::str::FromStr for ProdantPairs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(ProdantPairs::All),
            "distinct" => Ok(ProdantPairs::Distinct),
            other => Err(Error::Config(format!("unknown prodant pairs '{other}'"))),
        }
    }
}

pub fn disc_radical(f: &Poly) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("disc_radical"));
    }
    if f.is_constant() {
        return Err(Error::domain("disc_radical", "constant input"));
    }
    discriminant(&radical(f))
}

/// `prod f_rad(λμ)` over root pairs of the radical with `f_rad(λμ) ≠ 0`.
pub fn prodant(f: &Poly, pairs: ProdantPairs) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("prodant"));
    }
    if f.is_constant() {
        return Err(Error::domain("prodant", "constant input"));
    }
    if f.constant_term().is_zero() || f.eval(&BigInt::one()).is_zero() {
        return Err(Error::domain("prodant", "f(0) f(1) = 0"));
    }
    let rad = radical(f);
    let mut products = compose_mul(&rad, &rad)?;
    if pairs == ProdantPairs::Distinct {
        let diagonal = compose_pow_pre(&rad, 2)?;
        products = products
            .div_exact(&diagonal)
            .ok_or_else(|| Error::domain("prodant", "diagonal does not divide"))?;
    }
    loop {
        let g = poly_gcd(&products, &rad)?;
        if g.is_constant() {
            break;
        }
        products = products.div_exact(&g).expect("gcd divides");
    }
    if products.is_constant() {
        return Ok(BigInt::one());
    }
    resultant(&products.primitive(), &rad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorz::{cyclotomic, factor_integer};
    use num_bigint::BigUint;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn disc_examples() {
        assert_eq!(disc_radical(&cyclotomic(3)).unwrap(), BigInt::from(-3));
        assert_eq!(disc_radical(&p(&[1, 0, 1]).pow(2)).unwrap(), BigInt::from(-4));
        assert_eq!(disc_radical(&p(&[7, 1])).unwrap(), BigInt::one());
        assert_eq!(disc_radical(&cyclotomic(5)).unwrap(), BigInt::from(125));
    }

    #[test]
    fn prodant_cyclotomic_primes() {
        for q in [2u32, 3, 5, 7] {
            let expect = BigInt::from(q).pow(q - 1);
            assert_eq!(prodant(&cyclotomic(q as usize), ProdantPairs::All).unwrap(), expect);
        }
        assert_eq!(prodant(&p(&[1, 1]), ProdantPairs::All).unwrap(), BigInt::from(2));
        // the only pair of x + 1 is diagonal
        assert_eq!(prodant(&p(&[1, 1]), ProdantPairs::Distinct).unwrap(), BigInt::one());
    }

    #[test]
    fn prodant_matches_pair_enumeration() {
        let f = &p(&[-8, 0, 0, 0, 0, 0, 1]) * &p(&[-9, 0, 0, 0, 0, 0, 1]);
        let v = prodant(&f, ProdantPairs::All).unwrap();
        let support: Vec<BigUint> = factor_integer(&v).support();
        let expect: Vec<BigUint> = [2u32, 3, 5, 7, 11, 73].iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(support, expect);
    }

    #[test]
    fn prodant_rejects_degenerate() {
        assert!(prodant(&p(&[-1, 1]), ProdantPairs::All).is_err());
        assert!(prodant(&p(&[0, 1, 1]), ProdantPairs::All).is_err());
    }
}
