//! Factorization over the integers: squarefree splitting, Zassenhaus,
//! cyclotomic recognition and powerful-divisor detection.

pub mod cyclotomic;
pub mod factor;
pub mod hensel;
pub mod integers;
pub mod modp;

pub use cyclotomic::{cyclotomic, cyclotomic_index, euler_phi};
pub use factor::{factor, irr_count, squarefree_decomposition, PolyFactorization};
pub use integers::{factor_integer, IntFactorization};

use crate::error::{Error, Result};
use crate::polycore::Poly;

/// Whether `f` lies in `Z[x^n]` for some `n >= 2`; constants always do.
pub fn is_powerful(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("is_powerful"));
    }
    Ok(f.is_constant() || f.deflate()?.0 >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powerful_examples() {
        assert!(is_powerful(&Poly::from_i64s(&[-5, 0, 0, 0, 1])).unwrap());
        assert!(!is_powerful(&Poly::from_i64s(&[1, 1, 1])).unwrap());
        assert!(is_powerful(&Poly::from_i64s(&[6])).unwrap());
        assert!(is_powerful(&Poly::zero()).is_err());
    }
}
