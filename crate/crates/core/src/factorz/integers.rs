//! Prime factorization of integer invariants.

use num_bigint::{BigInt, BigUint};
use num_prime::nt_funcs::factors;
use num_prime::FactorizationConfig;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// `|n| = prod p^e * unfactored`; `unfactored` is 1 unless the budget ran out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntFactorization {
    #[serde(serialize_with = "crate::report::ser_prime_powers")]
    pub primes: Vec<(BigUint, u32)>,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub unfactored: BigUint,
}

impl IntFactorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_one()
    }

    pub fn support(&self) -> Vec<BigUint> {
        self.primes.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn value(&self) -> BigUint {
        self.primes
            .iter()
            .fold(self.unfactored.clone(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }
}

/// Factors `|n|`, `n != 0`, trial division then Pollard rho.
pub fn factor_integer(n: &BigInt) -> IntFactorization {
    assert!(!n.is_zero(), "zero has no prime factorization");
    let m = n.abs().to_biguint().expect("absolute value");
    if m.is_one() {
        return IntFactorization {
            primes: Vec::new(),
            unfactored: m,
        };
    }
    let mut config = FactorizationConfig::default();
    config.rho_trials = 64;
    let (found, rest) = factors(m, Some(config));
    let primes = found.into_iter().map(|(p, e)| (p, e as u32)).collect();
    let unfactored = rest
        .map(|r| r.into_iter().product())
        .unwrap_or_else(BigUint::one);
    IntFactorization { primes, unfactored }
}
