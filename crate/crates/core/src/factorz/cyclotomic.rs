//! Cyclotomic polynomials and their recognition.

use crate::polycore::Poly;

/// `Φ_m`, by dividing `x^m - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic(m: usize) -> Poly {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut f = Poly::monomial(1, m) - Poly::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        f = f.div_exact(&cyclotomic(d)).expect("cyclotomic divides x^m - 1");
    }
    f
}

pub fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `m` with `q = Φ_m`, for monic irreducible `q`.
pub fn cyclotomic_index(q: &Poly) -> Option<usize> {
    if q.is_constant() || !q.is_monic() {
        return None;
    }
    let d = q.deg();
    // phi(m) >= sqrt(m / 2), so m <= 2 d^2
    (1..=2 * d * d + 2)
        .filter(|&m| euler_phi(m) == d)
        .find(|&m| cyclotomic(m) == *q)
}
