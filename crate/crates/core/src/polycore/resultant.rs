//! Fraction-free kernels: subresultant gcd, Sylvester resultants and
//! discriminants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Ring elements admitting exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / d`, where the caller guarantees the quotient is exact.
    fn div_exact(&self, d: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(Zero::is_zero(&r), "Bareiss division must be exact");
        q
    }
}

impl ExactRing for Poly {
    fn ring_zero() -> Self {
        Poly::zero()
    }
    fn ring_one() -> Self {
        Poly::one()
    }
    fn is_ring_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Self {
        Poly::div_exact(self, d).expect("Bareiss division must be exact")
    }
}

/// Determinant of a square row-major matrix by Bareiss elimination.
pub fn bareiss_det<T: ExactRing>(n: usize, mut m: Vec<T>) -> T {
    assert_eq!(m.len(), n * n, "bareiss_det: matrix is not square");
    if n == 0 {
        return T::ring_one();
    }
    let mut negate = false;
    let mut prev = T::ring_one();
    for k in 0..n - 1 {
        if m[k * n + k].is_ring_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i * n + k].is_ring_zero()) else {
                return T::ring_zero();
            };
            for j in 0..n {
                m.swap(k * n + j, swap * n + j);
            }
            negate = !negate;
        }
        let pivot = m[k * n + k].clone();
        for i in k + 1..n {
            let lead = m[i * n + k].clone();
            for j in k + 1..n {
                let v = pivot
                    .mul(&m[i * n + j])
                    .sub(&lead.mul(&m[k * n + j]))
                    .div_exact(&prev);
                m[i * n + j] = v;
            }
            m[i * n + k] = T::ring_zero();
        }
        prev = pivot;
    }
    let det = m[n * n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Sylvester matrix of two coefficient vectors given in ascending order, with
/// formal degrees `len - 1`.
pub fn sylvester<T: ExactRing>(f: &[T], g: &[T]) -> (usize, Vec<T>) {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut mat = vec![T::ring_zero(); size * size];
    for row in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            mat[row * size + row + j] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            mat[(n + row) * size + row + j] = c.clone();
        }
    }
    (size, mat)
}

/// Resultant of two nonzero polynomials as the Sylvester determinant.
pub fn resultant(f: &Poly, g: &Poly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    Ok(resultant_coeffs(f.coeffs(), g.coeffs()))
}

pub(crate) fn resultant_coeffs(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    if m == 0 {
        return num_traits::pow(f[0].clone(), n);
    }
    if n == 0 {
        return num_traits::pow(g[0].clone(), m);
    }
    if f[m].is_zero() || g[n].is_zero() {
        let (size, mat) = sylvester(f, g);
        return bareiss_det(size, mat);
    }
    subresultant(Poly::new(f.to_vec()), Poly::new(g.to_vec()))
}

/// Resultant by the subresultant remainder sequence, both degrees positive.
fn subresultant(f: Poly, g: Poly) -> BigInt {
    let odd = |a: &Poly, b: &Poly| a.deg() % 2 == 1 && b.deg() % 2 == 1;
    let mut sign = false;
    let (mut a, mut b) = if f.deg() >= g.deg() {
        (f, g)
    } else {
        sign = odd(&f, &g);
        (g, f)
    };
    let mut g_coef = BigInt::one();
    let mut h = BigInt::one();
    while b.deg() > 0 {
        let delta = a.deg() - b.deg();
        sign ^= odd(&a, &b);
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        let divisor = &g_coef * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.div_scalar_exact(&divisor).expect("subresultant division is exact");
        g_coef = a.lc();
        h = match delta {
            0 => h,
            1 => g_coef.clone(),
            _ => num_traits::pow(g_coef.clone(), delta) / num_traits::pow(h, delta - 1),
        };
    }
    let da = a.deg();
    let res = num_traits::pow(b.lc(), da) / num_traits::pow(h, da - 1);
    if sign {
        -res
    } else {
        res
    }
}

/// `gcd(content f, content g) * gcd(pp f, pp g)` with positive leading
/// coefficient, via the subresultant remainder sequence.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    if f.is_zero() {
        return Ok(g.clone().normalize_sign());
    }
    if g.is_zero() {
        return Ok(f.clone().normalize_sign());
    }
    let c = f.content().gcd(&g.content());
    Ok(primitive_gcd(&f.primitive(), &g.primitive()).scale(&c))
}

/// Gcd of two nonzero primitive polynomials, primitive with positive lc.
pub(crate) fn primitive_gcd(f: &Poly, g: &Poly) -> Poly {
    let (mut a, mut b) = if f.deg() >= g.deg() {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    if b.is_constant() {
        return Poly::one();
    }
    let mut g_coef = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b.primitive();
        }
        if r.is_constant() {
            return Poly::one();
        }
        let divisor = &g_coef * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.div_scalar_exact(&divisor).expect("subresultant division is exact");
        g_coef = a.lc();
        h = if delta == 0 {
            h
        } else {
            let num = num_traits::pow(g_coef.clone(), delta);
            let den = num_traits::pow(h, delta - 1);
            num / den
        };
    }
}

/// Discriminant of a squarefree polynomial of positive degree,
/// `(-1)^(d(d-1)/2) Res(f, f') / lc(f)`; degree one gives 1.
pub fn discriminant(f: &Poly) -> Result<BigInt> {
    let d = match f.degree() {
        None => return Err(Error::ZeroPolynomial("discriminant")),
        Some(0) => return Err(Error::domain("discriminant", "constant input")),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(BigInt::one());
    }
    let res = resultant(f, &f.derivative())?;
    if res.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let mut disc = res / f.lc();
    if (d * (d - 1) / 2) % 2 == 1 {
        disc = -disc;
    }
    Ok(disc)
}

/// Radical (squarefree part) of a nonzero polynomial, primitive with positive lc.
pub fn radical(f: &Poly) -> Poly {
    if f.is_constant() {
        return Poly::one();
    }
    let pp = f.primitive();
    let g = primitive_gcd(&pp, &pp.derivative().primitive());
    pp.div_exact(&g).expect("gcd divides").primitive()
}

pub fn is_squarefree(f: &Poly) -> bool {
    f.is_constant() || primitive_gcd(&f.primitive(), &f.derivative().primitive()).is_constant()
}

/// Whether `f` and `g` are coprime over `Q`.
pub fn coprime(f: &Poly, g: &Poly) -> bool {
    if f.is_zero() || g.is_zero() {
        return f.is_constant() && g.is_constant() && !(f.is_zero() && g.is_zero());
    }
    primitive_gcd(&f.primitive(), &g.primitive()).is_constant()
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 0, 0, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[2, 2]), &p(&[-4, 0, 4])).unwrap(), p(&[2, 2]));
        assert_eq!(poly_gcd(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap(), p(&[1]));
        assert_eq!(poly_gcd(&Poly::zero(), &Poly::zero()), Err(Error::GcdOfZeros));
        assert_eq!(poly_gcd(&Poly::zero(), &p(&[-3, -6])).unwrap(), p(&[3, 6]));
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let common = p(&[5, 0, -3, 1]);
        let a = &common * &p(&[1, 7, 2]);
        let b = &common * &p(&[-9, 0, 0, 4]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), common);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[1, 1])).unwrap(), BigInt::from(-1));
        let f = &p(&[-5, 0, 0, 0, 1]) * &p(&[-2, 0, 1]);
        assert_eq!(resultant(&f, &p(&[1, 1])).unwrap(), BigInt::from(4));
        assert_eq!(resultant(&f, &p(&[3])).unwrap(), BigInt::from(729));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), BigInt::zero());
        assert!(resultant(&Poly::zero(), &f).is_err());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[1, 1, 1])).unwrap(), BigInt::from(-3));
        assert_eq!(discriminant(&p(&[1, 1, 1, 1, 1])).unwrap().abs(), BigInt::from(125));
        assert_eq!(discriminant(&p(&[9, 1])).unwrap(), BigInt::one());
        assert_eq!(discriminant(&p(&[1, 2, 1])), Err(Error::NotSquarefree));
        // b^2 - 4ac for a non-monic quadratic
        assert_eq!(discriminant(&p(&[1, 5, 3])).unwrap(), BigInt::from(13));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m: Vec<BigInt> = [2, -1, 0, 3, 0, 4, 1, 5, -2, 7, 1, 1, 0, 3, 2, -6]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        fn expand(n: usize, m: &[BigInt]) -> BigInt {
            if n == 1 {
                return m[0].clone();
            }
            let mut acc = BigInt::zero();
            for c in 0..n {
                let minor: Vec<BigInt> = (1..n)
                    .flat_map(|r| (0..n).filter(move |&j| j != c).map(move |j| (r, j)))
                    .map(|(r, j)| m[r * n + j].clone())
                    .collect();
                let term = &m[c] * expand(n - 1, &minor);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        assert_eq!(bareiss_det(4, m.clone()), expand(4, &m));
    }

    #[test]
    fn subresultant_matches_sylvester_determinant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let (m, n) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
            let mut draw = |d: usize| {
                let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-6..=6)).collect();
                c[d] = if c[d] == 0 { 3 } else { c[d] };
                p(&c)
            };
            let (f, g) = (draw(m), draw(n));
            let (size, mat) = sylvester(f.coeffs(), g.coeffs());
            assert_eq!(resultant(&f, &g).unwrap(), bareiss_det(size, mat), "{f} | {g}");
        }
        let shared = p(&[1, 1]);
        assert!(resultant(&(&shared * &p(&[2, 0, 1])), &(&shared * &p(&[5, 3]))).unwrap().is_zero());
    }

    #[test]
    fn radical_strips_multiplicity() {
        let f = &p(&[1, 0, 1]).pow(2) * &p(&[-2, 1]).pow(3);
        assert_eq!(radical(&f), &p(&[1, 0, 1]) * &p(&[-2, 1]));
        assert!(!is_squarefree(&f));
    }
}
