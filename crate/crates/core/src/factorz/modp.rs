//! Polynomials over a prime field `F_p`, `p < 2^32`, with distinct-degree
//! and equal-degree (Cantor–Zassenhaus) factorization.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::polycore::Poly;

/// Dense polynomial over `F_p`, ascending coefficients, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpPoly {
    p: u64,
    c: Vec<u64>,
}

impl ZpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for v in c.iter_mut() {
            *v %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ZpPoly { p, c }
    }

    pub fn from_poly(f: &Poly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|a| a.mod_floor(&pb).to_u64().expect("reduced below p"))
            .collect();
        ZpPoly::new(p, c)
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(p: u64) -> Self {
        ZpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        ZpPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        ZpPoly { p, c: vec![0, 1] }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn add(&self, o: &ZpPoly) -> ZpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        ZpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &ZpPoly) -> ZpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + self.p - o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        ZpPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &ZpPoly) -> ZpPoly {
        if self.is_zero() || o.is_zero() {
            return ZpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        ZpPoly::new(self.p, c)
    }

    pub fn scale(&self, k: u64) -> ZpPoly {
        ZpPoly::new(self.p, self.c.iter().map(|&a| self.mulm(a, k % self.p)).collect())
    }

    pub fn monic(&self) -> ZpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.inv(self.lc()))
    }

    pub fn divrem(&self, d: &ZpPoly) -> (ZpPoly, ZpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial mod p");
        if self.c.len() < d.c.len() {
            return (ZpPoly::zero(self.p), self.clone());
        }
        let inv = self.inv(d.lc());
        let dd = d.deg();
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = self.mulm(r[k + dd], inv);
            if t == 0 {
                continue;
            }
            q[k] = t;
            for (j, &dc) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + self.p - self.mulm(t, dc)) % self.p;
            }
        }
        (ZpPoly::new(self.p, q), ZpPoly::new(self.p, r))
    }

    pub fn rem(&self, d: &ZpPoly) -> ZpPoly {
        self.divrem(d).1
    }

    /// Resultant over `F_p` by the Euclidean remainder sequence.
    pub fn resultant(&self, o: &ZpPoly) -> u64 {
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = 1u64;
        loop {
            if a.is_zero() || b.is_zero() {
                return 0;
            }
            let (da, db) = (a.deg(), b.deg());
            if db == 0 {
                return self.mulm(acc, pow_mod(b.lc(), da as u64, self.p));
            }
            if da == 0 {
                return self.mulm(acc, pow_mod(a.lc(), db as u64, self.p));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return 0;
            }
            if da % 2 == 1 && db % 2 == 1 {
                acc = (self.p - acc) % self.p;
            }
            acc = self.mulm(acc, pow_mod(b.lc(), (da - r.deg()) as u64, self.p));
            a = b;
            b = r;
        }
    }

    pub fn derivative(&self) -> ZpPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| self.mulm(a, i as u64 % self.p))
            .collect();
        ZpPoly::new(self.p, c)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &ZpPoly) -> ZpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, o: &ZpPoly) -> (ZpPoly, ZpPoly, ZpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (ZpPoly::one(p), ZpPoly::zero(p));
        let (mut t0, mut t1) = (ZpPoly::zero(p), ZpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let k = r0.inv(r0.lc());
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &ZpPoly) -> ZpPoly {
        let mut result = ZpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() == 0 || self.gcd(&self.derivative()).deg() == 0
    }
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % m;
        }
        a = a * a % m;
        e >>= 1;
    }
    r
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(d, g)` with `g` the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &ZpPoly) -> Vec<(usize, ZpPoly)> {
    let p = f.modulus();
    let pe = BigUint::from(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = ZpPoly::x(p);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&pe, &rest);
        let g = h.sub(&ZpPoly::x(p)).gcd(&rest);
        if g.deg() > 0 {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    if rest.deg() > 0 {
        out.push((rest.deg(), rest));
    }
    out
}

/// Splits a monic product of irreducibles all of degree `d`, `p` odd.
pub fn equal_degree(f: &ZpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ZpPoly> {
    let p = f.modulus();
    if f.deg() == d {
        return vec![f.clone()];
    }
    let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) >> 1;
    loop {
        let a = ZpPoly::new(p, (0..f.deg()).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let g = a.gcd(f);
        let split = if g.deg() > 0 {
            g
        } else {
            a.pow_mod(&e, f).sub(&ZpPoly::one(p)).gcd(f)
        };
        if split.deg() > 0 && split.deg() < f.deg() {
            let other = f.divrem(&split).0;
            let mut out = equal_degree(&split, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial over `F_p`, `p` odd,
/// sorted by degree then coefficients. The random stream is fixed so the
/// output is reproducible.
pub fn factor_squarefree(f: &ZpPoly) -> Vec<ZpPoly> {
    assert!(f.modulus() % 2 == 1, "odd characteristic only");
    assert!(f.is_squarefree(), "squarefree input only");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ f.modulus());
    let monic = f.monic();
    let mut out: Vec<ZpPoly> = distinct_degree(&monic)
        .into_iter()
        .flat_map(|(d, g)| equal_degree(&g, d, &mut rng))
        .collect();
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.c.cmp(&b.c)));
    out
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl ZpPoly {
    pub fn is_irreducible(&self) -> bool {
        let f = self.monic();
        self.deg() >= 1 && {
            let dd = distinct_degree(&f);
            dd.len() == 1 && dd[0].0 == f.deg()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(p: u64, c: &[u64]) -> ZpPoly {
        ZpPoly::new(p, c.to_vec())
    }

    #[test]
    fn arithmetic_mod_p() {
        let a = zp(7, &[1, 2, 3]);
        let b = zp(7, &[6, 1]);
        let (q, r) = a.mul(&b).add(&zp(7, &[5])).divrem(&b);
        assert_eq!(q, a);
        assert_eq!(r, zp(7, &[5]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn factors_x4_plus_1_mod_small_primes() {
        // x^4 + 1 splits into quadratics or linears modulo every prime
        for p in [3u64, 5, 7, 11, 13, 17] {
            let f = zp(p, &[1, 0, 0, 0, 1]);
            let fs = factor_squarefree(&f);
            assert!(fs.len() >= 2);
            let prod = fs.iter().fold(ZpPoly::one(p), |acc, g| acc.mul(g));
            assert_eq!(prod, f);
            assert!(fs.iter().all(ZpPoly::is_irreducible));
        }
    }

    #[test]
    fn splits_products_of_linears() {
        let p = 101;
        let mut f = ZpPoly::one(p);
        for r in [3u64, 17, 42, 99, 100] {
            f = f.mul(&zp(p, &[p - r, 1]));
        }
        let fs = factor_squarefree(&f);
        assert_eq!(fs.len(), 5);
        assert!(fs.iter().all(|g| g.deg() == 1));
    }

    #[test]
    fn resultant_agrees_with_integers() {
        let f = Poly::from_i64s(&[-5, 0, 0, 0, 1]);
        let g = Poly::from_i64s(&[3, -2, 7]);
        let exact = crate::polycore::resultant(&f, &g).unwrap();
        for p in [101u64, 65_537, 2_147_483_647] {
            let m = ZpPoly::from_poly(&f, p).resultant(&ZpPoly::from_poly(&g, p));
            let e = exact.mod_floor(&BigInt::from(p)).to_u64().unwrap();
            assert_eq!(m, e);
        }
        let a = Poly::from_i64s(&[1, 1]);
        assert_eq!(ZpPoly::from_poly(&(&a * &g), 101).resultant(&ZpPoly::from_poly(&a, 101)), 0);
    }
}
