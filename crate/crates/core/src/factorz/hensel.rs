//! Linear Hensel lifting of a modular factorization to `p^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::modp::ZpPoly;
use crate::polycore::Poly;

fn reduce(f: &Poly, m: &BigInt) -> Poly {
    Poly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Inverse of `a` modulo `m`, assuming it exists.
pub(crate) fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lifts `f ≡ g h (mod p)`, `h` monic and `lc(g) = lc(f)`, to `mod p^k`.
/// `f` is taken modulo `p^k`; the returned pair satisfies the same shape.
fn lift_pair(f: &Poly, g0: &ZpPoly, h0: &ZpPoly, p: u64, k: u32) -> (Poly, Poly) {
    let pb = BigInt::from(p);
    let modulus = num_traits::pow(pb.clone(), k as usize);
    let f = reduce(f, &modulus);
    let (one, s, _) = g0.ext_gcd(h0);
    assert!(one.is_one(), "modular factors must be coprime");

    let lcf = f.lc();
    let mut g = g0.to_poly();
    let mut gc = g.coeffs().to_vec();
    *gc.last_mut().expect("nonzero") = lcf.clone();
    g = Poly::new(gc);
    let mut h = h0.to_poly();

    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = reduce(&(&f - &(&g * &h)), &modulus);
        let e = diff.div_scalar_exact(&pj).expect("congruence holds");
        let e = ZpPoly::from_poly(&e, p);
        let dh = e.mul(&s).rem(h0);
        let (dg, r) = e.sub(&dh.mul(g0)).divrem(h0);
        debug_assert!(r.is_zero());
        g = reduce(&(&g + &dg.to_poly().scale(&pj)), &modulus);
        h = reduce(&(&h + &dh.to_poly().scale(&pj)), &modulus);
        pj *= &pb;
    }
    (g, h)
}

/// Monic integer polynomials `m_i`, reduced into `[0, p^k)`, with
/// `lc(f) * prod m_i ≡ f (mod p^k)` and `m_i ≡ factors[i] (mod p)`.
pub fn multifactor_lift(f: &Poly, factors: &[ZpPoly], p: u64, k: u32) -> Vec<Poly> {
    let modulus = num_traits::pow(BigInt::from(p), k as usize);
    if factors.len() == 1 {
        let inv = inverse_mod(&f.lc(), &modulus);
        return vec![reduce(&f.scale(&inv), &modulus)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let lc_mod_p = ZpPoly::from_poly(&Poly::constant(f.lc()), p);
    let g0 = left.iter().fold(lc_mod_p, |acc, q| acc.mul(q));
    let h0 = right.iter().fold(ZpPoly::one(p), |acc, q| acc.mul(q));
    let (g, h) = lift_pair(f, &g0, &h0, p, k);
    let mut out = multifactor_lift(&g, left, p, k);
    out.extend(multifactor_lift(&h, right, p, k));
    out
}

/// Symmetric representative of every coefficient in `(-m/2, m/2]`.
pub(crate) fn symmetric(f: &Poly, m: &BigInt) -> Poly {
    let half = m >> 1u32;
    Poly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}
