//! Integral Bezout identities `s p + t q = Res(p, q)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::{resultant, Poly};

type QPoly = Vec<BigRational>;

fn trim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn to_q(p: &Poly) -> QPoly {
    p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") / &lb;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn to_integral(a: &QPoly) -> Option<Poly> {
    a.iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<BigInt>>>()
        .map(Poly::new)
}

/// `(s, t, Res(p, q))` with integer `s`, `t` and `s p + t q = Res(p, q)`.
pub(crate) fn resultant_bezout(p: &Poly, q: &Poly) -> Result<(Poly, Poly, BigInt)> {
    let res = resultant(p, q)?;
    if res.is_zero() {
        return Err(Error::domain("bezout", "polynomials share a root"));
    }
    // extended Euclid over Q on (p, q), tracking the coefficient of p
    let (mut r0, mut r1) = (to_q(p), to_q(q));
    let (mut s0, mut s1): (QPoly, QPoly) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (quo, rem) = q_divrem(&r0, &r1);
        let s2 = q_sub(&s0, &q_mul(&quo, &s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant g with s0 p = g mod q
    let scale = BigRational::from_integer(res.clone()) / &r0[0];
    let s_q: QPoly = s0.iter().map(|c| c * &scale).collect();
    let s = to_integral(&s_q).ok_or_else(|| Error::domain("bezout", "non-integral cofactor"))?;
    let rest = &Poly::constant(res.clone()) - &(&s * p);
    let t = rest
        .div_exact(q)
        .ok_or_else(|| Error::domain("bezout", "non-integral cofactor"))?;
    Ok((s, t, res))
}
