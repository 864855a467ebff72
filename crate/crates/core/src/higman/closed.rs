//! Partial sums, powerful support, closed divisors and the map Δ.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorz::modp::ZpPoly;
use crate::factorz::{factor, is_powerful, PolyFactorization};
use crate::polycore::{compose_mul, poly_gcd, resultant, Poly};

/// Entry `i` collects the terms `b_j x^j` of `fbar` with `j ≡ i (mod n)`.
pub fn partial_sums(fbar: &Poly, n: usize) -> Result<Vec<Poly>> {
    if n < 2 {
        return Err(Error::domain("partial_sums", "n must be at least 2"));
    }
    let mut parts = vec![Vec::new(); n];
    for (j, c) in fbar.coeffs().iter().enumerate() {
        let part = &mut parts[j % n];
        part.resize(j + 1, num_bigint::BigInt::default());
        part[j] = c.clone();
    }
    Ok(parts.into_iter().map(Poly::new).collect())
}

/// Gcd of the partial sums.
pub fn fbar_n(fbar: &Poly, n: usize) -> Result<Poly> {
    let parts = partial_sums(fbar, n)?;
    let mut g = Poly::zero();
    for p in parts.iter().filter(|p| !p.is_zero()) {
        g = if g.is_zero() {
            p.clone().normalize_sign()
        } else {
            poly_gcd(&g, p)?
        };
    }
    Ok(g)
}

/// Indices of the factors occurring in some nonconstant powerful divisor.
pub fn powerful_support(fac: &PolyFactorization) -> BTreeSet<usize> {
    let mut support = BTreeSet::new();
    let k = fac.factors.len();
    let mut exps = vec![0u32; k];
    // odometer over all exponent vectors 0 <= e_i <= mult_i
    loop {
        let mut i = 0;
        while i < k && exps[i] == fac.factors[i].1 {
            exps[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        exps[i] += 1;
        let used: Vec<usize> = (0..k).filter(|&t| exps[t] > 0).collect();
        if used.iter().all(|t| support.contains(t)) {
            continue;
        }
        let prod: Poly = used
            .iter()
            .map(|&t| fac.factors[t].0.pow(exps[t]))
            .product();
        if is_powerful(&prod).expect("nonzero product") {
            support.extend(used);
        }
    }
    support
}

/// A closed divisor given by the factor indices it contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedSubset {
    pub indices: Vec<usize>,
    pub product: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedDivisorSet {
    pub base: PolyFactorization,
    pub forced_support: Vec<usize>,
    pub closed_subsets: Vec<ClosedSubset>,
    pub gcd_product: Poly,
}

/// For factor pairs `i <= j`, the bitmask of factors `r` sharing a root with
/// `compose_mul(q_i, q_j)`.
const HIT_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// `Res_y(f(y), y^n g(x/y))` reduced mod `p`, for `p` not dividing the
/// leading or constant coefficients, by interpolation at `0..=mn`.
fn composed_mod(f: &Poly, g: &Poly, p: u64) -> ZpPoly {
    let (m, n) = (f.deg(), g.deg());
    let fp = ZpPoly::from_poly(f, p);
    let gc: Vec<u64> = ZpPoly::from_poly(g, p).coeffs().to_vec();
    let gj = |j: usize| gc.get(j).copied().unwrap_or(0);
    let big_n = m * n;
    let mut coef: Vec<u64> = (0..=big_n as u64)
        .map(|t| {
            let mut col = vec![0u64; n + 1];
            let mut tp = 1u64;
            for j in 0..=n {
                col[n - j] = gj(j) * tp % p;
                tp = tp * t % p;
            }
            fp.resultant(&ZpPoly::new(p, col))
        })
        .collect();
    let unit = ZpPoly::one(p);
    for k in 1..=big_n {
        let inv_k = unit.inv(k as u64 % p);
        for i in (k..=big_n).rev() {
            coef[i] = (coef[i] + p - coef[i - 1]) % p * inv_k % p;
        }
    }
    let mut acc = ZpPoly::new(p, vec![coef[big_n]]);
    for k in (0..big_n).rev() {
        acc = acc.mul(&ZpPoly::new(p, vec![p - k as u64 % p, 1])).add(&ZpPoly::new(p, vec![coef[k]]));
    }
    acc
}

struct ProductHits {
    k: usize,
    hits: Vec<u64>,
}

impl ProductHits {
    fn new(fac: &PolyFactorization) -> Result<Self> {
        let qs: Vec<&Poly> = fac.distinct().collect();
        let k = qs.len();
        if k > 64 {
            return Err(Error::domain("closed_divisors", "more than 64 distinct factors"));
        }
        let lcs = qs.iter().fold(BigInt::one(), |acc, q| acc * q.lc() * q.constant_term());
        let p = HIT_PRIMES
            .iter()
            .copied()
            .find(|&p| !(&lcs % BigInt::from(p)).is_zero());
        let mut hits = vec![0u64; k * k];
        for i in 0..k {
            for j in i..k {
                let modular = p.map(|p| (p, composed_mod(qs[i], qs[j], p)));
                let mut exact: Option<Poly> = None;
                let mut mask = 0u64;
                for (r, q) in qs.iter().enumerate() {
                    // a nonzero resultant mod p is nonzero over Z
                    if let Some((p, c)) = &modular {
                        if c.resultant(&ZpPoly::from_poly(q, *p)) != 0 {
                            continue;
                        }
                    }
                    if exact.is_none() {
                        exact = Some(compose_mul(qs[i], qs[j])?);
                    }
                    if resultant(exact.as_ref().expect("computed"), q)?.is_zero() {
                        mask |= 1 << r;
                    }
                }
                hits[i * k + j] = mask;
                hits[j * k + i] = mask;
            }
        }
        Ok(ProductHits { k, hits })
    }

    fn get(&self, i: usize, j: usize) -> u64 {
        self.hits[i * self.k + j]
    }

    fn is_closed(&self, set: u64) -> bool {
        (0..self.k).filter(|&i| set >> i & 1 == 1).all(|i| {
            (i..self.k)
                .filter(|&j| set >> j & 1 == 1)
                .all(|j| self.get(i, j) & !set == 0)
        })
    }

    /// Least closed set containing `seed`.
    fn closure(&self, seed: u64) -> u64 {
        let mut set = seed;
        loop {
            let mut next = set;
            for i in (0..self.k).filter(|&i| set >> i & 1 == 1) {
                for j in (i..self.k).filter(|&j| set >> j & 1 == 1) {
                    next |= self.get(i, j);
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    }
}

fn mask_of(indices: impl IntoIterator<Item = usize>) -> u64 {
    indices.into_iter().fold(0, |m, i| m | 1 << i)
}

fn product_of(fac: &PolyFactorization, set: u64) -> Poly {
    fac.factors
        .iter()
        .enumerate()
        .filter(|(i, _)| set >> i & 1 == 1)
        .map(|(_, (q, e))| q.pow(*e))
        .product()
}

fn check_constant_term(fbar: &Poly) -> Result<()> {
    if fbar.is_zero() {
        return Err(Error::ZeroPolynomial("closed_divisors"));
    }
    if !fbar.is_constant() && fbar.constant_term().bits() == 0 {
        return Err(Error::domain("closed_divisors", "zero constant term"));
    }
    Ok(())
}

/// Every closed divisor of `fbar` (factor subsets with full multiplicity) and
/// their gcd. Enumeration is exponential in the number of unforced factors.
pub fn closed_divisors(fbar: &Poly) -> Result<ClosedDivisorSet> {
    check_constant_term(fbar)?;
    let base = factor(fbar)?;
    let forced: Vec<usize> = powerful_support(&base).into_iter().collect();
    let hits = ProductHits::new(&base)?;
    let k = base.factors.len();
    let forced_mask = mask_of(forced.iter().copied());
    let free: Vec<usize> = (0..k).filter(|i| forced_mask >> i & 1 == 0).collect();
    if free.len() > 20 {
        return Err(Error::domain("closed_divisors", "too many unforced factors to enumerate"));
    }
    let mut closed_subsets = Vec::new();
    let mut common = u64::MAX;
    for choice in 0u64..1 << free.len() {
        let set = forced_mask | mask_of(free.iter().enumerate().filter(|(b, _)| choice >> b & 1 == 1).map(|(_, &i)| i));
        if hits.is_closed(set) {
            common &= set;
            closed_subsets.push(ClosedSubset {
                indices: (0..k).filter(|i| set >> i & 1 == 1).collect(),
                product: product_of(&base, set),
            });
        }
    }
    let content = Poly::constant(base.content.clone());
    let gcd_product = &content * &product_of(&base, common & mask_of(0..k));
    Ok(ClosedDivisorSet {
        base,
        forced_support: forced,
        closed_subsets,
        gcd_product,
    })
}

/// `gcd_product` of the closed divisors, computed as the least closed set
/// containing the powerful support.
pub(crate) fn fstar_of(fbar: &Poly, base: &PolyFactorization) -> Result<Poly> {
    check_constant_term(fbar)?;
    let hits = ProductHits::new(base)?;
    let set = hits.closure(mask_of(powerful_support(base)));
    Ok(&Poly::constant(base.content.clone()) * &product_of(base, set))
}

/// Deflation and `f_*` of a nonconstant polynomial.
pub(crate) struct Deflated {
    pub norm: usize,
    pub fbar: Poly,
    pub fstar: Poly,
}

pub(crate) fn deflate_and_reduce(f: &Poly) -> Result<Deflated> {
    let (norm, fbar) = f.deflate()?;
    let base = factor(&fbar)?;
    let fstar = fstar_of(&fbar, &base)?;
    Ok(Deflated { norm, fbar, fstar })
}

/// Δ(f) = f_*, with positive leading coefficient; constants map to themselves.
pub fn delta(f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("delta"));
    }
    if f.is_constant() {
        return Ok(f.clone());
    }
    if f.constant_term().bits() == 0 {
        return Err(Error::domain("delta", "zero constant term"));
    }
    Ok(deflate_and_reduce(f)?.fstar)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn modular_hits_match_exact_resultants() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut cases = vec![
            &(&p(&[1, 0, 3, 0, 1]) * &p(&[1, 0, 1])) * &p(&[2, 1]),
            &(&p(&[-5, 0, 0, 0, 1]) * &p(&[-2, 0, 1])) * &p(&[1, 1]),
            &(&p(&[-2, 0, 1]) * &p(&[-4, 1])) * &p(&[-2, 1]),
        ];
        for _ in 0..40 {
            let mut f = Poly::one();
            for _ in 0..rng.gen_range(1..=3) {
                let d = rng.gen_range(1..=3);
                let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-4..=4)).collect();
                c[0] = if c[0] == 0 { 2 } else { c[0] };
                c[d] = if c[d] == 0 { 1 } else { c[d] };
                f = &f * &p(&c);
            }
            cases.push(f);
        }
        for f in cases {
            let fac = factor(&f).unwrap();
            let hits = ProductHits::new(&fac).unwrap();
            let qs: Vec<&Poly> = fac.distinct().collect();
            for i in 0..qs.len() {
                for j in 0..qs.len() {
                    let prod = compose_mul(qs[i], qs[j]).unwrap();
                    let exact = (0..qs.len())
                        .filter(|&r| resultant(&prod, qs[r]).unwrap().is_zero())
                        .fold(0u64, |m, r| m | 1 << r);
                    assert_eq!(hits.get(i, j), exact, "{f}");
                }
            }
        }
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sums(&p(&[1, 1, 1]), 2).unwrap(), vec![p(&[1, 0, 1]), p(&[0, 1])]);
        assert_eq!(
            partial_sums(&p(&[72, -17, 1]), 2).unwrap(),
            vec![p(&[72, 0, 1]), p(&[0, -17])]
        );
        let parts = partial_sums(&p(&[3, 1, 4]), 5).unwrap();
        assert_eq!(parts.len(), 5);
        assert_eq!(parts[2], p(&[0, 0, 4]));
        assert!(parts[3].is_zero() && parts[4].is_zero());
        assert!(partial_sums(&p(&[1, 1]), 1).is_err());
    }

    #[test]
    fn fbar_n_examples() {
        assert_eq!(fbar_n(&p(&[1, 1, 1]), 2).unwrap(), Poly::one());
        let f = &(&p(&[-5, 0, 0, 0, 1]) * &p(&[-2, 0, 1])) * &p(&[1, 1]);
        assert_eq!(fbar_n(&f, 2).unwrap(), p(&[10, 0, -5, 0, -2, 0, 1]));
        assert_eq!(fbar_n(&p(&[6, 4, 2]), 3).unwrap(), p(&[2]));
    }

    #[test]
    fn powerful_support_examples() {
        let f = &(&p(&[1, 0, 3, 0, 1]) * &p(&[1, 0, 1])) * &p(&[2, 1]);
        let fac = factor(&f).unwrap();
        let support = powerful_support(&fac);
        let names: Vec<Poly> = support.iter().map(|&i| fac.factors[i].0.clone()).collect();
        assert_eq!(names, vec![p(&[1, 0, 1]), p(&[1, 0, 3, 0, 1])]);
        assert!(powerful_support(&factor(&p(&[1, 1, 1, 1, 1])).unwrap()).is_empty());
        let g = &p(&[-2, 0, 1]) * &p(&[-3, 0, 0, 1]);
        assert_eq!(powerful_support(&factor(&g).unwrap()).len(), 2);
    }

    #[test]
    fn powerful_support_sees_joint_products() {
        // (x + 1)(x^2 - x + 1) = x^3 + 1 is powerful while neither factor is
        let f = &p(&[1, 1]) * &p(&[1, -1, 1]);
        assert_eq!(powerful_support(&factor(&f).unwrap()).len(), 2);
    }

    #[test]
    fn closed_divisor_examples() {
        let phi5 = p(&[1, 1, 1, 1, 1]);
        let cd = closed_divisors(&phi5).unwrap();
        assert_eq!(cd.closed_subsets.len(), 2);
        assert_eq!(cd.gcd_product, Poly::one());

        let f = &p(&[1, 1, 1]) * &p(&[1, 0, 0, 1, 0, 0, 1]);
        let cd = closed_divisors(&f).unwrap();
        assert_eq!(cd.closed_subsets.len(), 1);
        assert_eq!(cd.gcd_product, f);

        let f = &p(&[-2, 0, 1]) * &p(&[1, 1]);
        let cd = closed_divisors(&f).unwrap();
        let products: Vec<Poly> = cd.closed_subsets.iter().map(|s| s.product.clone()).collect();
        assert_eq!(products, vec![p(&[-2, 0, 1]), f.clone()]);
        assert_eq!(cd.gcd_product, p(&[-2, 0, 1]));
        assert!(closed_divisors(&p(&[0, 1, 1])).is_err());
    }

    #[test]
    fn closure_matches_enumeration() {
        let cases = [
            &(&p(&[1, 0, 3, 0, 1]) * &p(&[1, 0, 1])) * &p(&[2, 1]),
            &p(&[2, 1]).pow(2) * &p(&[1, 1, 1]),
            &(&p(&[-1, 0, 1]).pow(1) * &p(&[1, 1, 1])) * &p(&[3, 5, 0, 1]),
            p(&[1, 1, 1, 1, 1, 1]),
        ];
        for f in cases {
            if f.constant_term().bits() == 0 {
                continue;
            }
            let cd = closed_divisors(&f).unwrap();
            assert_eq!(fstar_of(&f, &cd.base).unwrap(), cd.gcd_product);
        }
    }

    #[test]
    fn delta_examples() {
        let a = p(&[1, 0, 3, 0, 1]);
        let b = p(&[1, 0, 1]);
        let f = &(&a * &b) * &p(&[2, 1]);
        assert_eq!(delta(&f).unwrap(), &a * &b);
        assert_eq!(delta(&(&a * &b)).unwrap(), Poly::one());

        let g1 = &p(&[-5, 0, 0, 0, 1]) * &p(&[-2, 0, 1]);
        let g = &g1 * &p(&[1, 1]);
        assert_eq!(delta(&g).unwrap(), g1);
        assert_eq!(delta(&g1).unwrap(), p(&[-5, 0, 1]));
        assert_eq!(delta(&p(&[-5, 0, 1])).unwrap(), Poly::one());

        let h = &p(&[-2, 0, 1]) * &p(&[-3, 0, 0, 1]);
        assert_eq!(delta(&h).unwrap(), h);
        assert_eq!(delta(&p(&[7])).unwrap(), p(&[7]));
    }

    #[test]
    fn content_survives_delta() {
        assert_eq!(delta(&p(&[6, 6])).unwrap(), p(&[6]));
    }
}
