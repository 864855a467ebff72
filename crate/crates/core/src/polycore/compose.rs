//! Composed products: polynomials whose roots are products of roots, or
//! powers of roots, of given polynomials.
//!
//! Both are bivariate resultants `Res_y(f(y), G(x, y))`. The Sylvester
//! determinant in `Z[x]` is evaluated at consecutive integers and
//! reassembled by Newton interpolation; forward differences of an integer
//! polynomial at consecutive integers are divisible by `k!`, so every step
//! stays in `Z`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::poly::Poly;
use super::resultant::resultant_coeffs;
use crate::error::{Error, Result};

/// Interpolates the integer polynomial of degree at most `degree` whose value
/// at `x` is `eval(x)`.
fn interpolate<F>(degree: usize, eval: F) -> Poly
where
    F: Fn(&BigInt) -> BigInt + Sync,
{
    let start = -(BigInt::from(degree / 2));
    let points: Vec<BigInt> = (0..=degree).map(|k| &start + BigInt::from(k)).collect();
    let mut diffs: Vec<BigInt> = if degree >= 8 {
        points.par_iter().map(&eval).collect()
    } else {
        points.iter().map(&eval).collect()
    };
    // Newton coefficients c_k = Delta^k v_0 / k!
    let mut newton = Vec::with_capacity(degree + 1);
    let mut factorial = BigInt::one();
    for k in 0..=degree {
        if k > 0 {
            factorial *= BigInt::from(k);
        }
        let (q, r) = num_integer::Integer::div_rem(&diffs[0], &factorial);
        debug_assert!(r.is_zero(), "forward difference not divisible by k!");
        newton.push(q);
        for i in 0..diffs.len() - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
    }
    let mut acc = Poly::constant(newton[degree].clone());
    for k in (0..degree).rev() {
        let node = Poly::linear_root(&start + BigInt::from(k));
        acc = &(&acc * &node) + &Poly::constant(newton[k].clone());
    }
    acc
}

/// Polynomial whose roots are the products `λμ` over roots `λ` of `f` and
/// `μ` of `g`, with multiplicity. Returned primitive with positive leading
/// coefficient.
pub fn compose_mul(f: &Poly, g: &Poly) -> Result<Poly> {
    check_composable("compose_mul", f)?;
    check_composable("compose_mul", g)?;
    Ok(compose_mul_raw(f, g).primitive())
}

/// `Res_y(f(y), y^n g(x/y))` with `n = deg g`, unnormalized.
pub(crate) fn compose_mul_raw(f: &Poly, g: &Poly) -> Poly {
    let m = f.deg();
    let n = g.deg();
    let fc = f.coeffs().to_vec();
    let gc = g.coeffs();
    interpolate(m * n, |x0| {
        // coefficient of y^(n-j) is g_j x0^j
        let mut col = vec![BigInt::zero(); n + 1];
        let mut xp = BigInt::one();
        for (j, gj) in gc.iter().enumerate() {
            col[n - j] = gj * &xp;
            xp *= x0;
        }
        resultant_coeffs(&fc, &col)
    })
}

/// `Res_y(f(y), x - y^i)`: roots `λ^i` over roots `λ` of `f`, primitive.
pub fn compose_pow_pre(f: &Poly, i: usize) -> Result<Poly> {
    if f.is_constant() {
        return Err(Error::domain("compose_pow", "constant input"));
    }
    if i == 0 {
        return Err(Error::domain("compose_pow", "exponent must be positive"));
    }
    if i == 1 {
        return Ok(f.primitive());
    }
    let fc = f.coeffs().to_vec();
    let raw = interpolate(f.deg(), |x0| {
        let mut col = vec![BigInt::zero(); i + 1];
        col[0] = x0.clone();
        col[i] = -BigInt::one();
        resultant_coeffs(&fc, &col)
    });
    Ok(raw.primitive())
}

/// `compose_pow_pre(f, i)` inflated by `i`: roots `ωλ` with `ω^i = 1`.
pub fn compose_pow(f: &Poly, i: usize) -> Result<Poly> {
    Ok(compose_pow_pre(f, i)?.inflate(i))
}

fn check_composable(op: &'static str, f: &Poly) -> Result<()> {
    if f.is_constant() {
        return Err(Error::domain(op, "constant input"));
    }
    if f.constant_term().is_zero() {
        return Err(Error::domain(op, "zero constant term"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::resultant::{bareiss_det, sylvester};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    /// Independent route: Bareiss on the Sylvester matrix with entries in Z[x].
    fn compose_mul_symbolic(f: &Poly, g: &Poly) -> Poly {
        let n = g.deg();
        let fy: Vec<Poly> = f.coeffs().iter().map(|c| Poly::constant(c.clone())).collect();
        let mut gy = vec![Poly::zero(); n + 1];
        for (j, gj) in g.coeffs().iter().enumerate() {
            gy[n - j] = Poly::monomial(gj.clone(), j);
        }
        let (size, mat) = sylvester(&fy, &gy);
        bareiss_det(size, mat).primitive()
    }

    #[test]
    fn compose_mul_examples() {
        assert_eq!(compose_mul(&p(&[-2, 1]), &p(&[-3, 1])).unwrap(), p(&[-6, 1]));
        assert_eq!(
            compose_mul(&p(&[-2, 0, 1]), &p(&[-2, 0, 1])).unwrap(),
            p(&[-4, 0, 1]).pow(2)
        );
        let phi3 = p(&[1, 1, 1]);
        assert_eq!(
            compose_mul(&phi3, &phi3).unwrap(),
            &p(&[-1, 1]).pow(2) * &phi3
        );
        assert!(compose_mul(&p(&[5]), &phi3).is_err());
        assert!(compose_mul(&p(&[0, 1, 1]), &phi3).is_err());
    }

    #[test]
    fn interpolation_agrees_with_symbolic_determinant() {
        let cases = [
            (p(&[3, -1, 2]), p(&[-5, 0, 0, 1])),
            (p(&[1, 1, 0, 4]), p(&[2, 3])),
            (p(&[-7, 2, 0, 0, 1]), p(&[1, 0, 1])),
            (p(&[6, 5, 1]), p(&[6, 5, 1])),
        ];
        for (f, g) in cases {
            assert_eq!(compose_mul(&f, &g).unwrap(), compose_mul_symbolic(&f, &g));
        }
    }

    #[test]
    fn compose_mul_is_symmetric() {
        let f = p(&[2, -3, 0, 1]);
        let g = p(&[-1, 4, 3]);
        assert_eq!(compose_mul(&f, &g).unwrap(), compose_mul(&g, &f).unwrap());
    }

    #[test]
    fn non_monic_composed_product_leading_coefficient() {
        // roots 1/2 and 1/3 multiply to 1/6
        assert_eq!(compose_mul(&p(&[-1, 2]), &p(&[-1, 3])).unwrap(), p(&[-1, 6]));
    }

    #[test]
    fn compose_pow_examples() {
        assert_eq!(compose_pow_pre(&p(&[-2, 0, 1]), 2).unwrap(), p(&[-2, 1]).pow(2));
        assert_eq!(compose_pow_pre(&p(&[1, 0, 1]), 2).unwrap(), p(&[1, 1]).pow(2));
        let f = p(&[4, -2, 0, 3]);
        assert_eq!(compose_pow(&f, 1).unwrap(), f);
        assert_eq!(
            compose_pow(&p(&[-2, 1]), 2).unwrap(),
            p(&[-4, 0, 1])
        );
        // cubes of the roots of x^2 - x - 1
        assert_eq!(compose_pow_pre(&p(&[-1, -1, 1]), 3).unwrap(), p(&[-1, -4, 1]));
        assert!(compose_pow(&p(&[3]), 2).is_err());
    }
}
