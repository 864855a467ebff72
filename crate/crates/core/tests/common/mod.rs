#![allow(dead_code)]

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;

use higman_core::Poly;

/// Relative tolerance for numeric root comparisons.
pub const ROOT_TOL: f64 = 1e-6;

/// Degree exactly `deg`, coefficients uniform on `[-h, h]`, leading and
/// constant coefficients nonzero.
pub fn random_poly<R: Rng>(rng: &mut R, deg: usize, h: i64) -> Poly {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-h..=h)).collect();
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-h..=h);
    }
    while c[0] == 0 {
        c[0] = rng.gen_range(-h..=h);
    }
    Poly::from_i64s(&c)
}

pub fn random_monic<R: Rng>(rng: &mut R, deg: usize, h: i64) -> Poly {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-h..=h)).collect();
    while c.first() == Some(&0) {
        c[0] = rng.gen_range(-h..=h);
    }
    c.push(1);
    Poly::from_i64s(&c)
}

fn to_f64(p: &Poly) -> Vec<f64> {
    p.coeffs().iter().map(|c| c.to_f64().expect("finite")).collect()
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        d = d * z + v;
        v = v * z + a;
    }
    (v, d)
}

/// All complex roots by Aberth iteration with Newton polishing.
pub fn roots(p: &Poly) -> Vec<Complex64> {
    let c = to_f64(p);
    let n = c.len() - 1;
    let lc = c[n].abs();
    let radius = 1.0 + c[..n].iter().map(|a| a.abs() / lc).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (v, d) = horner(&c, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = ratio / (1.0 - ratio * s);
            z[k] -= step;
            moved = moved.max(step.norm() / z[k].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = horner(&c, *zk);
            if d.norm() > 0.0 {
                *zk -= v / d;
            }
        }
    }
    z
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= ROOT_TOL * b.norm().max(1.0)
}

/// Whether a perfect matching pairs every `a` with a `b` within tolerance.
pub fn multisets_match(a: &[Complex64], b: &[Complex64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let adj: Vec<Vec<usize>> = a
        .iter()
        .map(|&x| (0..b.len()).filter(|&j| close(x, b[j])).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; b.len()];
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    (0..a.len()).all(|i| augment(i, &adj, &mut vec![false; b.len()], &mut owner))
}
