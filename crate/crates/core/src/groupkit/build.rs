//! Elementary abelian groups with matrix automorphisms, and split extensions
//! `(Z/p)^d ⋊ <M>` with their twisted automorphisms.

use num_traits::ToPrimitive;

use super::group::{Automorphism, Elem, FiniteGroup};
use crate::error::{Error, Result};
use crate::factorz::modp::is_prime_u64;
use crate::polycore::Poly;

/// Square matrix over `Z/p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    p: u64,
    d: usize,
    a: Vec<u64>,
}

impl ModMatrix {
    pub fn new(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::Group(format!("{p} is not prime")));
        }
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Group("matrix must be square and nonempty".into()));
        }
        let a = rows
            .iter()
            .flatten()
            .map(|&x| x.rem_euclid(p as i64) as u64)
            .collect();
        Ok(ModMatrix { p, d, a })
    }

    pub fn identity(p: u64, d: usize) -> Self {
        let mut a = vec![0; d * d];
        for i in 0..d {
            a[i * d + i] = 1 % p;
        }
        ModMatrix { p, d, a }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.d + j]
    }

    pub fn mul(&self, o: &ModMatrix) -> ModMatrix {
        let d = self.d;
        let mut a = vec![0u64; d * d];
        for i in 0..d {
            for j in 0..d {
                a[i * d + j] = (0..d).fold(0, |s, k| (s + self.get(i, k) * o.get(k, j)) % self.p);
            }
        }
        ModMatrix { p: self.p, d, a }
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.d)
            .map(|i| (0..self.d).fold(0, |s, k| (s + self.get(i, k) * v[k]) % self.p))
            .collect()
    }

    /// Determinant modulo `p` by Gaussian elimination.
    pub fn det(&self) -> u64 {
        let (p, d) = (self.p, self.d);
        let mut m = self.a.clone();
        let mut det = 1u64;
        for c in 0..d {
            let Some(r) = (c..d).find(|&r| m[r * d + c] != 0) else {
                return 0;
            };
            if r != c {
                for j in 0..d {
                    m.swap(r * d + j, c * d + j);
                }
                det = (p - det) % p;
            }
            let piv = m[c * d + c];
            det = det * piv % p;
            let inv = pow_mod(piv, p - 2, p);
            for r in c + 1..d {
                let f = m[r * d + c] * inv % p;
                for j in c..d {
                    m[r * d + j] = (m[r * d + j] + p * p - f * m[c * d + j]) % p;
                }
            }
        }
        det
    }

    /// Multiplicative order, at most `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let id = ModMatrix::identity(self.p, self.d);
        let mut x = self.clone();
        for k in 1..=limit {
            if x == id {
                return Some(k);
            }
            x = x.mul(self);
        }
        None
    }

    pub fn pow(&self, e: usize) -> ModMatrix {
        (0..e).fold(ModMatrix::identity(self.p, self.d), |acc, _| acc.mul(self))
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Companion matrix of a monic polynomial: `e_i -> e_{i+1}`, last column
/// the negated low coefficients.
pub fn companion_matrix(f: &Poly) -> Result<Vec<Vec<i64>>> {
    if f.is_constant() {
        return Err(Error::domain("companion_matrix", "constant input"));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.deg();
    let mut m = vec![vec![0i64; d]; d];
    for i in 1..d {
        m[i][i - 1] = 1;
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[d - 1] = -f
            .coeff(i)
            .to_i64()
            .ok_or_else(|| Error::domain("companion_matrix", "coefficient too large"))?;
    }
    Ok(m)
}

fn vector_index(v: &[u64], p: u64) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * p as usize + x as usize)
}

fn index_vector(mut i: usize, p: u64, d: usize) -> Vec<u64> {
    (0..d)
        .map(|_| {
            let x = (i % p as usize) as u64;
            i /= p as usize;
            x
        })
        .collect()
}

fn checked_size(p: u64, d: usize, factor: usize, cap: usize) -> Result<usize> {
    let mut n = factor;
    for _ in 0..d {
        n = n.checked_mul(p as usize).filter(|&n| n <= cap).ok_or_else(|| {
            Error::Group(format!("group order exceeds cap {cap}"))
        })?;
    }
    Ok(n)
}

fn vec_label(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// `(Z/p)^d` with the automorphism `v -> M v`.
pub fn build_elementary_abelian(p: u64, m: &[Vec<i64>], cap: usize) -> Result<(FiniteGroup, Automorphism)> {
    let mat = ModMatrix::new(p, m)?;
    if mat.det() == 0 {
        return Err(Error::Group(format!("matrix is singular modulo {p}")));
    }
    let d = mat.dim();
    let n = checked_size(p, d, 1, cap)?;
    let vecs: Vec<Vec<u64>> = (0..n).map(|i| index_vector(i, p, d)).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in &vecs {
        for b in &vecs {
            let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
            table.push(vector_index(&s, p) as Elem);
        }
    }
    let labels = vecs.iter().map(|v| vec_label(v)).collect();
    let g = FiniteGroup::from_table(n, table, Some(labels), cap)?;
    let map = vecs.iter().map(|v| vector_index(&mat.apply(v), p) as Elem).collect();
    let alpha = Automorphism::new(&g, map)?;
    Ok((g, alpha))
}

/// `(Z/p)^d ⋊ <M>` with `(v, k)(w, l) = (v + M^k w, k + l)`; element
/// `(v, k)` has index `k p^d + index(v)`.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: FiniteGroup,
    pub p: u64,
    pub matrix: ModMatrix,
    pub matrix_order: usize,
}

pub fn build_semidirect(p: u64, m: &[Vec<i64>], cap: usize) -> Result<Semidirect> {
    let mat = ModMatrix::new(p, m)?;
    if mat.det() == 0 {
        return Err(Error::Group(format!("matrix is singular modulo {p}")));
    }
    let d = mat.dim();
    let base = checked_size(p, d, 1, cap)?;
    let order = mat
        .order(cap)
        .ok_or_else(|| Error::Group("matrix order exceeds cap".into()))?;
    let n = checked_size(p, d, order, cap)?;
    let vecs: Vec<Vec<u64>> = (0..base).map(|i| index_vector(i, p, d)).collect();
    // action[k][w] = index of M^k w
    let mut action = Vec::with_capacity(order);
    let mut mk = ModMatrix::identity(p, d);
    for _ in 0..order {
        action.push(vecs.iter().map(|w| vector_index(&mk.apply(w), p)).collect::<Vec<_>>());
        mk = mk.mul(&mat);
    }
    let add = |a: usize, b: usize| -> usize {
        let s: Vec<u64> = vecs[a].iter().zip(&vecs[b]).map(|(x, y)| (x + y) % p).collect();
        vector_index(&s, p)
    };
    let mut table = vec![0 as Elem; n * n];
    for k in 0..order {
        for v in 0..base {
            let x = k * base + v;
            for l in 0..order {
                for w in 0..base {
                    let y = l * base + w;
                    let prod = ((k + l) % order) * base + add(v, action[k][w]);
                    table[x * n + y] = prod as Elem;
                }
            }
        }
    }
    let labels = (0..n)
        .map(|i| format!("{}·M^{}", vec_label(&vecs[i % base]), i / base))
        .collect();
    let group = FiniteGroup::from_table(n, table, Some(labels), cap)?;
    Ok(Semidirect {
        group,
        p,
        matrix: mat,
        matrix_order: order,
    })
}

impl Semidirect {
    /// `(v, k) -> (B v, j k)`, an automorphism when `B M B^-1 = M^j`.
    pub fn twisted_automorphism(&self, b: &[Vec<i64>], j: usize) -> Result<Automorphism> {
        let bm = ModMatrix::new(self.p, b)?;
        if bm.dim() != self.matrix.dim() || bm.det() == 0 {
            return Err(Error::Group("twist matrix must be invertible of matching size".into()));
        }
        let m = self.matrix_order;
        if num_integer::gcd(j % m, m) != 1 && m > 1 {
            return Err(Error::Group("twist exponent must be a unit".into()));
        }
        if bm.mul(&self.matrix) != self.matrix.pow(j % m).mul(&bm) {
            return Err(Error::Group("B M B^-1 must equal M^j".into()));
        }
        let d = self.matrix.dim();
        let base = self.group.order() / m;
        let map = (0..self.group.order())
            .map(|i| {
                let v = index_vector(i % base, self.p, d);
                let k = i / base;
                ((j * k % m) * base + vector_index(&bm.apply(&v), self.p)) as Elem
            })
            .collect();
        Automorphism::new(&self.group, map)
    }

    /// Fixed-point-free twists `(B, j)`, searched over all of `GL_d(p)` when
    /// `p^(d^2)` is at most `budget`.
    pub fn find_fixed_point_free_twist(&self, budget: usize) -> Option<(Vec<Vec<i64>>, usize, Automorphism)> {
        let d = self.matrix.dim();
        let p = self.p;
        let total = (p as usize).checked_pow((d * d) as u32)?;
        if total > budget {
            return None;
        }
        let m = self.matrix_order;
        for j in (1..=m).filter(|&j| m == 1 || num_integer::gcd(j, m) == 1) {
            // the quotient automorphism k -> j k must itself be fixed-point-free
            if m > 1 && (1..m).any(|k| j * k % m == k) {
                continue;
            }
            for code in 0..total {
                let entries = index_vector(code, p, d * d);
                let rows: Vec<Vec<i64>> = entries.chunks(d).map(|r| r.iter().map(|&x| x as i64).collect()).collect();
                let Ok(alpha) = self.twisted_automorphism(&rows, j % m.max(1)) else {
                    continue;
                };
                if super::group::is_fixed_point_free(&self.group, &alpha) {
                    return Some((rows, j, alpha));
                }
            }
        }
        None
    }
}
