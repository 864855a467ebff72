//! Integer matrices, column Hermite and Smith normal forms, and minimal
//! multipliers into integer column lattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    /// Builds a matrix with the given columns; all columns share one length.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.entries[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of a non-square matrix");
        super::resultant::bareiss_det(self.rows, self.entries.clone())
    }

    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        // column dst -= q * column src
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.entries[i * self.cols + src].clone();
            if !s.is_zero() {
                self.entries[i * self.cols + dst] -= q * s;
            }
        }
    }

    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.entries[src * self.cols + j].clone();
            if !s.is_zero() {
                self.entries[dst * self.cols + j] -= q * s;
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.entries[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.entries[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    fn select_columns(&self, cols: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..cols {
                out.entries[i * cols + j] = self.get(i, j).clone();
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Column Hermite form `H = A U` with pivot positions `(row, col)`.
///
/// Rows are processed from the last to the first, so every entry below a
/// pivot is zero; pivots are positive and the entries left of a pivot in its
/// row lie in `[0, pivot)`. Nonzero columns come first.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: Option<IntMatrix>,
    pub pivots: Vec<(usize, usize)>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero columns of `H`, a basis of the column lattice.
    pub fn basis(&self) -> IntMatrix {
        self.h.select_columns(self.rank())
    }
}

pub fn column_hermite(a: &IntMatrix, track: bool) -> HermiteForm {
    let mut h = a.clone();
    let mut u = track.then(|| IntMatrix::identity(a.cols));
    let mut pivots = Vec::new();
    let mut col = 0;
    for row in (0..a.rows).rev() {
        if col == a.cols {
            break;
        }
        // Euclid across columns col.. until one nonzero remains in this row.
        loop {
            let mut best: Option<usize> = None;
            for j in col..a.cols {
                let v = h.get(row, j);
                if !v.is_zero() && best.is_none_or(|b| v.abs() < h.get(row, b).abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(col, b);
            if let Some(u) = u.as_mut() {
                u.swap_cols(col, b);
            }
            let pivot = h.get(row, col).clone();
            let mut done = true;
            for j in col + 1..a.cols {
                let v = h.get(row, j);
                if v.is_zero() {
                    continue;
                }
                let q = v.div_floor(&pivot);
                h.col_axpy(j, col, &q);
                if let Some(u) = u.as_mut() {
                    u.col_axpy(j, col, &q);
                }
                if !h.get(row, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(row, col).is_zero() {
            continue;
        }
        if h.get(row, col).is_negative() {
            h.negate_col(col);
            if let Some(u) = u.as_mut() {
                u.negate_col(col);
            }
        }
        let pivot = h.get(row, col).clone();
        for j in 0..col {
            let q = h.get(row, j).div_floor(&pivot);
            h.col_axpy(j, col, &q);
            if let Some(u) = u.as_mut() {
                u.col_axpy(j, col, &q);
            }
        }
        pivots.push((row, col));
        col += 1;
    }
    HermiteForm { h, u, pivots }
}

/// Smith form `S = P A Q` with divisor chain `d_1 | d_2 | ...` on the diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

pub fn smith(a: &IntMatrix) -> SmithForm {
    let mut s = a.clone();
    let mut p = IntMatrix::identity(a.rows);
    let mut q = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                let v = s.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < s.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap_rows(t, bi);
        p.swap_rows(t, bi);
        s.swap_cols(t, bj);
        q.swap_cols(t, bj);

        let pivot = s.get(t, t).clone();
        let mut clean = true;
        for i in t + 1..a.rows {
            let qv = s.get(i, t).div_floor(&pivot);
            s.row_axpy(i, t, &qv);
            p.row_axpy(i, t, &qv);
            if !s.get(i, t).is_zero() {
                clean = false;
            }
        }
        for j in t + 1..a.cols {
            let qv = s.get(t, j).div_floor(&pivot);
            s.col_axpy(j, t, &qv);
            q.col_axpy(j, t, &qv);
            if !s.get(t, j).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // pivot must divide the whole trailing block
        let mut offender = None;
        'scan: for i in t + 1..a.rows {
            for j in t + 1..a.cols {
                if !s.get(i, j).is_multiple_of(&pivot) {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            let one = -BigInt::one();
            s.row_axpy(t, i, &one);
            p.row_axpy(t, i, &one);
            continue;
        }
        if pivot.is_negative() {
            s.negate_row(t);
            p.negate_row(t);
        }
        t += 1;
    }
    SmithForm { s, p, q }
}

/// Column Hermite form (with transform) and Smith form of one matrix.
#[derive(Clone, Debug)]
pub struct NormalForms {
    pub hermite: HermiteForm,
    pub smith: SmithForm,
}

pub fn hermite_smith(a: &IntMatrix) -> NormalForms {
    NormalForms {
        hermite: column_hermite(a, true),
        smith: smith(a),
    }
}

/// Minimal `r >= 1` with `r v` in the integer column lattice of `a`.
///
/// The lattice is first reduced to its Hermite basis, whose Smith form
/// `P B Q = diag(d_i)` gives `r = lcm_i d_i / gcd(d_i, (P v)_i)`; rows of
/// `P v` past the rank must vanish, otherwise `v` is outside the rational
/// span.
pub fn minimal_multiplier(a: &IntMatrix, v: &[BigInt]) -> Result<BigInt> {
    assert_eq!(a.rows, v.len(), "dimension mismatch");
    let basis = column_hermite(a, false).basis();
    let sf = smith(&basis);
    let pv = sf.p.mul_vec(v);
    let diag = sf.diagonal();
    if pv[diag.len()..].iter().any(|x| !x.is_zero()) {
        return Err(Error::Infeasible);
    }
    let mut r = BigInt::one();
    for (d, x) in diag.iter().zip(&pv) {
        r = r.lcm(&(d / d.gcd(x)));
    }
    Ok(r)
}

/// Integer coefficients `c` with `a c = target`, if the target lies in the
/// column lattice.
pub fn solve_in_lattice(a: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    let hf = column_hermite(a, true);
    let mut residual = target.to_vec();
    let mut coords = vec![BigInt::zero(); a.cols];
    // pivot rows decrease with the column index: solve from the bottom up
    for &(row, col) in &hf.pivots {
        let pivot = hf.h.get(row, col);
        let (c, rem) = residual[row].div_rem(pivot);
        if !rem.is_zero() {
            return None;
        }
        for i in 0..a.rows {
            let hv = hf.h.get(i, col);
            if !hv.is_zero() {
                residual[i] -= &c * hv;
            }
        }
        coords[col] = c;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(hf.u.expect("tracked").mul_vec(&coords))
}
