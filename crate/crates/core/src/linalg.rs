//! Dense matrices over a [`Scalar`] and the handful of rank-revealing routines
//! the rest of the crate needs: reduced row echelon form, null spaces, and
//! linear solves with a uniqueness report.
//!
//! Rank decisions use a pivot threshold `tol` in floating mode and exact zero
//! tests in exact mode. Null-space bases come out in reduced echelon form, so
//! they depend only on the subspace and not on pivoting order.

use nalgebra::DMatrix;

use crate::scalar::{Scalar, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Mat {
            rows: n,
            cols,
            data,
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: S) {
        let k = i * self.cols + j;
        let cur = std::mem::replace(&mut self.data[k], S::zero());
        self.data[k] = cur + v;
    }

    pub fn mul(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!(
            self.cols, o.rows,
            "matrix product shape {}x{} * {}x{}",
            self.rows, self.cols, o.rows, o.cols
        );
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_at(i, j, a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape");
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "matrix difference shape"
        );
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &S) -> Mat<S> {
        let data = self.data.iter().map(|a| a.clone() * s.clone()).collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.modulus()).fold(0.0, f64::max)
    }

    /// Largest entrywise distance; `INFINITY` on shape mismatch.
    pub fn dist(&self, o: &Mat<S>) -> f64 {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| (a.clone() - b.clone()).modulus())
            .fold(0.0, f64::max)
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.data.iter().all(|a| a.negligible(tol))
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat<S> {
        Mat::from_fn(rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        })
    }

    pub fn to_c64(&self) -> Mat<C64> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.to_c64()).collect(),
        }
    }
}

/// Reduces `m` in place to reduced row echelon form and returns pivot columns.
/// Columns whose remaining entries are all below `tol` are zeroed.
pub fn rref<S: Scalar>(m: &mut Mat<S>, tol: f64) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best = r;
        let mut best_mod = -1.0;
        for i in r..rows {
            let v = m.at(i, c);
            if v.negligible(tol) {
                continue;
            }
            let md = v.modulus();
            if md > best_mod {
                best_mod = md;
                best = i;
            }
        }
        if best_mod < 0.0 {
            for i in r..rows {
                m.set(i, c, S::zero());
            }
            continue;
        }
        if best != r {
            for j in 0..cols {
                m.data.swap(best * cols + j, r * cols + j);
            }
        }
        let inv = S::one() / m.at(r, c).clone();
        for j in 0..cols {
            let v = m.at(r, j).clone() * inv.clone();
            m.set(r, j, v);
        }
        m.set(r, c, S::one());
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.at(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..cols {
                let p = m.at(r, j).clone();
                if p.is_zero() {
                    continue;
                }
                let v = m.at(i, j).clone() - f.clone() * p;
                m.set(i, j, v);
            }
            m.set(i, c, S::zero());
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : a x = 0}` as the columns of the returned `cols x k` matrix.
pub fn nullspace<S: Scalar>(a: &Mat<S>, tol: f64) -> Mat<S> {
    let mut m = a.clone();
    let pivots = rref(&mut m, tol);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Mat::zeros(a.cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        out.set(f, k, S::one());
        for (i, &p) in pivots.iter().enumerate() {
            out.set(p, k, -m.at(i, f).clone());
        }
    }
    out
}

/// Canonical basis (reduced echelon rows) of the row space of `a`.
pub fn row_basis<S: Scalar>(a: &Mat<S>, tol: f64) -> Mat<S> {
    let mut m = a.clone();
    let rank = rref(&mut m, tol).len();
    let keep: Vec<usize> = (0..rank).collect();
    let cols: Vec<usize> = (0..a.cols).collect();
    m.select(&keep, &cols)
}

pub fn rank<S: Scalar>(a: &Mat<S>, tol: f64) -> usize {
    let mut m = a.clone();
    rref(&mut m, tol).len()
}

/// Result of solving `a x = b`.
#[derive(Clone, Debug)]
pub struct Solution<S> {
    pub x: Mat<S>,
    /// Dimension of the solution space of the homogeneous system per column.
    pub nullity: usize,
    pub residual: f64,
}

/// Solves `a x = b`, taking free variables to be zero. Returns `None` when the
/// system is inconsistent beyond `tol`.
pub fn solve<S: Scalar>(a: &Mat<S>, b: &Mat<S>, tol: f64) -> Option<Solution<S>> {
    assert_eq!(a.rows, b.rows, "solve shape");
    let n = a.cols;
    let mut aug = Mat::zeros(a.rows, n + b.cols);
    for i in 0..a.rows {
        for j in 0..n {
            aug.set(i, j, a.at(i, j).clone());
        }
        for j in 0..b.cols {
            aug.set(i, n + j, b.at(i, j).clone());
        }
    }
    let pivots = rref(&mut aug, tol);
    let mut x = Mat::zeros(n, b.cols);
    let mut nullity = n;
    for (i, &p) in pivots.iter().enumerate() {
        if p >= n {
            break;
        }
        nullity -= 1;
        for j in 0..b.cols {
            x.set(p, j, aug.at(i, n + j).clone());
        }
    }
    let residual = a.mul(&x).dist(b);
    let ok = if S::EXACT {
        residual == 0.0
    } else {
        residual <= tol.max(1e-300) * (1.0 + b.max_abs())
    };
    ok.then_some(Solution {
        x,
        nullity,
        residual,
    })
}

/// Inverse of a square matrix, if it is invertible at tolerance `tol`.
pub fn inverse<S: Scalar>(a: &Mat<S>, tol: f64) -> Option<Mat<S>> {
    if a.rows != a.cols {
        return None;
    }
    let sol = solve(a, &Mat::identity(a.rows), tol)?;
    (sol.nullity == 0).then_some(sol.x)
}

/// Singular values of a complex matrix, largest first.
pub fn singular_values(a: &Mat<C64>) -> Vec<f64> {
    if a.rows == 0 || a.cols == 0 {
        return Vec::new();
    }
    let m = DMatrix::from_row_slice(a.rows, a.cols, &a.data);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    sv
}
