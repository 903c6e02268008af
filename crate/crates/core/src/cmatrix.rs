// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrices.
//!
//! Every state, observable and operator in the crate is a [`ComplexMatrix`].
//! Dimensions stay small (a few dozen at most), so storage is a flat
//! row-major `Vec` and all products are the textbook triple loop.
//!
//! Shape errors are reported through [`Error::DimensionMismatch`] rather
//! than panics, since shapes frequently come from user input.

use std::fmt;
use std::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &self.data[r * self.cols + c]
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, rejecting bad lengths and
    /// non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyShape { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::BadLength {
                rows,
                cols,
                len: data.len(),
            });
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::BadLength {
                rows: nrows,
                cols: ncols,
                len: bad.len(),
            });
        }
        Self::new(nrows, ncols, rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![ONE; n])
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (k, &z) in diag.iter().enumerate() {
            m.data[k * n + k] = z;
        }
        m
    }

    /// A column vector.
    pub fn column(entries: &[C64]) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    /// Standard basis column `e_k` of length `n`.
    pub fn unit_column(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n, 1);
        v.data[k] = ONE;
        v
    }

    /// Matrix with a single unit entry at `(r, c)`.
    pub fn unit(rows: usize, cols: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.data[r * cols + c] = ONE;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn set(&mut self, r: usize, c: usize, z: C64) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        self.data[r * self.cols + c] = z;
    }

    pub fn column_at(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn diagonal_entries(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols))
            .map(|k| self[(k, k)])
            .collect()
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Product of a chain of matrices, left to right.
    pub fn mul_chain(factors: &[&Self]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .expect("mul_chain needs at least one factor");
        rest.iter().try_fold((*first).clone(), |acc, m| acc.mul(m))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        self.diagonal_entries().into_iter().sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `true` iff the Frobenius distance is at most `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> Result<bool> {
        self.same_shape(other, "approx_eq")?;
        Ok(self.distance(other) <= tol)
    }

    /// Frobenius distance; panics on shape mismatch.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "distance: shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        self.zip_with(&adj, |a, b| (a + b) * 0.5)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.distance(&self.adjoint()) <= tol
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square()?;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .unwrap_or(col);
            if a[(pivot, col)].norm() <= scale * 1e-14 {
                return Err(Error::Singular);
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].inv();
            for c in 0..n {
                a.data[col * n + c] *= p;
                inv.data[col * n + c] *= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == ZERO {
                    continue;
                }
                for c in 0..n {
                    let ac = a.data[col * n + c];
                    let ic = inv.data[col * n + c];
                    a.data[r * n + c] -= f * ac;
                    inv.data[r * n + c] -= f * ic;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        for c in 0..self.cols {
            self.data.swap(x * self.cols + c, y * self.cols + c);
        }
    }

    /// Columns `cols` of `self` gathered into a new matrix.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.data[r * cols.len() + j] = self[(r, c)];
            }
        }
        out
    }

    /// `[self; other]`, stacked vertically.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// `[self other]`, stacked horizontally.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            data.extend_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        Ok(Self {
            rows: self.rows,
            cols,
            data,
        })
    }
}

/// `a·b − b·a` for square matrices of equal dimension.
///
/// Both operands are first shifted by the mean of their diagonal. The shift
/// is a multiple of the identity and leaves the commutator unchanged, but it
/// avoids cancellation when the operands are close to `c·I`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    b.require_square()?;
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "commutator",
            left: a.shape(),
            right: b.shape(),
        });
    }
    if n == 0 {
        return Ok(a.clone());
    }
    let shifted = |m: &ComplexMatrix| {
        let mu = m.trace() / n as f64;
        let mut out = m.clone();
        for i in 0..n {
            out.set(i, i, m[(i, i)] - mu);
        }
        out
    };
    let (a, b) = (shifted(a), shifted(b));
    a.mul(&b)?.sub(&b.mul(&a)?)
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, ordered like `values`.
    pub vectors: ComplexMatrix,
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Only the Hermitian part of `m` is used. Each rotation first removes the
/// phase of the pivot `a_pq`, then applies the real symmetric Jacobi
/// rotation that zeroes it.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = m.require_square()?;
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= scale * 1e-16 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= scale * 1e-18 {
                    continue;
                }
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = diag(1, conj(phase)) · [[c, s], [-s, c]]
                let g_pp = C64::new(c, 0.0);
                let g_pq = C64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;

                let g = [g_pp, g_pq, g_qp, g_qq];
                rotate_columns(&mut a, p, q, g);
                rotate_rows(&mut a, p, q, g);
                rotate_columns(&mut v, p, q, g);
                a.set(p, q, ZERO);
                a.set(q, p, ZERO);
                a.set(p, p, C64::new(a[(p, p)].re, 0.0));
                a.set(q, q, C64::new(a[(q, q)].re, 0.0));
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    Ok(HermitianEigen {
        values: order.iter().map(|&k| a[(k, k)].re).collect(),
        vectors: v.select_columns(&order),
    })
}

// M ← M·G on columns p, q.
fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, [gpp, gpq, gqp, gqq]: [C64; 4]) {
    for k in 0..m.rows {
        let mp = m[(k, p)];
        let mq = m[(k, q)];
        m.set(k, p, mp * gpp + mq * gqp);
        m.set(k, q, mp * gpq + mq * gqq);
    }
}

// M ← G†·M on rows p, q.
fn rotate_rows(m: &mut ComplexMatrix, p: usize, q: usize, [gpp, gpq, gqp, gqq]: [C64; 4]) {
    for k in 0..m.cols {
        let mp = m[(p, k)];
        let mq = m[(q, k)];
        m.set(p, k, gpp.conj() * mp + gqp.conj() * mq);
        m.set(q, k, gpq.conj() * mp + gqq.conj() * mq);
    }
}

/// Thin singular value decomposition `m = U·diag(σ)·V†`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    /// Descending.
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    let dm = nalgebra::DMatrix::<C64>::from_row_slice(m.rows, m.cols, &m.data);
    let decomposition = dm.svd(true, true);
    let (u, v_t) = match (decomposition.u, decomposition.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => return Err(Error::InvalidParameter("svd failed to converge".into())),
    };
    let sv: Vec<f64> = decomposition.singular_values.iter().copied().collect();

    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&x, &y| sv[y].total_cmp(&sv[x]));

    let k = sv.len();
    let mut u_out = ComplexMatrix::zeros(m.rows, k);
    let mut v_out = ComplexMatrix::zeros(m.cols, k);
    for (j, &src) in order.iter().enumerate() {
        for r in 0..m.rows {
            u_out.set(r, j, u[(r, src)]);
        }
        for r in 0..m.cols {
            v_out.set(r, j, v_t[(src, r)].conj());
        }
    }
    Ok(Svd {
        u: u_out,
        singular_values: order.iter().map(|&j| sv[j]).collect(),
        v: v_out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap()
    }

    #[test]
    fn commutator_of_near_scalar_matrices_keeps_precision() {
        // a = 1 + εσx, b = 1 + εσy: [a, b] = 2iε²σz exactly.
        let eps = 1e-9;
        let one = ComplexMatrix::identity(2);
        let a = one.add(&sigma_x().scale_real(eps)).unwrap();
        let b = one.add(&sigma_y().scale_real(eps)).unwrap();
        let k = commutator(&a, &b).unwrap();
        let expected =
            ComplexMatrix::diagonal(&[c(0.0, 2.0 * eps * eps), c(0.0, -2.0 * eps * eps)]);
        assert!(k.distance(&expected) <= 1e-12 * eps * eps);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![ONE; 3]),
            Err(Error::BadLength { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 2, vec![ONE, c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(
            ComplexMatrix::new(0, 2, vec![]),
            Err(Error::EmptyShape { .. })
        ));
    }

    #[test]
    fn mul_examples() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(-3.0, 0.5)],
            vec![c(0.0, 1.0), c(4.0, -1.0)],
        ])
        .unwrap();
        assert_eq!(ComplexMatrix::identity(2).mul(&m).unwrap(), m);
        assert_eq!(
            sigma_x().mul(&sigma_x()).unwrap(),
            ComplexMatrix::identity(2)
        );
    }

    #[test]
    fn mul_shape_error_names_both_shapes() {
        let err = ComplexMatrix::zeros(2, 3)
            .mul(&ComplexMatrix::zeros(2, 3))
            .unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                op: "mul",
                left: (2, 3),
                right: (2, 3)
            }
        );
        assert!(err.to_string().contains("(2, 3)"));
    }

    #[test]
    fn adjoint_examples() {
        let m = ComplexMatrix::from_rows(&[vec![I]]).unwrap();
        assert_eq!(m.adjoint()[(0, 0)], -I);
        let h = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, -1.0)],
            vec![c(1.0, 1.0), c(-1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(h.adjoint(), h);
        let g = ComplexMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(3.0, 4.0)],
            vec![c(5.0, 6.0), c(7.0, 8.0)],
        ])
        .unwrap();
        assert_eq!(g.adjoint().adjoint(), g);
    }

    #[test]
    fn commutator_of_pauli_pair() {
        // Oracle: σx·σy = iσz and σy·σx = −iσz, so the commutator is 2iσz.
        let expected = ComplexMatrix::diagonal(&[c(0.0, 2.0), c(0.0, -2.0)]);
        assert_eq!(commutator(&sigma_x(), &sigma_y()).unwrap(), expected);
        assert_eq!(
            commutator(&sigma_x(), &sigma_x()).unwrap(),
            ComplexMatrix::zeros(2, 2)
        );
        assert_eq!(
            commutator(&sigma_y(), &ComplexMatrix::identity(2)).unwrap(),
            ComplexMatrix::zeros(2, 2)
        );
    }

    #[test]
    fn commutator_shape_errors() {
        assert!(matches!(
            commutator(&ComplexMatrix::zeros(2, 3), &ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            commutator(&ComplexMatrix::zeros(2, 2), &ComplexMatrix::zeros(3, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(ComplexMatrix::zeros(3, 3).frobenius_norm(), 0.0);
        assert!((ComplexMatrix::identity(2).frobenius_norm() - 2f64.sqrt()).abs() < 1e-15);
        let k = ComplexMatrix::diagonal(&[c(0.0, 2.0), c(0.0, -2.0)]);
        // |2i|² + |−2i|² = 8
        assert!((k.frobenius_norm() - 8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn approx_eq_examples() {
        let m = sigma_y();
        assert!(m.approx_eq(&m, 0.0).unwrap());
        assert!(!ComplexMatrix::identity(2)
            .approx_eq(&ComplexMatrix::zeros(2, 2), 1e-12)
            .unwrap());
        let nudged = m
            .add(&ComplexMatrix::identity(2).scale_real(1e-15))
            .unwrap();
        assert!(m.approx_eq(&nudged, 1e-12).unwrap());
        assert!(m.approx_eq(&ComplexMatrix::zeros(3, 3), 1.0).is_err());
    }

    #[test]
    fn inverse_round_trip_and_singular() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(2.0, 1.0), c(1.0, 0.0)],
            vec![c(1.0, -1.0), c(0.5, 0.0), c(0.0, 3.0)],
            vec![c(2.0, 0.0), c(0.0, 0.0), c(1.0, 1.0)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m
            .mul(&inv)
            .unwrap()
            .approx_eq(&ComplexMatrix::identity(3), 1e-13)
            .unwrap());
        let singular = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(singular.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn jacobi_recovers_known_spectrum() {
        // σx + σy has eigenvalues ±√2.
        let m = sigma_x().add(&sigma_y()).unwrap();
        let eig = hermitian_eigen(&m).unwrap();
        assert!((eig.values[0] + 2f64.sqrt()).abs() < 1e-14);
        assert!((eig.values[1] - 2f64.sqrt()).abs() < 1e-14);
        let recon = ComplexMatrix::mul_chain(&[
            &eig.vectors,
            &ComplexMatrix::diagonal(&eig.values.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>()),
            &eig.vectors.adjoint(),
        ])
        .unwrap();
        assert!(recon.approx_eq(&m, 1e-13).unwrap());
    }

    #[test]
    fn svd_reconstructs_rectangular_input() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.5), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(2.0, 0.0)],
            vec![c(0.0, -1.0), c(1.0, 1.0)],
        ])
        .unwrap();
        let s = svd(&m).unwrap();
        assert!(s.singular_values[0] >= s.singular_values[1]);
        let sigma = ComplexMatrix::diagonal(
            &s.singular_values
                .iter()
                .map(|&x| c(x, 0.0))
                .collect::<Vec<_>>(),
        );
        let recon = ComplexMatrix::mul_chain(&[&s.u, &sigma, &s.v.adjoint()]).unwrap();
        assert!(recon.approx_eq(&m, 1e-13).unwrap());
    }
}
