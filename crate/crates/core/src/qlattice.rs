// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Orthogonal projectors as a lattice: meet, join, orthocomplement and the
//! distributive inequalities.
//!
//! ```text
//! (a ∧ b) ∨ (a ∧ c) ≤ a ∧ (b ∨ c)
//! a ∨ (b ∧ c) ≤ (a ∨ b) ∧ (a ∨ c)
//! ```
//!
//! Both hold in every orthocomplemented lattice and become equalities on
//! commuting (Boolean) families. Subspaces are computed with an SVD and a
//! fixed singular-value cutoff of `1e-10`.

use crate::cmatrix::{commutator, hermitian_eigen, svd, ComplexMatrix, C64};
use crate::error::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const IDEMPOTENT_TOL: f64 = 1e-10;
pub const RANK_CUTOFF: f64 = 1e-10;
pub const LATTICE_EQ_TOL: f64 = 1e-9;
pub const COMPATIBLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    mat: ComplexMatrix,
}

impl Projector {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let (rows, cols) = mat.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let asym = mat.sub(&mat.adjoint())?.max_abs();
        if asym > HERMITIAN_TOL {
            return Err(Error::NotAProjector(format!(
                "not Hermitian (max |P - P†| = {asym:e})"
            )));
        }
        let drift = mat.mul(&mat)?.distance(&mat);
        if drift > IDEMPOTENT_TOL {
            return Err(Error::NotAProjector(format!(
                "not idempotent (|P² - P| = {drift:e})"
            )));
        }
        Ok(Self { mat })
    }

    pub fn zero(d: usize) -> Self {
        Self {
            mat: ComplexMatrix::zeros(d, d),
        }
    }

    pub fn identity(d: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(d),
        }
    }

    /// Projector onto the span of `vectors` (any number, any linear
    /// dependence).
    pub fn from_vectors(d: usize, vectors: &[Vec<C64>]) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(d));
        }
        let mut cols = ComplexMatrix::zeros(d, vectors.len());
        for (k, v) in vectors.iter().enumerate() {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    op: "Projector::from_vectors",
                    left: (d, 1),
                    right: (v.len(), 1),
                });
            }
            for (r, &z) in v.iter().enumerate() {
                cols.set(r, k, z);
            }
        }
        spectral_round(&from_basis(&range_basis(&cols)?, d))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn rank(&self) -> usize {
        self.mat.trace().re.round().max(0.0) as usize
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.mat.distance(&other.mat)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && self.distance(other) <= tol
    }
}

fn same_dim(p: &Projector, q: &Projector, op: &'static str) -> Result<()> {
    if p.dim() == q.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            op,
            left: p.mat.shape(),
            right: q.mat.shape(),
        })
    }
}

/// Orthonormal basis (columns) of the column space of `m`.
fn range_basis(m: &ComplexMatrix) -> Result<Option<ComplexMatrix>> {
    let s = svd(m)?;
    let keep: Vec<usize> = (0..s.singular_values.len())
        .filter(|&k| s.singular_values[k] > RANK_CUTOFF)
        .collect();
    Ok((!keep.is_empty()).then(|| s.u.select_columns(&keep)))
}

/// Orthonormal basis (columns) of the null space of a tall `m`.
fn null_basis(m: &ComplexMatrix) -> Result<Option<ComplexMatrix>> {
    let s = svd(m)?;
    let keep: Vec<usize> = (0..s.singular_values.len())
        .filter(|&k| s.singular_values[k] <= RANK_CUTOFF)
        .collect();
    Ok((!keep.is_empty()).then(|| s.v.select_columns(&keep)))
}

fn from_basis(basis: &Option<ComplexMatrix>, d: usize) -> ComplexMatrix {
    match basis {
        Some(q) => q.mul(&q.adjoint()).expect("basis has d rows"),
        None => ComplexMatrix::zeros(d, d),
    }
}

/// Symmetrizes `m` and rounds its spectrum to {0, 1}.
fn spectral_round(m: &ComplexMatrix) -> Result<Projector> {
    let d = m.rows();
    let eig = hermitian_eigen(m)?;
    let keep: Vec<usize> = (0..d).filter(|&k| eig.values[k] > 0.5).collect();
    let basis = (!keep.is_empty()).then(|| eig.vectors.select_columns(&keep));
    Projector::new(from_basis(&basis, d).hermitian_part())
}

/// Projector onto `range(p) ∩ range(q)`.
pub fn meet(p: &Projector, q: &Projector) -> Result<Projector> {
    same_dim(p, q, "meet")?;
    let d = p.dim();
    let stacked = ortho(p).mat.vstack(&ortho(q).mat)?;
    spectral_round(&from_basis(&null_basis(&stacked)?, d))
}

/// Projector onto `range(p) + range(q)`.
pub fn join(p: &Projector, q: &Projector) -> Result<Projector> {
    same_dim(p, q, "join")?;
    let d = p.dim();
    let stacked = p.mat.hstack(&q.mat)?;
    spectral_round(&from_basis(&range_basis(&stacked)?, d))
}

/// `I − p`.
pub fn ortho(p: &Projector) -> Projector {
    Projector {
        mat: ComplexMatrix::identity(p.dim())
            .sub(&p.mat)
            .expect("same shape"),
    }
}

/// `p ≤ q`, i.e. `p ∧ q = p` to [`LATTICE_EQ_TOL`].
pub fn leq(p: &Projector, q: &Projector) -> Result<bool> {
    Ok(meet(p, q)?.approx_eq(p, LATTICE_EQ_TOL))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributivityReport {
    /// `a ∧ (b ∨ c)`.
    pub lhs_meet: Projector,
    /// `(a ∧ b) ∨ (a ∧ c)`.
    pub rhs_meet: Projector,
    /// `a ∨ (b ∧ c)`.
    pub lhs_join: Projector,
    /// `(a ∨ b) ∧ (a ∨ c)`.
    pub rhs_join: Projector,
    pub meet_equal: bool,
    pub join_equal: bool,
    pub inequality_holds: bool,
}

pub fn distributivity_check(
    a: &Projector,
    b: &Projector,
    c: &Projector,
) -> Result<DistributivityReport> {
    same_dim(a, b, "distributivity_check")?;
    same_dim(a, c, "distributivity_check")?;
    let lhs_meet = meet(a, &join(b, c)?)?;
    let rhs_meet = join(&meet(a, b)?, &meet(a, c)?)?;
    let lhs_join = join(a, &meet(b, c)?)?;
    let rhs_join = meet(&join(a, b)?, &join(a, c)?)?;
    let inequality_holds = leq(&rhs_meet, &lhs_meet)? && leq(&lhs_join, &rhs_join)?;
    Ok(DistributivityReport {
        meet_equal: lhs_meet.approx_eq(&rhs_meet, LATTICE_EQ_TOL),
        join_equal: lhs_join.approx_eq(&rhs_join, LATTICE_EQ_TOL),
        inequality_holds,
        lhs_meet,
        rhs_meet,
        lhs_join,
        rhs_join,
    })
}

/// `‖[p, q]‖ ≤ 1e-10`.
pub fn compatible(p: &Projector, q: &Projector) -> Result<bool> {
    same_dim(p, q, "compatible")?;
    Ok(commutator(&p.mat, &q.mat)?.frobenius_norm() <= COMPATIBLE_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelianCertificate {
    pub abelian: bool,
    /// Indices of the pair with the largest commutator norm; `None` for a
    /// single observable.
    pub worst_pair: Option<(usize, usize)>,
    pub worst_norm: f64,
}

pub fn abelian_certificate(observables: &[ComplexMatrix], tol: f64) -> Result<AbelianCertificate> {
    let first = observables.first().ok_or(Error::EmptyObservableList)?;
    first.require_square()?;
    let mut worst_pair = None;
    let mut worst_norm = 0.0;
    for (i, a) in observables.iter().enumerate() {
        for (j, b) in observables.iter().enumerate().skip(i + 1) {
            let norm = commutator(a, b)?.frobenius_norm();
            if worst_pair.is_none() || norm > worst_norm {
                worst_pair = Some((i, j));
                worst_norm = norm;
            }
        }
    }
    Ok(AbelianCertificate {
        abelian: worst_norm <= tol,
        worst_pair,
        worst_norm,
    })
}
