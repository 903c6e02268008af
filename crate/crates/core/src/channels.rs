// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Kraus channels in the Schrödinger and Heisenberg pictures.
//!
//! A channel acts on states as `ρ ↦ Σ E ρ E†` and on observables through
//! its dual `O ↦ Σ E† O E`; the two agree on every mean value
//! `Tr(E(ρ) O) = Tr(ρ Ẽ(O))`. Repeated application of the qubit amplitude
//! damping dual drives every observable towards `O₀₀ · I`, so any family of
//! observables ends up commuting.
//!
//! Channels are time-homogeneous: `n` steps mean `n` applications of the
//! same per-step channel. How the per-step probability `p` relates to a
//! physical interval is left to the caller.

use crate::cmatrix::{hermitian_eigen, ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Tolerance for the completeness relation `Σ E†E = I`.
pub const COMPLETENESS_TOL: f64 = 1e-12;
/// Tolerance for Hermiticity and unit trace of density matrices.
pub const DENSITY_TOL: f64 = 1e-12;
/// Smallest admissible eigenvalue of a density matrix.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

const HERMITIAN_INPUT_TOL: f64 = 1e-12;
const HERMITIAN_DRIFT_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Validates shapes and the completeness relation.
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyChannel)?;
        let dim = first.require_square()?;
        for e in &kraus {
            if e.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch {
                    op: "kraus operator",
                    left: (dim, dim),
                    right: e.shape(),
                });
            }
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for e in &kraus {
            sum = sum.add(&e.adjoint().mul(e)?)?;
        }
        let defect = sum.distance(&ComplexMatrix::identity(dim));
        if defect > COMPLETENESS_TOL {
            return Err(Error::IncompleteChannel(defect));
        }
        Ok(Self { dim, kraus })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            kraus: vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    fn check_operand(&self, m: &ComplexMatrix, op: &'static str) -> Result<()> {
        if m.shape() == (self.dim, self.dim) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op,
                left: (self.dim, self.dim),
                right: m.shape(),
            })
        }
    }

    /// `ρ ↦ Σ E ρ E†`. The output is revalidated as a density matrix, so a
    /// malformed channel surfaces as [`Error::InvalidDensity`].
    pub fn apply_schrodinger(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_operand(rho.matrix(), "apply_schrodinger")?;
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.kraus {
            out = out.add(&ComplexMatrix::mul_chain(&[e, rho.matrix(), &e.adjoint()])?)?;
        }
        DensityMatrix::new(out)
    }

    /// `O ↦ Σ E† O E`.
    ///
    /// The sum is evaluated as `μI + Σ E†(O − μI)E` with `μ` the mean of the
    /// diagonal of `O`; the two agree because the dual of a trace-preserving
    /// channel is unital. Near-scalar observables, the usual fixed points,
    /// then keep their small non-scalar part to relative precision instead
    /// of losing it to cancellation against `μ`.
    ///
    /// Hermitian inputs come back exactly Hermitian: if roundoff pushes the
    /// output more than 1e-14 away from its adjoint it is replaced by its
    /// Hermitian part.
    pub fn apply_heisenberg(&self, obs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_operand(obs, "apply_heisenberg")?;
        let d = self.dim;
        let mu = if d == 0 { ZERO } else { obs.trace() / d as f64 };
        let mut shifted = obs.clone();
        for i in 0..d {
            shifted.set(i, i, obs[(i, i)] - mu);
        }
        let mut out = ComplexMatrix::zeros(d, d);
        for e in &self.kraus {
            out = out.add(&ComplexMatrix::mul_chain(&[&e.adjoint(), &shifted, e])?)?;
        }
        for i in 0..d {
            out.set(i, i, out[(i, i)] + mu);
        }
        if obs.is_hermitian(HERMITIAN_INPUT_TOL) && !out.is_hermitian(HERMITIAN_DRIFT_TOL) {
            out = out.hermitian_part();
        }
        Ok(out)
    }

    /// `n`-fold composition of [`apply_heisenberg`](Self::apply_heisenberg);
    /// `n = 0` returns `obs` unchanged.
    pub fn iterate_heisenberg(&self, obs: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
        self.check_operand(obs, "iterate_heisenberg")?;
        (0..n).try_fold(obs.clone(), |o, _| self.apply_heisenberg(&o))
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(p))
    }
}

fn require_qubit(obs: &ComplexMatrix, op: &'static str) -> Result<()> {
    if obs.shape() == (2, 2) {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            op,
            left: (2, 2),
            right: obs.shape(),
        })
    }
}

/// Qubit amplitude damping with per-step decay probability `p`:
/// `E₀ = [[1, 0], [0, √(1−p)]]`, `E₁ = [[0, √p], [0, 0]]`.
pub fn damping_channel(p: f64) -> Result<KrausChannel> {
    check_probability(p)?;
    let mut e0 = ComplexMatrix::identity(2);
    e0.set(1, 1, C64::new((1.0 - p).sqrt(), 0.0));
    let mut e1 = ComplexMatrix::zeros(2, 2);
    e1.set(0, 1, C64::new(p.sqrt(), 0.0));
    KrausChannel::new(vec![e0, e1])
}

/// The `n`-step damping dual in closed form:
///
/// ```text
/// [[O₀₀,            q^{1/2} O₀₁            ],
///  [q^{1/2} O₁₀,    q O₁₁ + (1 − q) O₀₀    ]]      q = (1 − p)^n
/// ```
pub fn damping_closed_form(p: f64, n: usize, obs: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_probability(p)?;
    require_qubit(obs, "damping_closed_form")?;
    let exponent = i32::try_from(n)
        .map_err(|_| Error::InvalidParameter(format!("step count {n} too large")))?;
    let q = (1.0 - p).powi(exponent);
    let s = q.sqrt();
    let mut out = ComplexMatrix::zeros(2, 2);
    out.set(0, 0, obs[(0, 0)]);
    out.set(0, 1, obs[(0, 1)] * s);
    out.set(1, 0, obs[(1, 0)] * s);
    out.set(1, 1, obs[(1, 1)] * q + obs[(0, 0)] * (1.0 - q));
    Ok(out)
}

/// Decay exponent `κ` of `‖[Ẽⁿ(O₁), Ẽⁿ(O₂)]‖ ~ (1−p)^{κn}` under damping.
///
/// With `δ = O₁₁ − O₀₀` the commutator has diagonal entries
/// `±q(b₁c₂ − b₂c₁)` and off-diagonal entries `q^{3/2}(b₁δ₂ − b₂δ₁)`,
/// `q^{3/2}(δ₁c₂ − δ₂c₁)`, where `q = (1−p)ⁿ`. Returns `None` when the
/// evolved pair commutes for every `n`.
pub fn damping_commutator_exponent(o1: &ComplexMatrix, o2: &ComplexMatrix) -> Result<Option<f64>> {
    require_qubit(o1, "damping_commutator_exponent")?;
    require_qubit(o2, "damping_commutator_exponent")?;
    let parts = |o: &ComplexMatrix| (o[(0, 1)], o[(1, 0)], o[(1, 1)] - o[(0, 0)]);
    let (b1, c1, d1) = parts(o1);
    let (b2, c2, d2) = parts(o2);
    let scale = o1.max_abs().max(1.0) * o2.max_abs().max(1.0);
    let nonzero = |z: C64| z.norm() > 1e-14 * scale;
    Ok(if nonzero(b1 * c2 - b2 * c1) {
        Some(1.0)
    } else if nonzero(b1 * d2 - b2 * d1) || nonzero(d1 * c2 - d2 * c1) {
        Some(1.5)
    } else {
        None
    })
}

/// `O₀₀ · I`, the limit of the damping iteration for every `p ∈ (0, 1]`.
/// For `p = 0` the channel is the identity and this is not its limit.
pub fn damping_limit(obs: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_qubit(obs, "damping_limit")?;
    Ok(ComplexMatrix::identity(2).scale(obs[(0, 0)]))
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// up to [`EIGENVALUE_FLOOR`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        mat.require_square()?;
        let drift = mat.distance(&mat.adjoint());
        if drift > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (|ρ - ρ†| = {drift:e})"
            )));
        }
        let tr = mat.trace();
        if (tr - ONE).norm() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace is {tr}, expected 1")));
        }
        let smallest = hermitian_eigen(&mat)?.values[0];
        if smallest < EIGENVALUE_FLOOR {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {smallest:e}"
            )));
        }
        Ok(Self(mat))
    }

    /// The pure state `|ψ⟩⟨ψ|` for a normalized `ψ`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let v = ComplexMatrix::column(psi);
        Self::new(v.mul(&v.adjoint())?)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// `Tr(ρ O)`.
    pub fn expectation(&self, obs: &ComplexMatrix) -> Result<C64> {
        Ok(self.0.mul(obs)?.trace())
    }
}
