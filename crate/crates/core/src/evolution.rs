// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Time evolution on the Gamow sector.
//!
//! Three evolution operators are available, all diagonal in the Gamow
//! basis (resonance `j`, pole `z_j = E_j − iΓ_j/2`):
//!
//! | variant        | D slot        | G slot          | observables            |
//! |----------------|---------------|-----------------|------------------------|
//! | `SemigroupD`   | `e^{−itz_j}`  | `0`             | `U·O·U†` (extension)   |
//! | `Invertible`   | `e^{−itz_j}`  | `e^{−itz_j*}`   | `U(t)·O·U(−t)`         |
//! | `Hermitian`    | `e^{−itz_j}`  | `e^{+itz_j*}`   | `U†·O·U`               |
//!
//! `Invertible` satisfies `U(t)·U(−t) = I` but its Heisenberg picture grows
//! like `e^{tΓ}` in the `|G)(D|·O·|D)(G|` component. `Hermitian` is
//! pseudo-Hermitian (`A·U†·A = U`) with `U·U† = diag(e^{−tΓ_j})`, so every
//! evolved commutator decays. Note that `U·U` only equals `U·U†` when all
//! `E_j = 0`: the squares carry the phases `e^{∓2itE_j}`.
//!
//! Time is measured in units with `ħ = 1`.

use std::fmt;
use std::str::FromStr;

use crate::cmatrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::gamow::{GamowKind, GamowSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvolutionVariant {
    SemigroupD,
    Invertible,
    Hermitian,
}

impl EvolutionVariant {
    pub const ALL: [Self; 3] = [Self::SemigroupD, Self::Invertible, Self::Hermitian];

    pub fn name(self) -> &'static str {
        match self {
            Self::SemigroupD => "semigroup_d",
            Self::Invertible => "invertible",
            Self::Hermitian => "hermitian",
        }
    }

    /// `false` for `SemigroupD`, whose conjugation rule is an extension.
    pub fn has_native_conjugation(self) -> bool {
        !matches!(self, Self::SemigroupD)
    }
}

impl fmt::Display for EvolutionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EvolutionVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| {
                format!("unknown variant {s:?} (expected semigroup_d, invertible or hermitian)")
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HamiltonianKind {
    /// `Σ z_j |D_j)(G_j|`.
    Effective,
    /// `Σ z_j |D_j)(G_j| + Σ z_j* |G_j)(D_j|`.
    FullHermitian,
}

/// `A·M†·A`, the adjoint with respect to the pseudometric.
pub fn pseudo_adjoint(space: &GamowSpace, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    ComplexMatrix::mul_chain(&[space.metric(), &m.adjoint(), space.metric()])
}

fn require_space_shape(space: &GamowSpace, m: &ComplexMatrix, op: &'static str) -> Result<()> {
    let d = space.dim();
    if m.shape() == (d, d) {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            op,
            left: (d, d),
            right: m.shape(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct GamowHamiltonian<'a> {
    space: &'a GamowSpace,
    kind: HamiltonianKind,
    mat: ComplexMatrix,
}

pub fn hamiltonian(space: &GamowSpace, kind: HamiltonianKind) -> GamowHamiltonian<'_> {
    let poles: Vec<C64> = space.resonances().iter().map(|r| r.pole()).collect();
    let growing: Vec<C64> = match kind {
        HamiltonianKind::Effective => vec![ZERO; poles.len()],
        HamiltonianKind::FullHermitian => poles.iter().map(|z| z.conj()).collect(),
    };
    GamowHamiltonian {
        space,
        kind,
        mat: space.diagonal_operator(&poles, &growing),
    }
}

impl GamowHamiltonian<'_> {
    pub fn kind(&self) -> HamiltonianKind {
        self.kind
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn is_pseudo_hermitian(&self, tol: f64) -> Result<bool> {
        Ok(pseudo_adjoint(self.space, &self.mat)?.distance(&self.mat) <= tol)
    }
}

/// `diag(z_j, −z_j*)`, the generator of the `Hermitian` variant:
/// `U(t) = e^{−it·G}`.
pub fn hermitian_generator(space: &GamowSpace) -> ComplexMatrix {
    let poles: Vec<C64> = space.resonances().iter().map(|r| r.pole()).collect();
    let growing: Vec<C64> = poles.iter().map(|z| -z.conj()).collect();
    space.diagonal_operator(&poles, &growing)
}

/// `e^{−i·t·w}`.
fn phase_exp(t: f64, w: C64) -> C64 {
    (C64::new(0.0, -t) * w).exp()
}

#[derive(Debug, Clone)]
pub struct EvolutionOperator<'a> {
    space: &'a GamowSpace,
    t: f64,
    variant: EvolutionVariant,
    mat: ComplexMatrix,
}

pub fn evolution_operator(
    space: &GamowSpace,
    t: f64,
    variant: EvolutionVariant,
) -> Result<EvolutionOperator<'_>> {
    if !t.is_finite() {
        return Err(Error::NonFiniteTime(t));
    }
    let (decaying, growing): (Vec<C64>, Vec<C64>) = space
        .resonances()
        .iter()
        .map(|r| {
            let z = r.pole();
            let d = phase_exp(t, z);
            let g = match variant {
                EvolutionVariant::SemigroupD => ZERO,
                EvolutionVariant::Invertible => phase_exp(t, z.conj()),
                EvolutionVariant::Hermitian => phase_exp(-t, z.conj()),
            };
            (d, g)
        })
        .unzip();
    Ok(EvolutionOperator {
        space,
        t,
        variant,
        mat: space.diagonal_operator(&decaying, &growing),
    })
}

impl<'a> EvolutionOperator<'a> {
    pub fn space(&self) -> &'a GamowSpace {
        self.space
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn variant(&self) -> EvolutionVariant {
        self.variant
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// `U(t)⁻¹ = U(−t)`, defined for the `Invertible` variant only.
    pub fn inverse(&self) -> Result<EvolutionOperator<'a>> {
        match self.variant {
            EvolutionVariant::Invertible => evolution_operator(self.space, -self.t, self.variant),
            v => Err(Error::VariantMismatch {
                op: "inverse",
                variant: v,
            }),
        }
    }

    /// The evolved observable `O(t)`; see the module table for the rule
    /// each variant uses.
    pub fn heisenberg(&self, obs: &ComplexMatrix) -> Result<ComplexMatrix> {
        require_space_shape(self.space, obs, "heisenberg_evolve")?;
        let u = &self.mat;
        match self.variant {
            EvolutionVariant::Invertible => {
                ComplexMatrix::mul_chain(&[u, obs, self.inverse()?.matrix()])
            }
            EvolutionVariant::Hermitian => ComplexMatrix::mul_chain(&[&u.adjoint(), obs, u]),
            EvolutionVariant::SemigroupD => ComplexMatrix::mul_chain(&[u, obs, &u.adjoint()]),
        }
    }

    pub fn is_pseudo_hermitian(&self, tol: f64) -> Result<bool> {
        Ok(pseudo_adjoint(self.space, &self.mat)?.distance(&self.mat) <= tol)
    }
}

/// Free-function form of [`EvolutionOperator::heisenberg`].
pub fn heisenberg_evolve(op: &EvolutionOperator<'_>, obs: &ComplexMatrix) -> Result<ComplexMatrix> {
    op.heisenberg(obs)
}

/// Products of the `Hermitian` operator with itself at time `t`.
#[derive(Debug, Clone)]
pub struct SquareLaw {
    /// `U(t)·U(t)`.
    pub square: ComplexMatrix,
    /// `U(t)·U(t)†`.
    pub gram: ComplexMatrix,
    /// `diag(e^{−tΓ_j})` on both slots of every resonance.
    pub predicted: ComplexMatrix,
    /// `e^{−tΓ_j}` per resonance.
    pub factors: Vec<f64>,
}

impl SquareLaw {
    pub fn gram_residual(&self) -> f64 {
        self.gram.distance(&self.predicted)
    }

    pub fn square_residual(&self) -> f64 {
        self.square.distance(&self.predicted)
    }
}

pub fn hermitian_square_law(space: &GamowSpace, t: f64) -> Result<SquareLaw> {
    let u = evolution_operator(space, t, EvolutionVariant::Hermitian)?;
    let u = u.matrix();
    let factors: Vec<f64> = space
        .resonances()
        .iter()
        .map(|r| (-t * r.width()).exp())
        .collect();
    let f: Vec<C64> = factors.iter().map(|&x| C64::new(x, 0.0)).collect();
    Ok(SquareLaw {
        square: u.mul(u)?,
        gram: u.mul(&u.adjoint())?,
        predicted: space.diagonal_operator(&f, &f),
        factors,
    })
}

/// `B·[Σ_j e^{−itz_j} |D_j⟩⟨G_j|]·B`.
///
/// The Hilbert-space dyad `|D_j⟩⟨G_j|` is fixed by `B|D_j⟩ = |D_j)` and
/// `⟨G_j|B = (G_j|`, i.e. it is `B⁻¹·E_{2j,2j}·B⁻¹`. The result should
/// reproduce the `SemigroupD` operator.
pub fn rooted_semigroup(space: &GamowSpace, t: f64) -> Result<ComplexMatrix> {
    if !t.is_finite() {
        return Err(Error::NonFiniteTime(t));
    }
    let d = space.dim();
    let b = space.root_b();
    let b_inv = space.root_b_inverse();
    let mut inner = ComplexMatrix::zeros(d, d);
    for (j, r) in space.resonances().iter().enumerate() {
        let unit = ComplexMatrix::unit(d, d, 2 * j, 2 * j);
        let dyad = ComplexMatrix::mul_chain(&[b_inv, &unit, b_inv])?;
        inner = inner.add(&dyad.scale(phase_exp(t, r.pole())))?;
    }
    ComplexMatrix::mul_chain(&[b, &inner, b])
}

/// Residuals of `B[Σ z_j |D_j⟩⟨G_j|]B + C[Σ z_j* |G_j⟩⟨D_j|]C` against the
/// `FullHermitian` Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootedHamiltonianResidual {
    /// With `C|G_j⟩ = |G_j)` and `⟨D_j|C = (D_j|`, mirroring the `B` side.
    pub consistent: f64,
    /// With `⟨D_j| = (D_j|·C` taken literally.
    pub literal: f64,
}

pub fn rooted_hamiltonian_residual(space: &GamowSpace) -> Result<RootedHamiltonianResidual> {
    let d = space.dim();
    let (b, b_inv) = (space.root_b(), space.root_b_inverse());
    let (c, c_inv) = (space.root_c(), space.root_c_inverse());
    let target = hamiltonian(space, HamiltonianKind::FullHermitian);

    let mut b_part = ComplexMatrix::zeros(d, d);
    let mut c_consistent = ComplexMatrix::zeros(d, d);
    let mut c_literal = ComplexMatrix::zeros(d, d);
    for (j, r) in space.resonances().iter().enumerate() {
        let z = r.pole();
        let e_d = ComplexMatrix::unit(d, d, 2 * j, 2 * j);
        let e_g = ComplexMatrix::unit(d, d, 2 * j + 1, 2 * j + 1);
        b_part = b_part.add(&ComplexMatrix::mul_chain(&[b_inv, &e_d, b_inv])?.scale(z))?;
        c_consistent =
            c_consistent.add(&ComplexMatrix::mul_chain(&[c_inv, &e_g, c_inv])?.scale(z.conj()))?;
        c_literal = c_literal.add(&ComplexMatrix::mul_chain(&[c_inv, &e_g, c])?.scale(z.conj()))?;
    }
    let b_side = ComplexMatrix::mul_chain(&[b, &b_part, b])?;
    let consistent = b_side.add(&ComplexMatrix::mul_chain(&[c, &c_consistent, c])?)?;
    let literal = b_side.add(&ComplexMatrix::mul_chain(&[c, &c_literal, c])?)?;
    Ok(RootedHamiltonianResidual {
        consistent: consistent.distance(target.matrix()),
        literal: literal.distance(target.matrix()),
    })
}

/// Semigroup validity of the decaying/growing evolution rules at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaqmValidity {
    /// The rule as written: `D` for `t ≥ 0`, `G` for `t ≤ 0`.
    pub raw: bool,
    /// After mapping the `G` rule forward (`−t ↦ t`): valid for `t ≥ 0`.
    pub converted_forward: bool,
}

pub fn taqm_validity(kind: GamowKind, t: f64) -> TaqmValidity {
    match kind {
        GamowKind::Decaying => TaqmValidity {
            raw: t >= 0.0,
            converted_forward: t >= 0.0,
        },
        GamowKind::Growing => TaqmValidity {
            raw: t <= 0.0,
            converted_forward: t >= 0.0,
        },
    }
}

/// Whether every coefficient of `variant` at time `t` is used inside its
/// semigroup domain.
pub fn row_validity(variant: EvolutionVariant, t: f64) -> bool {
    let decaying = taqm_validity(GamowKind::Decaying, t).raw;
    let growing = taqm_validity(GamowKind::Growing, t);
    match variant {
        EvolutionVariant::SemigroupD => decaying,
        EvolutionVariant::Invertible => decaying && growing.raw,
        EvolutionVariant::Hermitian => decaying && growing.converted_forward,
    }
}

/// The projector onto the decaying slots.
pub fn decaying_projector(space: &GamowSpace) -> ComplexMatrix {
    let n = space.n_resonances();
    space.diagonal_operator(&vec![ONE; n], &vec![ZERO; n])
}
