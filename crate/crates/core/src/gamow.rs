// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

//! The finite Gamow sector spanned by `N` resonances.
//!
//! Each resonance `z = E − iΓ/2` contributes a decaying vector `|ψ^D)` and
//! a growing vector `|ψ^G)`, giving a `2N`-dimensional space with the
//! indefinite pairing `(ψ|φ) = ⟨ψ|A|φ⟩`, where `A` is block diagonal with
//! `[[0, 1], [1, 0]]` boxes. Under this pairing `(D_i|G_j) = (G_i|D_j) = δ_ij`
//! and `(D_i|D_j) = (G_i|G_j) = 0`.
//!
//! # Coordinates
//!
//! Round kets are standard basis columns: for the 0-based resonance index
//! `j`, `|ψ_j^D)` is `e_{2j}` and `|ψ_j^G)` is `e_{2j+1}`. A round bra
//! `(ψ|` acts as `v ↦ ψ†·A·v`, so it is conjugate-linear in `ψ`. With these
//! conventions the dyad `|D_j)(G_j|` is the unit matrix at `(2j, 2j)` and
//! `|G_j)(D_j|` the unit matrix at `(2j+1, 2j+1)`.
//!
//! The space also carries two square roots of `A`: `B`, tiled from
//! `e^{−iπ/4}·(√2/2)·[[i, 1], [1, i]]`, and `C = B†`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use crate::cmatrix::{ComplexMatrix, C64, I, ONE};
use crate::error::{Error, Result};

/// Default upper bound on the number of resonances.
pub const DEFAULT_RESONANCE_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    energy: f64,
    width: f64,
}

impl Resonance {
    pub fn new(energy: f64, width: f64) -> Result<Self> {
        if !energy.is_finite() {
            return Err(Error::NonFiniteEnergy(energy));
        }
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::NonPositiveWidth(width));
        }
        Ok(Self { energy, width })
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// `z = E − iΓ/2`.
    pub fn pole(&self) -> C64 {
        C64::new(self.energy, -self.width / 2.0)
    }

    /// `z* = E + iΓ/2`.
    pub fn conjugate_pole(&self) -> C64 {
        self.pole().conj()
    }
}

/// Decaying (`D`) or growing (`G`) member of a resonance pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GamowKind {
    Decaying,
    Growing,
}

impl GamowKind {
    pub fn partner(self) -> Self {
        match self {
            Self::Decaying => Self::Growing,
            Self::Growing => Self::Decaying,
        }
    }
}

/// One of the `2N` Gamow basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GamowBasis {
    pub resonance: usize,
    pub kind: GamowKind,
}

impl GamowBasis {
    pub fn decaying(resonance: usize) -> Self {
        Self {
            resonance,
            kind: GamowKind::Decaying,
        }
    }

    pub fn growing(resonance: usize) -> Self {
        Self {
            resonance,
            kind: GamowKind::Growing,
        }
    }

    /// Coordinate index of this vector.
    pub fn slot(self) -> usize {
        match self.kind {
            GamowKind::Decaying => 2 * self.resonance,
            GamowKind::Growing => 2 * self.resonance + 1,
        }
    }

    pub fn partner(self) -> Self {
        Self {
            resonance: self.resonance,
            kind: self.kind.partner(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GamowSpace {
    resonances: Vec<Resonance>,
    metric: ComplexMatrix,
    root_b: ComplexMatrix,
    root_c: ComplexMatrix,
    root_b_inv: ComplexMatrix,
    root_c_inv: ComplexMatrix,
}

/// The 2×2 box of `B`: `e^{−iπ/4}·(√2/2)·[[i, 1], [1, i]]`, principal
/// branch of `(−i)^{1/2}`.
pub fn root_box() -> [[C64; 2]; 2] {
    let phase = C64::from_polar(1.0, -FRAC_PI_4);
    let s = phase * FRAC_1_SQRT_2;
    [[s * I, s], [s, s * I]]
}

impl GamowSpace {
    pub fn new(resonances: Vec<Resonance>) -> Result<Self> {
        Self::with_cap(resonances, DEFAULT_RESONANCE_CAP)
    }

    pub fn with_cap(resonances: Vec<Resonance>, cap: usize) -> Result<Self> {
        let n = resonances.len();
        if n == 0 {
            return Err(Error::EmptyResonances);
        }
        if n > cap {
            return Err(Error::TooManyResonances { n, cap });
        }
        let dim = 2 * n;
        let mut metric = ComplexMatrix::zeros(dim, dim);
        let mut root_b = ComplexMatrix::zeros(dim, dim);
        let b = root_box();
        for j in 0..n {
            let (d, g) = (2 * j, 2 * j + 1);
            metric.set(d, g, ONE);
            metric.set(g, d, ONE);
            root_b.set(d, d, b[0][0]);
            root_b.set(d, g, b[0][1]);
            root_b.set(g, d, b[1][0]);
            root_b.set(g, g, b[1][1]);
        }
        let root_c = root_b.adjoint();
        let root_b_inv = root_b.inverse()?;
        let root_c_inv = root_c.inverse()?;
        Ok(Self {
            resonances,
            metric,
            root_b,
            root_c,
            root_b_inv,
            root_c_inv,
        })
    }

    /// Convenience constructor from `(energy, width)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let resonances = pairs
            .iter()
            .map(|&(e, w)| Resonance::new(e, w))
            .collect::<Result<Vec<_>>>()?;
        Self::new(resonances)
    }

    pub fn dim(&self) -> usize {
        2 * self.resonances.len()
    }

    pub fn n_resonances(&self) -> usize {
        self.resonances.len()
    }

    pub fn resonances(&self) -> &[Resonance] {
        &self.resonances
    }

    pub fn min_width(&self) -> f64 {
        self.resonances
            .iter()
            .map(Resonance::width)
            .fold(f64::INFINITY, f64::min)
    }

    /// The pseudometric `A`.
    pub fn metric(&self) -> &ComplexMatrix {
        &self.metric
    }

    pub fn root_b(&self) -> &ComplexMatrix {
        &self.root_b
    }

    /// `C = B†`.
    pub fn root_c(&self) -> &ComplexMatrix {
        &self.root_c
    }

    pub fn root_b_inverse(&self) -> &ComplexMatrix {
        &self.root_b_inv
    }

    pub fn root_c_inverse(&self) -> &ComplexMatrix {
        &self.root_c_inv
    }

    fn check_basis(&self, b: GamowBasis) -> Result<()> {
        if b.resonance < self.n_resonances() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: b.resonance,
                len: self.n_resonances(),
            })
        }
    }

    pub fn basis_vector(&self, b: GamowBasis) -> Result<ComplexMatrix> {
        self.check_basis(b)?;
        Ok(ComplexMatrix::unit_column(self.dim(), b.slot()))
    }

    fn check_column(&self, v: &ComplexMatrix) -> Result<()> {
        if v.shape() == (self.dim(), 1) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op: "pseudo_product",
                left: (self.dim(), 1),
                right: v.shape(),
            })
        }
    }

    /// `(v|w) = v†·A·w`, conjugate-linear in `v`.
    pub fn pseudo_product(&self, v: &ComplexMatrix, w: &ComplexMatrix) -> Result<C64> {
        self.check_column(v)?;
        self.check_column(w)?;
        Ok(ComplexMatrix::mul_chain(&[&v.adjoint(), &self.metric, w])?[(0, 0)])
    }

    /// The matrix of `|left)(right|`: the unit matrix at
    /// `(left.slot(), right.partner().slot())`.
    pub fn dyad(&self, left: GamowBasis, right: GamowBasis) -> Result<ComplexMatrix> {
        self.check_basis(left)?;
        self.check_basis(right)?;
        let d = self.dim();
        Ok(ComplexMatrix::unit(
            d,
            d,
            left.slot(),
            right.partner().slot(),
        ))
    }

    /// `Σ_j c_j |D_j)(G_j| + Σ_j g_j |G_j)(D_j|` from per-resonance
    /// coefficients.
    pub fn diagonal_operator(&self, decaying: &[C64], growing: &[C64]) -> ComplexMatrix {
        assert_eq!(decaying.len(), self.n_resonances());
        assert_eq!(growing.len(), self.n_resonances());
        let diag: Vec<C64> = decaying
            .iter()
            .zip(growing)
            .flat_map(|(&d, &g)| [d, g])
            .collect();
        ComplexMatrix::diagonal(&diag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::ZERO;

    fn space(n: usize) -> GamowSpace {
        let pairs: Vec<(f64, f64)> = (0..n)
            .map(|j| (1.0 + j as f64, 0.5 + 0.25 * j as f64))
            .collect();
        GamowSpace::from_pairs(&pairs).unwrap()
    }

    fn all_basis(n: usize) -> Vec<GamowBasis> {
        (0..n)
            .flat_map(|j| [GamowBasis::decaying(j), GamowBasis::growing(j)])
            .collect()
    }

    #[test]
    fn resonance_validation_and_poles() {
        let r = Resonance::new(1.0, 0.5).unwrap();
        assert_eq!(r.pole(), C64::new(1.0, -0.25));
        assert_eq!(r.conjugate_pole(), C64::new(1.0, 0.25));
        assert_eq!(
            Resonance::new(1.0, 0.0).unwrap_err(),
            Error::NonPositiveWidth(0.0)
        );
        assert_eq!(
            Resonance::new(1.0, -1.0).unwrap_err(),
            Error::NonPositiveWidth(-1.0)
        );
        assert!(Resonance::new(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(GamowSpace::new(vec![]).unwrap_err(), Error::EmptyResonances);
        let many = vec![Resonance::new(0.0, 1.0).unwrap(); 3];
        assert_eq!(
            GamowSpace::with_cap(many, 2).unwrap_err(),
            Error::TooManyResonances { n: 3, cap: 2 }
        );
    }

    #[test]
    fn single_block_metric() {
        let s = space(1);
        let expected = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(s.metric(), &expected);
        assert_eq!(
            s.metric().mul(s.metric()).unwrap(),
            ComplexMatrix::identity(2)
        );
    }

    #[test]
    fn two_block_metric() {
        let s = space(2);
        let a = s.metric();
        for r in 0..4 {
            for c in 0..4 {
                let expected = if r / 2 == c / 2 && r != c { ONE } else { ZERO };
                assert_eq!(a[(r, c)], expected, "({r}, {c})");
            }
        }
        assert_eq!(a.mul(a).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn root_b_box_squares_to_metric() {
        // Oracle: multiply the box out by hand.
        // [[i,1],[1,i]]² = [[0, 2i], [2i, 0]], times (e^{−iπ/4})²·½ = −i/2 → [[0,1],[1,0]].
        let s = space(1);
        let b = root_box();
        let w = C64::from_polar(1.0, -FRAC_PI_4) * FRAC_1_SQRT_2;
        assert!((b[0][0] - w * I).norm() < 1e-16);
        assert!((b[0][1] - w).norm() < 1e-16);
        let bb = s.root_b().mul(s.root_b()).unwrap();
        assert!(bb.approx_eq(s.metric(), 1e-15).unwrap());
    }

    #[test]
    fn roots_are_distinct_square_roots() {
        for n in 1..=4 {
            let s = space(n);
            let a = s.metric();
            assert!(s
                .root_b()
                .mul(s.root_b())
                .unwrap()
                .approx_eq(a, 1e-13)
                .unwrap());
            assert!(s
                .root_c()
                .mul(s.root_c())
                .unwrap()
                .approx_eq(a, 1e-13)
                .unwrap());
            assert_eq!(s.root_c(), &s.root_b().adjoint());
            assert!(s.root_b().distance(s.root_c()) > 1.0);
            assert!(s
                .root_b()
                .mul(s.root_b_inverse())
                .unwrap()
                .approx_eq(&ComplexMatrix::identity(2 * n), 1e-14)
                .unwrap());
        }
    }

    #[test]
    fn basis_vector_convention() {
        assert_eq!(
            space(1).basis_vector(GamowBasis::decaying(0)).unwrap(),
            ComplexMatrix::unit_column(2, 0)
        );
        assert_eq!(
            space(2).basis_vector(GamowBasis::growing(1)).unwrap(),
            ComplexMatrix::unit_column(4, 3)
        );
        assert_eq!(
            space(2).basis_vector(GamowBasis::growing(2)).unwrap_err(),
            Error::IndexOutOfRange { index: 2, len: 2 }
        );
    }

    #[test]
    fn kronecker_table() {
        for n in 1..=8 {
            let s = space(n);
            for x in all_basis(n) {
                for y in all_basis(n) {
                    let got = s
                        .pseudo_product(&s.basis_vector(x).unwrap(), &s.basis_vector(y).unwrap())
                        .unwrap();
                    let expected = if x.resonance == y.resonance && x.kind != y.kind {
                        ONE
                    } else {
                        ZERO
                    };
                    assert_eq!(got, expected, "({x:?}|{y:?})");
                }
            }
        }
    }

    #[test]
    fn pseudo_product_expands_bilinearly() {
        let s = space(1);
        let v = s
            .basis_vector(GamowBasis::decaying(0))
            .unwrap()
            .add(&s.basis_vector(GamowBasis::growing(0)).unwrap())
            .unwrap();
        assert_eq!(s.pseudo_product(&v, &v).unwrap(), C64::new(2.0, 0.0));
    }

    #[test]
    fn pseudo_product_is_conjugate_linear_on_the_left() {
        let s = space(1);
        let d = s.basis_vector(GamowBasis::decaying(0)).unwrap();
        let g = s.basis_vector(GamowBasis::growing(0)).unwrap();
        let c = C64::new(0.3, 1.7);
        assert_eq!(s.pseudo_product(&d.scale(c), &g).unwrap(), c.conj());
        assert_eq!(s.pseudo_product(&d, &g.scale(c)).unwrap(), c);
        assert!(s.pseudo_product(&d, &ComplexMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn dyad_actions() {
        let s = space(1);
        let d = s.basis_vector(GamowBasis::decaying(0)).unwrap();
        let g = s.basis_vector(GamowBasis::growing(0)).unwrap();
        let dg = s
            .dyad(GamowBasis::decaying(0), GamowBasis::growing(0))
            .unwrap();
        let gd = s
            .dyad(GamowBasis::growing(0), GamowBasis::decaying(0))
            .unwrap();
        assert_eq!(dg.mul(&d).unwrap(), d);
        assert_eq!(dg.mul(&g).unwrap(), ComplexMatrix::zeros(2, 1));
        assert_eq!(dg.add(&gd).unwrap(), ComplexMatrix::identity(2));
        assert_eq!(dg, ComplexMatrix::unit(2, 2, 0, 0));
        assert_eq!(gd, ComplexMatrix::unit(2, 2, 1, 1));
    }

    #[test]
    fn identity_resolution() {
        for n in 1..=6 {
            let s = space(n);
            let mut sum = ComplexMatrix::zeros(2 * n, 2 * n);
            for j in 0..n {
                sum = sum
                    .add(
                        &s.dyad(GamowBasis::decaying(j), GamowBasis::growing(j))
                            .unwrap(),
                    )
                    .unwrap()
                    .add(
                        &s.dyad(GamowBasis::growing(j), GamowBasis::decaying(j))
                            .unwrap(),
                    )
                    .unwrap();
            }
            assert_eq!(sum, ComplexMatrix::identity(2 * n));
        }
    }

    #[test]
    fn dyad_agrees_with_pseudo_product() {
        let n = 3;
        let s = space(n);
        for x in all_basis(n) {
            for y in all_basis(n) {
                let dyad = s.dyad(x, y).unwrap();
                for z in all_basis(n) {
                    let vz = s.basis_vector(z).unwrap();
                    let coeff = s.pseudo_product(&s.basis_vector(y).unwrap(), &vz).unwrap();
                    let expected = s.basis_vector(x).unwrap().scale(coeff);
                    assert_eq!(dyad.mul(&vz).unwrap(), expected);
                }
            }
        }
    }
}
