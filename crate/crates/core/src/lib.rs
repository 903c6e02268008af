// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Heisenberg-picture dynamics that is not unitary: Kraus channels, the
//! Gamow-vector sector of resonances with its indefinite metric, the decay of
//! commutators under those evolutions, and projector-lattice checks.
//!
//! All dimensions are small (2 for qubit channels, `2N` for `N` resonances)
//! and matrices are dense.

pub mod channels;
pub mod cli;
pub mod cmatrix;
pub mod commutators;
pub mod error;
pub mod evolution;
pub mod gamow;
pub mod qlattice;

pub use cmatrix::{ComplexMatrix, C64};
pub use error::{Error, Result};
pub use evolution::EvolutionVariant;
pub use gamow::{GamowSpace, Resonance};
