// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::evolution::EvolutionVariant;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix data has {len} entries, expected {rows}x{cols}")]
    BadLength {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("matrix shape {rows}x{cols} must have positive dimensions")]
    EmptyShape { rows: usize, cols: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("kraus operators are not complete: |sum E^dag E - I| = {0:e}")]
    IncompleteChannel(f64),
    #[error("kraus list is empty")]
    EmptyChannel,
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("resonance width must be strictly positive, got {0}")]
    NonPositiveWidth(f64),
    #[error("resonance energy must be finite, got {0}")]
    NonFiniteEnergy(f64),
    #[error("at least one resonance is required")]
    EmptyResonances,
    #[error("{n} resonances exceed the cap of {cap}")]
    TooManyResonances { n: usize, cap: usize },
    #[error("index {index} out of range for {len} entries")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{op} is not defined for the {variant:?} evolution")]
    VariantMismatch {
        op: &'static str,
        variant: EvolutionVariant,
    },
    #[error("time {0} is not finite")]
    NonFiniteTime(f64),
    #[error("time grid is empty")]
    EmptyTimeGrid,
    #[error("time grid must be strictly increasing (index {0})")]
    TimeGridNotIncreasing(usize),
    #[error("invalid grid parameter: {0}")]
    InvalidGrid(String),
    #[error("no usable points for a decay fit (need 2 above the underflow floor, got {0})")]
    EmptyFit(usize),
    #[error("{op} supports only {expected} resonance(s), space has {actual}")]
    UnsupportedResonanceCount {
        op: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("reference entry is zero; growth witness undefined")]
    UndefinedWitness,
    #[error("not an orthogonal projector: {0}")]
    NotAProjector(String),
    #[error("observable list is empty")]
    EmptyObservableList,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
