// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Commutator trajectories `[O₁(t), O₂(t)]` and their decay analysis.
//!
//! For one resonance under the `Hermitian` variant the evolved commutator is
//! `e^{−tΓ}·U†·K·U` with `K = [O₁, O₂]`, so every entry has modulus
//! `e^{−2tΓ}·|K_ab|` and the log-norm is exactly linear with slope `−2Γ`.
//! With several resonances, cross terms decay at mixed rates and the slowest
//! width dominates at late times.

use rayon::prelude::*;

use crate::cmatrix::{commutator, ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::evolution::{evolution_operator, EvolutionVariant};
use crate::gamow::GamowSpace;

/// Norms at or below this value are skipped by the log-linear fits.
pub const UNDERFLOW_FLOOR: f64 = 1e-280;

/// Default fraction of the grid used for multi-resonance slope fits.
pub const DEFAULT_FIT_WINDOW: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct CommutatorTrajectory {
    variant: EvolutionVariant,
    n_resonances: usize,
    times: Vec<f64>,
    values: Vec<ComplexMatrix>,
    norms: Vec<f64>,
}

impl CommutatorTrajectory {
    pub fn variant(&self) -> EvolutionVariant {
        self.variant
    }

    pub fn n_resonances(&self) -> usize {
        self.n_resonances
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[ComplexMatrix] {
        &self.values
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Checks that `times` is nonempty, finite and strictly increasing.
pub fn validate_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::EmptyTimeGrid);
    }
    if let Some(&t) = times.iter().find(|t| !t.is_finite()) {
        return Err(Error::NonFiniteTime(t));
    }
    match times.windows(2).position(|w| w[1] <= w[0]) {
        Some(k) => Err(Error::TimeGridNotIncreasing(k + 1)),
        None => Ok(()),
    }
}

fn check_observable(space: &GamowSpace, o: &ComplexMatrix, op: &'static str) -> Result<()> {
    let d = space.dim();
    if o.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            op,
            left: (d, d),
            right: o.shape(),
        });
    }
    Ok(())
}

/// The evolved commutator at a single time.
pub fn evolved_commutator(
    space: &GamowSpace,
    o1: &ComplexMatrix,
    o2: &ComplexMatrix,
    t: f64,
    variant: EvolutionVariant,
) -> Result<ComplexMatrix> {
    check_observable(space, o1, "evolved_commutator")?;
    check_observable(space, o2, "evolved_commutator")?;
    let u = evolution_operator(space, t, variant)?;
    commutator(&u.heisenberg(o1)?, &u.heisenberg(o2)?)
}

/// Evaluates the commutator on every grid time (in parallel; results are in
/// grid order).
pub fn trajectory(
    space: &GamowSpace,
    o1: &ComplexMatrix,
    o2: &ComplexMatrix,
    times: &[f64],
    variant: EvolutionVariant,
) -> Result<CommutatorTrajectory> {
    validate_times(times)?;
    check_observable(space, o1, "trajectory")?;
    check_observable(space, o2, "trajectory")?;
    let values = times
        .par_iter()
        .map(|&t| evolved_commutator(space, o1, o2, t, variant))
        .collect::<Result<Vec<_>>>()?;
    let norms = values.iter().map(ComplexMatrix::frobenius_norm).collect();
    Ok(CommutatorTrajectory {
        variant,
        n_resonances: space.n_resonances(),
        times: times.to_vec(),
        values,
        norms,
    })
}

/// `n` evenly spaced points from `start` to `end` inclusive.
pub fn linear_grid(start: f64, end: f64, n: usize) -> Result<Vec<f64>> {
    if !(start.is_finite() && end.is_finite()) || end <= start {
        return Err(Error::InvalidGrid(format!(
            "need finite t_start < t_end, got [{start}, {end}]"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points, got {n}"
        )));
    }
    let h = (end - start) / (n - 1) as f64;
    Ok((0..n)
        .map(|k| {
            if k + 1 == n {
                end
            } else {
                start + h * k as f64
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_abs_residual: f64,
    pub n_points: usize,
}

/// Ordinary least squares of `y` against `x`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<DecayFit> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return Err(Error::EmptyFit(n));
    }
    let (xs, ys) = (&xs[..n], &ys[..n]);
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::EmptyFit(1));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_abs_residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (intercept + slope * x)).abs())
        .fold(0.0, f64::max);
    Ok(DecayFit {
        slope,
        intercept,
        max_abs_residual,
        n_points: n,
    })
}

/// Least squares of `ln y` against `x`, skipping `y ≤ UNDERFLOW_FLOOR`.
pub fn log_linear_fit(xs: &[f64], ys: &[f64]) -> Result<DecayFit> {
    let (xs, logs): (Vec<f64>, Vec<f64>) = xs
        .iter()
        .zip(ys)
        .filter(|(_, &y)| y > UNDERFLOW_FLOOR)
        .map(|(&x, &y)| (x, y.ln()))
        .unzip();
    linear_fit(&xs, &logs)
}

/// Fits the decay envelope: full grid for one resonance, the last half
/// otherwise.
pub fn envelope_fit(traj: &CommutatorTrajectory) -> Result<DecayFit> {
    let fraction = if traj.n_resonances == 1 {
        1.0
    } else {
        DEFAULT_FIT_WINDOW
    };
    envelope_fit_window(traj, fraction)
}

/// Fits over the last `fraction` of the grid (at least two points).
pub fn envelope_fit_window(traj: &CommutatorTrajectory, fraction: f64) -> Result<DecayFit> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "fit window fraction must be in (0, 1], got {fraction}"
        )));
    }
    let len = traj.len();
    let keep = ((len as f64 * fraction).ceil() as usize).clamp(2.min(len), len);
    let start = len - keep;
    log_linear_fit(&traj.times[start..], &traj.norms[start..])
}

/// `z·e^{x}` without overflowing the intermediate exponential.
fn scale_by_exp(z: C64, x: f64) -> C64 {
    let f = x.exp();
    if f.is_finite() {
        z * f
    } else if z == ZERO {
        ZERO
    } else {
        C64::from_polar((z.norm().ln() + x).exp(), z.arg())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzReport {
    /// `α_j`: the `|D_j)(G_j|` coefficient with the envelope removed.
    pub alpha: Vec<C64>,
    /// `β_j`: the `|G_j)(D_j|` coefficient with the envelope removed.
    pub beta: Vec<C64>,
    /// Relative Frobenius distance from the per-resonance diagonal form.
    pub residual: f64,
}

/// Compares the commutator at grid index `k` with
/// `Σ_j e^{−2tΓ_j}(α_j |D_j)(G_j| + β_j |G_j)(D_j|)`.
pub fn ansatz_report(
    space: &GamowSpace,
    traj: &CommutatorTrajectory,
    k: usize,
) -> Result<AnsatzReport> {
    if k >= traj.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: traj.len(),
        });
    }
    let value = &traj.values[k];
    check_observable(space, value, "ansatz_report")?;
    let t = traj.times[k];
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    for (j, r) in space.resonances().iter().enumerate() {
        let (a, b) = (value[(2 * j, 2 * j)], value[(2 * j + 1, 2 * j + 1)]);
        alpha.push(scale_by_exp(a, 2.0 * t * r.width()));
        beta.push(scale_by_exp(b, 2.0 * t * r.width()));
    }
    let norm = traj.norms[k];
    let residual = if norm <= UNDERFLOW_FLOOR {
        0.0
    } else {
        let d = value.rows();
        let off_sq: f64 = (0..d)
            .flat_map(|r| (0..d).map(move |c| (r, c)))
            .filter(|&(r, c)| r != c)
            .map(|(r, c)| value[(r, c)].norm_sqr())
            .sum();
        (off_sq.sqrt() / norm).min(1.0)
    };
    Ok(AnsatzReport {
        alpha,
        beta,
        residual,
    })
}

/// Tolerance on the spread of `|α|`, `|β|` over the grid.
pub const MODULUS_TOL: f64 = 1e-9;
/// Tolerance on the fitted phase rate and its linearity.
pub const PHASE_RATE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseReport {
    pub alpha_modulus_spread: f64,
    pub beta_modulus_spread: f64,
    /// Least-squares rate of the unwrapped `arg α(t)`; `None` if `α ≡ 0`.
    pub alpha_rate: Option<f64>,
    /// Largest deviation of the unwrapped phase from its fitted line.
    pub phase_linearity_residual: f64,
    /// `−2E_R`.
    pub expected_rate: f64,
    pub moduli_constant: bool,
    pub rate_matches: bool,
}

impl PhaseReport {
    pub fn holds(&self) -> bool {
        self.moduli_constant && self.rate_matches
    }
}

fn unwrap_phases(zs: &[C64]) -> Vec<f64> {
    use std::f64::consts::{PI, TAU};
    let mut out: Vec<f64> = Vec::with_capacity(zs.len());
    for z in zs {
        let raw = z.arg();
        let next = match out.last() {
            None => raw,
            Some(&prev) => {
                let mut d = raw - prev.rem_euclid(TAU);
                d = (d + PI).rem_euclid(TAU) - PI;
                prev + d
            }
        };
        out.push(next);
    }
    out
}

fn spread(xs: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
        (lo.min(x), hi.max(x))
    });
    if hi >= lo {
        hi - lo
    } else {
        0.0
    }
}

/// Tests the single-resonance phase law: `|α|`, `|β|` constant and `arg α`
/// advancing at rate `−2E_R`.
///
/// The phase is unwrapped step by step, so the grid must resolve it
/// (`|2E_R|·Δt < π`).
pub fn phase_constancy_check(
    space: &GamowSpace,
    traj: &CommutatorTrajectory,
) -> Result<PhaseReport> {
    if space.n_resonances() != 1 {
        return Err(Error::UnsupportedResonanceCount {
            op: "phase_constancy_check",
            expected: 1,
            actual: space.n_resonances(),
        });
    }
    let reports = (0..traj.len())
        .map(|k| ansatz_report(space, traj, k))
        .collect::<Result<Vec<_>>>()?;
    let alpha: Vec<C64> = reports.iter().map(|r| r.alpha[0]).collect();
    let beta: Vec<C64> = reports.iter().map(|r| r.beta[0]).collect();
    let alpha_modulus_spread = spread(alpha.iter().map(|z| z.norm()));
    let beta_modulus_spread = spread(beta.iter().map(|z| z.norm()));
    let expected_rate = -2.0 * space.resonances()[0].energy();

    let (alpha_rate, phase_linearity_residual) = if alpha.iter().all(|z| *z == ZERO) {
        (None, 0.0)
    } else if traj.len() == 1 {
        (Some(0.0), 0.0)
    } else {
        let fit = linear_fit(&traj.times, &unwrap_phases(&alpha))?;
        (Some(fit.slope), fit.max_abs_residual)
    };
    let scale = alpha
        .iter()
        .chain(&beta)
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    let moduli_constant =
        alpha_modulus_spread <= MODULUS_TOL * scale && beta_modulus_spread <= MODULUS_TOL * scale;
    let rate_matches = match alpha_rate {
        None => true,
        Some(rate) => {
            (rate - expected_rate).abs() <= PHASE_RATE_TOL
                && phase_linearity_residual <= PHASE_RATE_TOL
        }
    };
    Ok(PhaseReport {
        alpha_modulus_spread,
        beta_modulus_spread,
        alpha_rate,
        phase_linearity_residual,
        expected_rate,
        moduli_constant,
        rate_matches,
    })
}

/// First time on the grid `0, dt, 2dt, …, ≤ t_max` at which the commutator
/// norm drops below `eps`.
pub fn commutation_time(
    space: &GamowSpace,
    o1: &ComplexMatrix,
    o2: &ComplexMatrix,
    eps: f64,
    variant: EvolutionVariant,
    t_max: f64,
    dt: f64,
) -> Result<Option<f64>> {
    for (name, v) in [("eps", eps), ("t_max", t_max), ("dt", dt)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    check_observable(space, o1, "commutation_time")?;
    check_observable(space, o2, "commutation_time")?;
    let steps = (t_max / dt + 1e-9).floor() as usize;
    for k in 0..=steps {
        let t = k as f64 * dt;
        if evolved_commutator(space, o1, o2, t, variant)?.frobenius_norm() < eps {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// `|O₁(t)_{G,D}| / |O₁_{G,D}|` under the `Invertible` variant for one
/// resonance; grows as `e^{tΓ}`.
pub fn growth_witness(space: &GamowSpace, o1: &ComplexMatrix, t: f64) -> Result<f64> {
    if space.n_resonances() != 1 {
        return Err(Error::UnsupportedResonanceCount {
            op: "growth_witness",
            expected: 1,
            actual: space.n_resonances(),
        });
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "growth_witness needs t >= 0, got {t}"
        )));
    }
    check_observable(space, o1, "growth_witness")?;
    let reference = o1[(1, 0)].norm();
    if reference == 0.0 {
        return Err(Error::UndefinedWitness);
    }
    let u = evolution_operator(space, t, EvolutionVariant::Invertible)?;
    Ok(u.heisenberg(o1)?[(1, 0)].norm() / reference)
}

/// `−2·Γ_min`, the asymptotic log-norm slope.
pub fn expected_slope(space: &GamowSpace) -> f64 {
    -2.0 * space.min_width()
}
