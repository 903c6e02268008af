// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Executes checked scenarios and writes `commutators.csv`, `fit.txt` and,
//! for lattice scenarios, `lattice.csv` and `lattice.txt`.
//!
//! Floats are written with Rust's shortest round-trip formatting, so equal
//! inputs give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::channels::{damping_channel, damping_commutator_exponent, damping_limit};
use crate::cmatrix::{commutator, ComplexMatrix};
use crate::commutators::{
    ansatz_report, envelope_fit, envelope_fit_window, expected_slope, log_linear_fit, trajectory,
    DecayFit,
};
use crate::error::Error;
use crate::evolution::{row_validity, EvolutionVariant};
use crate::qlattice::{abelian_certificate, compatible, distributivity_check, Projector};

use super::scenario::{DampingScenario, LatticeScenario, ResonanceScenario, Scenario};
use super::CliError;

/// Shortest round-trip decimal form.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Runs `scenario`, writing outputs under `out`, and returns the summary
/// lines to print.
pub fn run_scenario(scenario: &Scenario, out: &Path) -> Result<Vec<String>, CliError> {
    fs::create_dir_all(out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out.display())))?;
    match scenario {
        Scenario::Damping(s) => run_damping(s, out),
        Scenario::Resonance(s) => run_resonance(s, out),
        Scenario::Lattice(s) => run_lattice(s, out),
    }
}

fn fit_lines(report: &mut String, fit: &DecayFit, expected: Option<f64>) {
    let _ = writeln!(report, "fit_points: {}", fit.n_points);
    let _ = writeln!(report, "slope: {}", fmt_f64(fit.slope));
    let _ = writeln!(report, "intercept: {}", fmt_f64(fit.intercept));
    let _ = writeln!(
        report,
        "max_abs_residual: {}",
        fmt_f64(fit.max_abs_residual)
    );
    match expected {
        Some(e) => {
            let _ = writeln!(report, "expected_slope: {}", fmt_f64(e));
            let _ = writeln!(report, "abs_deviation: {}", fmt_f64((fit.slope - e).abs()));
        }
        None => {
            let _ = writeln!(report, "expected_slope: none");
            let _ = writeln!(report, "abs_deviation: none");
        }
    }
}

fn run_resonance(s: &ResonanceScenario, out: &Path) -> Result<Vec<String>, CliError> {
    let traj = trajectory(&s.space, &s.o1, &s.o2, &s.times, s.variant)?;

    let mut csv = String::from(
        "t,norm,log_norm,alpha_re,alpha_im,beta_re,beta_im,ansatz_residual,taqm_valid\n",
    );
    for (k, (&t, &norm)) in traj.times().iter().zip(traj.norms()).enumerate() {
        let rep = ansatz_report(&s.space, &traj, k)?;
        let (alpha, beta) = (rep.alpha[0], rep.beta[0]);
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            fmt_f64(t),
            fmt_f64(norm),
            fmt_f64(norm.ln()),
            fmt_f64(alpha.re),
            fmt_f64(alpha.im),
            fmt_f64(beta.re),
            fmt_f64(beta.im),
            fmt_f64(rep.residual),
            row_validity(s.variant, t),
        );
    }
    write_file(out, "commutators.csv", &csv)?;

    let fit = match s.fit_window {
        Some(w) => envelope_fit_window(&traj, w),
        None => envelope_fit(&traj),
    }?;
    let expected = expected_slope(&s.space);
    let t_c = traj
        .times()
        .iter()
        .zip(traj.norms())
        .find(|(_, &n)| n < s.eps)
        .map(|(&t, _)| t);

    let mut report = String::new();
    let _ = writeln!(report, "kind: resonance");
    let _ = writeln!(report, "variant: {}", s.variant);
    let conjugation = match s.variant {
        EvolutionVariant::Hermitian => "U^dagger O U",
        EvolutionVariant::Invertible => "U(t) O U(-t)",
        EvolutionVariant::SemigroupD => "U O U^dagger (extension)",
    };
    let _ = writeln!(report, "conjugation: {conjugation}");
    let _ = writeln!(report, "resonances: {}", s.space.n_resonances());
    let _ = writeln!(report, "gamma_min: {}", fmt_f64(s.space.min_width()));
    let window = s.fit_window.unwrap_or(if s.space.n_resonances() == 1 {
        1.0
    } else {
        0.5
    });
    let _ = writeln!(report, "fit_window: {}", fmt_f64(window));
    fit_lines(&mut report, &fit, Some(expected));
    let _ = writeln!(report, "eps: {}", fmt_f64(s.eps));
    let _ = writeln!(
        report,
        "commutation_time: {}",
        t_c.map_or_else(|| "not reached".to_string(), fmt_f64)
    );
    write_file(out, "fit.txt", &report)?;

    Ok(vec![format!(
        "resonance ({}, N={}): slope {} (expected {}, deviation {:.3e}); t_c = {}",
        s.variant,
        s.space.n_resonances(),
        fmt_f64(fit.slope),
        fmt_f64(expected),
        (fit.slope - expected).abs(),
        t_c.map_or_else(|| "not reached".to_string(), fmt_f64),
    )])
}

fn worst_pair_norm(obs: &[ComplexMatrix]) -> Result<f64, Error> {
    let mut worst = 0.0f64;
    for (i, a) in obs.iter().enumerate() {
        for b in &obs[i + 1..] {
            worst = worst.max(commutator(a, b)?.frobenius_norm());
        }
    }
    Ok(worst)
}

fn run_damping(s: &DampingScenario, out: &Path) -> Result<Vec<String>, CliError> {
    let channel = damping_channel(s.p)?;
    let mut current = s.observables.clone();
    let mut steps = Vec::with_capacity(s.n_max + 1);
    let mut norms = Vec::with_capacity(s.n_max + 1);
    for n in 0..=s.n_max {
        if n > 0 {
            current = current
                .iter()
                .map(|o| channel.apply_heisenberg(o))
                .collect::<Result<_, _>>()?;
        }
        steps.push(n as f64);
        norms.push(worst_pair_norm(&current)?);
    }

    let mut csv = String::from("n,norm\n");
    for (n, norm) in norms.iter().enumerate() {
        let _ = writeln!(csv, "{n},{}", fmt_f64(*norm));
    }
    write_file(out, "commutators.csv", &csv)?;

    let window = s.fit_window.unwrap_or(1.0);
    let keep = ((steps.len() as f64 * window).ceil() as usize).clamp(2, steps.len());
    let start = steps.len() - keep;
    let fit = log_linear_fit(&steps[start..], &norms[start..])?;

    // The slowest decaying pair sets the asymptotic rate.
    let mut exponent: Option<f64> = None;
    for (i, a) in s.observables.iter().enumerate() {
        for b in &s.observables[i + 1..] {
            if let Some(k) = damping_commutator_exponent(a, b)? {
                exponent = Some(exponent.map_or(k, |e| e.min(k)));
            }
        }
    }
    let expected = exponent.map(|k| k * (1.0 - s.p).ln());
    let n_c = norms.iter().position(|&n| n < s.eps);
    let limits = s
        .observables
        .iter()
        .map(damping_limit)
        .collect::<Result<Vec<_>, _>>()?;
    let limit_abelian = abelian_certificate(&limits, 1e-12)?.abelian;

    let mut report = String::new();
    let _ = writeln!(report, "kind: damping");
    let _ = writeln!(report, "p: {}", fmt_f64(s.p));
    let _ = writeln!(report, "n_max: {}", s.n_max);
    let _ = writeln!(report, "observables: {}", s.observables.len());
    let _ = writeln!(report, "fit_window: {}", fmt_f64(window));
    fit_lines(&mut report, &fit, expected);
    let _ = writeln!(report, "eps: {}", fmt_f64(s.eps));
    let _ = writeln!(
        report,
        "commutation_time: {}",
        n_c.map_or_else(|| "not reached".to_string(), |n| n.to_string())
    );
    let _ = writeln!(report, "limit_abelian: {limit_abelian}");
    write_file(out, "fit.txt", &report)?;

    Ok(vec![format!(
        "damping (p={}, n_max={}): slope {} per step (expected {}); commutation step {}",
        fmt_f64(s.p),
        s.n_max,
        fmt_f64(fit.slope),
        expected.map_or_else(|| "none".to_string(), fmt_f64),
        n_c.map_or_else(|| "not reached".to_string(), |n| n.to_string()),
    )])
}

fn verdict(equal: bool) -> &'static str {
    if equal {
        "HOLDS"
    } else {
        "VIOLATED"
    }
}

fn run_lattice(s: &LatticeScenario, out: &Path) -> Result<Vec<String>, CliError> {
    let report = distributivity_check(&s.a, &s.b, &s.c)?;

    let mut csv = String::from("relation,lhs_rank,rhs_rank,distance,equal\n");
    let rows: [(&str, &Projector, &Projector, bool); 2] = [
        (
            "meet",
            &report.lhs_meet,
            &report.rhs_meet,
            report.meet_equal,
        ),
        (
            "join",
            &report.lhs_join,
            &report.rhs_join,
            report.join_equal,
        ),
    ];
    for (name, lhs, rhs, equal) in rows {
        let _ = writeln!(
            csv,
            "{name},{},{},{},{equal}",
            lhs.rank(),
            rhs.rank(),
            fmt_f64(lhs.distance(rhs))
        );
    }
    write_file(out, "lattice.csv", &csv)?;

    let meet_line = format!("meet distributivity: {}", verdict(report.meet_equal));
    let join_line = format!("join distributivity: {}", verdict(report.join_equal));
    let mut text = String::new();
    let _ = writeln!(text, "{meet_line}");
    let _ = writeln!(text, "{join_line}");
    let _ = writeln!(
        text,
        "distributive inequalities: {}",
        if report.inequality_holds {
            "hold"
        } else {
            "FAIL"
        }
    );
    let named = [("a", &s.a), ("b", &s.b), ("c", &s.c)];
    for i in 0..3 {
        for j in i + 1..3 {
            let _ = writeln!(
                text,
                "compatible {},{}: {}",
                named[i].0,
                named[j].0,
                compatible(named[i].1, named[j].1)?
            );
        }
    }
    write_file(out, "lattice.txt", &text)?;

    if !report.inequality_holds {
        return Err(CliError::Runtime(Error::InvalidParameter(
            "distributive inequality failed; subspace rank decisions are unreliable for these inputs".into(),
        )));
    }
    Ok(vec![meet_line, join_line])
}
