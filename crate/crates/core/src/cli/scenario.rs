// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Scenario files: the JSON schema, its validation, and the checked form
//! consumed by the runner.
//!
//! Complex entries are `[re, im]` pairs and matrices are lists of rows:
//!
//! ```json
//! {
//!   "kind": "resonance",
//!   "resonances": [{ "energy": 1.0, "width": 0.5 }],
//!   "variant": "hermitian",
//!   "observables": [
//!     [[[0, 0], [1, 0]], [[1, 0], [0, 0]]],
//!     [[[0, 0], [0, -1]], [[0, 1], [0, 0]]]
//!   ],
//!   "grid": { "t_start": 0, "t_end": 20, "steps": 201 },
//!   "eps": 1e-6
//! }
//! ```

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cmatrix::{ComplexMatrix, C64};
use crate::commutators::linear_grid;
use crate::error::Error;
use crate::evolution::EvolutionVariant;
use crate::gamow::{GamowSpace, Resonance};
use crate::qlattice::Projector;

pub const DEFAULT_RESONANCE_EPS: f64 = 1e-6;
pub const DEFAULT_DAMPING_EPS: f64 = 1e-10;

/// A matrix as rows of `[re, im]` pairs.
pub type MatrixSpec = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channel: Option<ChannelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resonances: Option<Vec<ResonanceSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observables: Option<Vec<MatrixSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit_window: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub p: f64,
    pub n_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonanceSpec {
    pub energy: f64,
    pub width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub t_start: f64,
    pub t_end: f64,
    /// Number of grid points, endpoints included.
    pub steps: usize,
}

/// One validation finding, tied to a field path such as
/// `resonances[0].width`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub field: String,
    pub message: String,
}

impl Diagnostic {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Clone)]
pub struct DampingScenario {
    pub p: f64,
    pub n_max: usize,
    pub observables: Vec<ComplexMatrix>,
    pub eps: f64,
    pub fit_window: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ResonanceScenario {
    pub space: GamowSpace,
    pub variant: EvolutionVariant,
    pub o1: ComplexMatrix,
    pub o2: ComplexMatrix,
    pub times: Vec<f64>,
    pub eps: f64,
    pub fit_window: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct LatticeScenario {
    pub a: Projector,
    pub b: Projector,
    pub c: Projector,
}

#[derive(Debug, Clone)]
pub enum Scenario {
    Damping(DampingScenario),
    Resonance(Box<ResonanceScenario>),
    Lattice(LatticeScenario),
}

/// Parses JSON text against the schema; schema errors name the field path.
pub fn parse(text: &str) -> Result<ScenarioFile, Vec<Diagnostic>> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." {
            "scenario".to_string()
        } else {
            path
        };
        vec![Diagnostic::new(field, e.into_inner().to_string())]
    })
}

/// Reads, parses and checks a scenario file.
pub fn load(path: &Path) -> Result<Scenario, Vec<Diagnostic>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        vec![Diagnostic::new(
            "file",
            format!("cannot read {}: {e}", path.display()),
        )]
    })?;
    check(&parse(&text)?)
}

/// All diagnostics for a scenario file; empty means valid.
pub fn validate(path: &Path) -> Vec<Diagnostic> {
    load(path).err().unwrap_or_default()
}

/// Turns a parsed file into a runnable scenario, collecting every problem.
pub fn check(file: &ScenarioFile) -> Result<Scenario, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let scenario = match file.kind.as_str() {
        "damping" => check_damping(file, &mut diags).map(Scenario::Damping),
        "resonance" => check_resonance(file, &mut diags).map(|s| Scenario::Resonance(Box::new(s))),
        "lattice" => check_lattice(file, &mut diags).map(Scenario::Lattice),
        other => {
            diags.push(Diagnostic::new(
                "kind",
                format!("unknown kind {other:?} (expected damping, resonance or lattice)"),
            ));
            None
        }
    };
    match scenario {
        Some(s) if diags.is_empty() => Ok(s),
        _ => Err(diags),
    }
}

fn reject_unused(present: bool, field: &str, kind: &str, diags: &mut Vec<Diagnostic>) {
    if present {
        diags.push(Diagnostic::new(
            field,
            format!("not used by {kind} scenarios"),
        ));
    }
}

fn check_eps(eps: Option<f64>, default: f64, diags: &mut Vec<Diagnostic>) -> f64 {
    let eps = eps.unwrap_or(default);
    if !(eps.is_finite() && eps > 0.0) {
        diags.push(Diagnostic::new(
            "eps",
            format!("must be positive and finite, got {eps}"),
        ));
    }
    eps
}

fn check_window(window: Option<f64>, diags: &mut Vec<Diagnostic>) -> Option<f64> {
    if let Some(w) = window {
        if !(w > 0.0 && w <= 1.0) {
            diags.push(Diagnostic::new(
                "fit_window",
                format!("must be in (0, 1], got {w}"),
            ));
        }
    }
    window
}

fn to_matrix(spec: &MatrixSpec, field: &str) -> Result<ComplexMatrix, Diagnostic> {
    let n = spec.len();
    if n == 0 {
        return Err(Diagnostic::new(field, "matrix has no rows"));
    }
    if let Some((r, row)) = spec.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(Diagnostic::new(
            field,
            format!(
                "matrix must be square: row {r} has {} entries, expected {n}",
                row.len()
            ),
        ));
    }
    let data = spec
        .iter()
        .flatten()
        .map(|&[re, im]| C64::new(re, im))
        .collect();
    ComplexMatrix::new(n, n, data).map_err(|e| Diagnostic::new(field, e.to_string()))
}

/// Converts the observable list, requiring `count` matrices (or at least
/// `count` when `at_least`) of size `dim`.
fn observables(
    file: &ScenarioFile,
    count: usize,
    at_least: bool,
    dim: Option<usize>,
    diags: &mut Vec<Diagnostic>,
) -> Option<Vec<ComplexMatrix>> {
    let Some(specs) = &file.observables else {
        diags.push(Diagnostic::new("observables", "required"));
        return None;
    };
    let count_ok = if at_least {
        specs.len() >= count
    } else {
        specs.len() == count
    };
    if !count_ok {
        let want = if at_least {
            format!("at least {count}")
        } else {
            format!("exactly {count}")
        };
        diags.push(Diagnostic::new(
            "observables",
            format!(
                "{} scenarios need {want} matrices, got {}",
                file.kind,
                specs.len()
            ),
        ));
    }
    let mut out = Vec::with_capacity(specs.len());
    let mut expected = dim;
    for (i, spec) in specs.iter().enumerate() {
        let field = format!("observables[{i}]");
        match to_matrix(spec, &field) {
            Ok(m) => {
                let n = m.rows();
                match expected {
                    Some(d) if d != n => diags.push(Diagnostic::new(
                        field,
                        format!("dimension mismatch: expected a {d}x{d} matrix, got {n}x{n}"),
                    )),
                    _ => {
                        expected = Some(n);
                        out.push(m);
                    }
                }
            }
            Err(d) => diags.push(d),
        }
    }
    (count_ok && out.len() == specs.len()).then_some(out)
}

fn check_damping(file: &ScenarioFile, diags: &mut Vec<Diagnostic>) -> Option<DampingScenario> {
    reject_unused(file.resonances.is_some(), "resonances", "damping", diags);
    reject_unused(file.variant.is_some(), "variant", "damping", diags);
    reject_unused(file.grid.is_some(), "grid", "damping", diags);
    let channel = match file.channel {
        Some(ch) => {
            if !(0.0..=1.0).contains(&ch.p) {
                diags.push(Diagnostic::new(
                    "channel.p",
                    format!("must be in [0, 1], got {}", ch.p),
                ));
            }
            if ch.n_max == 0 {
                diags.push(Diagnostic::new("channel.n_max", "must be at least 1"));
            }
            Some(ch)
        }
        None => {
            diags.push(Diagnostic::new("channel", "required for damping scenarios"));
            None
        }
    };
    let obs = observables(file, 2, true, Some(2), diags);
    let eps = check_eps(file.eps, DEFAULT_DAMPING_EPS, diags);
    let fit_window = check_window(file.fit_window, diags);
    let channel = channel?;
    Some(DampingScenario {
        p: channel.p,
        n_max: channel.n_max,
        observables: obs?,
        eps,
        fit_window,
    })
}

fn check_resonance(file: &ScenarioFile, diags: &mut Vec<Diagnostic>) -> Option<ResonanceScenario> {
    reject_unused(file.channel.is_some(), "channel", "resonance", diags);
    let space = match &file.resonances {
        None => {
            diags.push(Diagnostic::new(
                "resonances",
                "required for resonance scenarios",
            ));
            None
        }
        Some(list) if list.is_empty() => {
            diags.push(Diagnostic::new(
                "resonances",
                "at least one resonance is required",
            ));
            None
        }
        Some(list) => {
            let mut resonances = Vec::with_capacity(list.len());
            for (i, r) in list.iter().enumerate() {
                match Resonance::new(r.energy, r.width) {
                    Ok(res) => resonances.push(res),
                    Err(Error::NonPositiveWidth(w)) => diags.push(Diagnostic::new(
                        format!("resonances[{i}].width"),
                        format!("width must be strictly positive, got {w}"),
                    )),
                    Err(e) => diags.push(Diagnostic::new(
                        format!("resonances[{i}].energy"),
                        e.to_string(),
                    )),
                }
            }
            if resonances.len() == list.len() {
                GamowSpace::new(resonances)
                    .map_err(|e| diags.push(Diagnostic::new("resonances", e.to_string())))
                    .ok()
            } else {
                None
            }
        }
    };
    let variant = match file.variant.as_deref() {
        None => Some(EvolutionVariant::Hermitian),
        Some(name) => name
            .parse()
            .map_err(|msg: String| diags.push(Diagnostic::new("variant", msg)))
            .ok(),
    };
    let dim = space.as_ref().map(GamowSpace::dim);
    let obs = observables(file, 2, false, dim, diags);
    let times = match file.grid {
        None => {
            diags.push(Diagnostic::new("grid", "required for resonance scenarios"));
            None
        }
        Some(g) => {
            if g.steps < 2 {
                diags.push(Diagnostic::new(
                    "grid.steps",
                    format!("must be at least 2, got {}", g.steps),
                ));
                None
            } else if !(g.t_start.is_finite() && g.t_end.is_finite() && g.t_end > g.t_start) {
                diags.push(Diagnostic::new(
                    "grid.t_end",
                    format!("must exceed t_start ({} <= {})", g.t_end, g.t_start),
                ));
                None
            } else {
                linear_grid(g.t_start, g.t_end, g.steps).ok()
            }
        }
    };
    let eps = check_eps(file.eps, DEFAULT_RESONANCE_EPS, diags);
    let fit_window = check_window(file.fit_window, diags);
    let mut obs = obs?.into_iter();
    Some(ResonanceScenario {
        space: space?,
        variant: variant?,
        o1: obs.next()?,
        o2: obs.next()?,
        times: times?,
        eps,
        fit_window,
    })
}

fn check_lattice(file: &ScenarioFile, diags: &mut Vec<Diagnostic>) -> Option<LatticeScenario> {
    for (present, field) in [
        (file.channel.is_some(), "channel"),
        (file.resonances.is_some(), "resonances"),
        (file.variant.is_some(), "variant"),
        (file.grid.is_some(), "grid"),
        (file.eps.is_some(), "eps"),
        (file.fit_window.is_some(), "fit_window"),
    ] {
        reject_unused(present, field, "lattice", diags);
    }
    let mats = observables(file, 3, false, None, diags)?;
    let mut projectors = Vec::with_capacity(3);
    for (i, m) in mats.into_iter().enumerate() {
        match Projector::new(m) {
            Ok(p) => projectors.push(p),
            Err(e) => diags.push(Diagnostic::new(format!("observables[{i}]"), e.to_string())),
        }
    }
    let mut it = projectors.into_iter();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), Some(c)) => Some(LatticeScenario { a, b, c }),
        _ => None,
    }
}

/// `[re, im]` rows for a matrix.
pub fn matrix_spec(m: &ComplexMatrix) -> MatrixSpec {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| [m[(r, c)].re, m[(r, c)].im])
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sx() -> MatrixSpec {
        vec![vec![[0.0, 0.0], [1.0, 0.0]], vec![[1.0, 0.0], [0.0, 0.0]]]
    }

    fn sz() -> MatrixSpec {
        vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0], [-1.0, 0.0]]]
    }

    fn resonance_file() -> ScenarioFile {
        ScenarioFile {
            kind: "resonance".into(),
            channel: None,
            resonances: Some(vec![ResonanceSpec {
                energy: 1.0,
                width: 0.5,
            }]),
            variant: None,
            observables: Some(vec![sx(), sz()]),
            grid: Some(GridSpec {
                t_start: 0.0,
                t_end: 5.0,
                steps: 11,
            }),
            eps: None,
            fit_window: None,
        }
    }

    #[test]
    fn valid_resonance_file() {
        let Scenario::Resonance(s) = check(&resonance_file()).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(s.variant, EvolutionVariant::Hermitian);
        assert_eq!(s.times.len(), 11);
        assert_eq!(s.eps, DEFAULT_RESONANCE_EPS);
    }

    #[test]
    fn negative_width_names_the_field() {
        let mut f = resonance_file();
        f.resonances = Some(vec![ResonanceSpec {
            energy: 1.0,
            width: -1.0,
        }]);
        let diags = check(&f).unwrap_err();
        assert_eq!(diags.len(), 1, "{diags:?}");
        assert_eq!(diags[0].field, "resonances[0].width");
        assert!(diags[0].message.contains("positive"));
    }

    #[test]
    fn damping_dimension_diagnostic() {
        let f = ScenarioFile {
            kind: "damping".into(),
            channel: Some(ChannelSpec { p: 0.5, n_max: 10 }),
            resonances: None,
            variant: None,
            observables: Some(vec![sx(), vec![vec![[1.0, 0.0]; 3]; 3]]),
            grid: None,
            eps: None,
            fit_window: None,
        };
        let diags = check(&f).unwrap_err();
        assert_eq!(diags.len(), 1, "{diags:?}");
        assert_eq!(diags[0].field, "observables[1]");
        assert!(diags[0].message.contains("dimension"));
    }

    #[test]
    fn schema_errors_carry_paths() {
        let diags =
            parse(r#"{"kind": "resonance", "resonances": [{"energy": 1, "width": "wide"}]}"#)
                .unwrap_err();
        assert_eq!(diags[0].field, "resonances[0].width");
        let diags = parse(r#"{"kind": "damping", "colour": 3}"#).unwrap_err();
        assert!(diags[0].message.contains("unknown field `colour`"));
        assert!(parse("not json").is_err());
    }

    #[test]
    fn collects_several_findings() {
        let mut f = resonance_file();
        f.variant = Some("unitary".into());
        f.grid = Some(GridSpec {
            t_start: 1.0,
            t_end: 1.0,
            steps: 5,
        });
        f.eps = Some(0.0);
        f.channel = Some(ChannelSpec { p: 0.1, n_max: 1 });
        let fields: Vec<String> = check(&f)
            .unwrap_err()
            .into_iter()
            .map(|d| d.field)
            .collect();
        assert_eq!(fields, ["channel", "variant", "grid.t_end", "eps"]);
    }

    #[test]
    fn lattice_requires_projectors() {
        let f = ScenarioFile {
            kind: "lattice".into(),
            channel: None,
            resonances: None,
            variant: None,
            observables: Some(vec![sz(), sx(), sx()]),
            grid: None,
            eps: None,
            fit_window: None,
        };
        let diags = check(&f).unwrap_err();
        assert_eq!(diags.len(), 3);
        assert!(diags.iter().all(|d| d.message.contains("projector")));
    }

    #[test]
    fn unknown_kind() {
        let mut f = resonance_file();
        f.kind = "thermal".into();
        assert_eq!(check(&f).unwrap_err()[0].field, "kind");
    }

    #[test]
    fn matrix_spec_round_trip() {
        let m = to_matrix(&sz(), "x").unwrap();
        assert_eq!(matrix_spec(&m), sz());
    }
}
