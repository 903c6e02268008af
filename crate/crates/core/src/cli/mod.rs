// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: `run`, `validate` and `demo`.
//!
//! Exit codes: `0` success, `2` invalid input, `3` runtime failure.

pub mod run;
pub mod scenario;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::error::Error;
use scenario::{ChannelSpec, Diagnostic, GridSpec, MatrixSpec, ResonanceSpec, ScenarioFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid scenario")]
    Validation(Vec<Diagnostic>),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Runtime(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => EXIT_VALIDATION,
            Self::Io(_) | Self::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gamowlab",
    version,
    about = "Commutator decay under non-unitary Heisenberg dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a scenario and write CSV data and a fit report.
    Run {
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a scenario file without running it.
    Validate { scenario: PathBuf },
    /// Write ready-to-run example scenarios.
    Demo {
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Run { scenario, out } => cmd_run(&scenario, &out),
        Command::Validate { scenario } => cmd_validate(&scenario),
        Command::Demo { out } => cmd_demo(&out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            match &e {
                CliError::Validation(diags) => {
                    for d in diags {
                        eprintln!("error: {d}");
                    }
                }
                other => eprintln!("error: {other}"),
            }
            e.exit_code()
        }
    }
}

fn cmd_run(path: &Path, out: &Path) -> Result<(), CliError> {
    let scenario = scenario::load(path).map_err(CliError::Validation)?;
    for line in run::run_scenario(&scenario, out)? {
        println!("{line}");
    }
    Ok(())
}

fn cmd_validate(path: &Path) -> Result<(), CliError> {
    let diags = scenario::validate(path);
    if diags.is_empty() {
        println!("{}: ok", path.display());
        Ok(())
    } else {
        Err(CliError::Validation(diags))
    }
}

fn cmd_demo(out: &Path) -> Result<(), CliError> {
    fs::create_dir_all(out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out.display())))?;
    for (name, file) in demo_scenarios() {
        let path = out.join(format!("{name}.json"));
        let mut text = serde_json::to_string_pretty(&file).expect("scenario serializes");
        text.push('\n');
        fs::write(&path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn real2(rows: [[f64; 2]; 2]) -> MatrixSpec {
    rows.iter()
        .map(|r| r.iter().map(|&x| [x, 0.0]).collect())
        .collect()
}

/// The bundled examples: `damping`, `resonance` and `lattice`.
pub fn demo_scenarios() -> Vec<(&'static str, ScenarioFile)> {
    let sigma_x = real2([[0.0, 1.0], [1.0, 0.0]]);
    let sigma_y: MatrixSpec = vec![vec![[0.0, 0.0], [0.0, -1.0]], vec![[0.0, 1.0], [0.0, 0.0]]];
    let sigma_z = real2([[1.0, 0.0], [0.0, -1.0]]);
    let empty = ScenarioFile {
        kind: String::new(),
        channel: None,
        resonances: None,
        variant: None,
        observables: None,
        grid: None,
        eps: None,
        fit_window: None,
    };
    let damping = ScenarioFile {
        kind: "damping".into(),
        channel: Some(ChannelSpec { p: 0.5, n_max: 40 }),
        observables: Some(vec![sigma_x.clone(), sigma_z]),
        eps: Some(1e-10),
        ..empty.clone()
    };
    let resonance = ScenarioFile {
        kind: "resonance".into(),
        resonances: Some(vec![ResonanceSpec {
            energy: 1.0,
            width: 0.5,
        }]),
        variant: Some("hermitian".into()),
        observables: Some(vec![sigma_x, sigma_y]),
        grid: Some(GridSpec {
            t_start: 0.0,
            t_end: 20.0,
            steps: 201,
        }),
        eps: Some(1e-6),
        ..empty.clone()
    };
    let lattice = ScenarioFile {
        kind: "lattice".into(),
        observables: Some(vec![
            real2([[1.0, 0.0], [0.0, 0.0]]),
            real2([[0.5, 0.5], [0.5, 0.5]]),
            real2([[0.5, -0.5], [-0.5, 0.5]]),
        ]),
        ..empty
    };
    vec![
        ("damping", damping),
        ("resonance", resonance),
        ("lattice", lattice),
    ]
}
