// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::json;

fn gamowlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gamowlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_json(dir: &Path, name: &str, value: &serde_json::Value) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fit_value(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("missing {key} in fit.txt"))
        .to_string()
}

fn resonance_scenario() -> serde_json::Value {
    json!({
        "kind": "resonance",
        "resonances": [{ "energy": 1.0, "width": 0.5 }],
        "variant": "hermitian",
        "observables": [
            [[[0, 0], [1, 0]], [[1, 0], [0, 0]]],
            [[[0, 0], [0, -1]], [[0, 1], [0, 0]]]
        ],
        "grid": { "t_start": 0, "t_end": 5, "steps": 101 },
        "eps": 1e-3
    })
}

#[test]
fn resonance_run_writes_csv_and_fit() {
    let dir = tempfile::tempdir().unwrap();
    let scen = write_json(dir.path(), "s.json", &resonance_scenario());
    let out = dir.path().join("out");
    let o = gamowlab(&["run", &scen, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let csv = fs::read_to_string(out.join("commutators.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,norm,log_norm,alpha_re,alpha_im,beta_re,beta_im,ansatz_residual,taqm_valid"
    );
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 101);
    for row in &rows {
        assert_eq!(row.len(), 9);
        let t: f64 = row[0].parse().unwrap();
        let norm: f64 = row[1].parse().unwrap();
        // [σx, σy] = 2iσz, Frobenius norm 2√2.
        let expected = 2.0 * 2f64.sqrt() * (-t).exp();
        assert!((norm - expected).abs() <= 1e-12 * expected);
        let log_norm: f64 = row[2].parse().unwrap();
        assert!((log_norm - norm.ln()).abs() < 1e-12);
        let alpha = (
            row[3].parse::<f64>().unwrap(),
            row[4].parse::<f64>().unwrap(),
        );
        assert!(alpha.0.abs() < 1e-12 && (alpha.1 - 2.0).abs() < 1e-12);
        assert_eq!(row[8], "true");
    }

    let fit = fs::read_to_string(out.join("fit.txt")).unwrap();
    let slope: f64 = fit_value(&fit, "slope").parse().unwrap();
    assert!((slope + 1.0).abs() < 1e-9);
    assert_eq!(fit_value(&fit, "expected_slope"), "-1.0");
    assert_eq!(fit_value(&fit, "variant"), "hermitian");
    // ln(2√2 / 1e-3) ≈ 7.947, first grid point after it is 7.95 > t_end.
    assert_eq!(fit_value(&fit, "commutation_time"), "not reached");
}

#[test]
fn invertible_rows_are_flagged_outside_taqm() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = resonance_scenario();
    s["variant"] = json!("invertible");
    let scen = write_json(dir.path(), "s.json", &s);
    let out = dir.path().join("out");
    let o = gamowlab(&["run", &scen, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("commutators.csv")).unwrap();
    let flags: Vec<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(flags[0], "true");
    assert!(flags[1..].iter().all(|f| *f == "false"));
}

#[test]
fn damping_run_writes_step_norms() {
    let dir = tempfile::tempdir().unwrap();
    let s = json!({
        "kind": "damping",
        "channel": { "p": 0.5, "n_max": 30 },
        "observables": [
            [[[0, 0], [1, 0]], [[1, 0], [0, 0]]],
            [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]
        ]
    });
    let scen = write_json(dir.path(), "d.json", &s);
    let out = dir.path().join("out");
    let o = gamowlab(&["run", &scen, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("commutators.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "n,norm");
    for (n, line) in lines.enumerate() {
        let (step, norm) = line.split_once(',').unwrap();
        assert_eq!(step.parse::<usize>().unwrap(), n);
        let expected = 2.0 * 2f64.sqrt() * 0.5f64.powf(1.5 * n as f64);
        let norm: f64 = norm.parse().unwrap();
        assert!(
            (norm - expected).abs() <= 1e-12 * expected,
            "n={n}: {norm} vs {expected}"
        );
    }
    let fit = fs::read_to_string(out.join("fit.txt")).unwrap();
    let expected: f64 = fit_value(&fit, "expected_slope").parse().unwrap();
    assert!((expected - 1.5 * 0.5f64.ln()).abs() < 1e-15);
    assert_eq!(fit_value(&fit, "limit_abelian"), "true");
}

#[test]
fn lattice_run_reports_violation() {
    let dir = tempfile::tempdir().unwrap();
    let demo = dir.path().join("demo");
    assert_eq!(
        gamowlab(&["demo", "--out", demo.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    let out = dir.path().join("out");
    let o = gamowlab(&[
        "run",
        demo.join("lattice.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("meet distributivity: VIOLATED"));
    let csv = fs::read_to_string(out.join("lattice.csv")).unwrap();
    assert!(csv.lines().any(|l| l.starts_with("meet,1,0,")));
}

#[test]
fn demo_scenarios_validate() {
    let dir = tempfile::tempdir().unwrap();
    let o = gamowlab(&["demo", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["damping", "resonance", "lattice"] {
        let path = dir.path().join(format!("{name}.json"));
        let v = gamowlab(&["validate", path.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{name}: {}", stderr(&v));
    }
}

#[test]
fn invalid_width_exits_2_with_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = resonance_scenario();
    s["resonances"][0]["width"] = json!(-1.0);
    let scen = write_json(dir.path(), "bad.json", &s);
    for args in [
        vec!["validate", scen.as_str()],
        vec!["run", scen.as_str(), "--out", "unused"],
    ] {
        let o = gamowlab(&args);
        assert_eq!(o.status.code(), Some(2));
        assert!(stderr(&o).contains("resonances[0].width"), "{}", stderr(&o));
    }
    assert!(!Path::new("unused").exists());
}

#[test]
fn schema_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (json!({ "kind": "resonance", "colour": 1 }), "colour"),
        (json!({ "kind": "teleport" }), "kind"),
        (
            {
                let mut s = resonance_scenario();
                s["variant"] = json!("unitary");
                s
            },
            "variant",
        ),
        (
            {
                let mut s = resonance_scenario();
                s["observables"][0] = json!([[[1, 0]]]);
                s
            },
            "observables[0]",
        ),
        (
            {
                let mut s = resonance_scenario();
                s["channel"] = json!({ "p": 0.5, "n_max": 3 });
                s
            },
            "channel",
        ),
    ];
    for (i, (value, field)) in cases.iter().enumerate() {
        let scen = write_json(dir.path(), &format!("c{i}.json"), value);
        let o = gamowlab(&["validate", &scen]);
        assert_eq!(o.status.code(), Some(2), "case {i}");
        assert!(stderr(&o).contains(field), "case {i}: {}", stderr(&o));
    }

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{ not json").unwrap();
    assert_eq!(
        gamowlab(&["validate", broken.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gamowlab(&["validate", "/nonexistent/scenario.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gamowlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gamowlab(&["run"]).status.code(), Some(2));
    assert_eq!(gamowlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let scen = write_json(dir.path(), "s.json", &resonance_scenario());
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = gamowlab(&["run", &scen, "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}
