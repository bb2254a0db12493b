use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use matrixwell::config::Scenario;
use matrixwell::report::{from_json, to_json};
use matrixwell::{parse_config, run, Format};

fn matrixwell(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matrixwell"))
        .current_dir(dir)
        .env("RUST_LOG", "warn")
        .args(args)
        .output()
        .unwrap()
}

fn scenario_args(s: Scenario) -> Vec<&'static str> {
    match s {
        Scenario::Elements => vec!["--N", "6"],
        Scenario::Commutator => vec!["--N", "40"],
        Scenario::Evolve => vec!["--N", "8", "--t-end", "0.3"],
        Scenario::Spread => vec!["--N", "100", "--state", "packet:0.5,0.05"],
        Scenario::Ehrenfest => vec!["--N", "40", "--state", "random:5,3"],
        Scenario::Revival => vec!["--N", "100"],
        Scenario::FockDensity => vec!["--modes", "3", "--particles", "2", "--positions", "grid:11", "--steps", "3"],
        Scenario::FockAlgebra => vec!["--modes", "3", "--cutoff", "3"],
    }
}

#[test]
fn every_scenario_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for s in Scenario::ALL {
        for ext in ["csv", "json"] {
            let files: Vec<Vec<u8>> = (0..2)
                .map(|i| {
                    let name = format!("{}-{i}.{ext}", s.name());
                    let mut args = vec![s.name(), "--out", &name];
                    args.extend(scenario_args(s));
                    let out = matrixwell(dir.path(), &args);
                    assert!(out.status.success(), "{}: {}", s.name(), String::from_utf8_lossy(&out.stderr));
                    fs::read(dir.path().join(&name)).unwrap()
                })
                .collect();
            assert_eq!(files[0], files[1], "{} {ext}", s.name());
            if ext == "json" {
                let report = from_json(&files[0]).unwrap();
                assert_eq!(report.config.scenario, s);
                assert_eq!(to_json(&report).unwrap(), files[0]);
                assert_eq!(from_json(&to_json(&report).unwrap()).unwrap(), report);
            }
        }
    }
}

#[test]
fn revival_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = matrixwell(dir.path(), &["revival", "--N", "200", "--format", "json"]);
    assert!(out.status.success());
    let r = from_json(&out.stdout).unwrap();
    assert!((r.number("t_r").unwrap() - 4.0 / std::f64::consts::PI).abs() < 1e-15);
    assert!(r.number("max_x_deviation").unwrap() < 1e-12);
    assert!((r.number("dx_tr").unwrap() - r.number("dx0").unwrap()).abs() < 1e-9);
}

#[test]
fn elements_csv_for_two_modes() {
    let dir = tempfile::tempdir().unwrap();
    let out = matrixwell(dir.path(), &["elements", "--N", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["k", "l", "x", "p_imag"]);
    let x: Vec<f64> = reader
        .records()
        .map(|r| r.unwrap()[2].parse().unwrap())
        .collect();
    let off = -16.0 / (9.0 * std::f64::consts::PI.powi(2));
    let want = [0.5, off, off, 0.5];
    assert_eq!(x.len(), 4);
    for (a, b) in x.iter().zip(want) {
        assert!((a - b).abs() < 1e-11 * b.abs());
    }
}

#[test]
fn fermion_algebra_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = matrixwell(
        dir.path(),
        &["fock-algebra", "--modes", "3", "--statistics", "fermion", "--format", "json"],
    );
    assert!(out.status.success());
    let r = from_json(&out.stdout).unwrap();
    assert_eq!(r.number("max_defect"), Some(0.0));
    assert_eq!(r.number("cross_mode_defect"), Some(0.0));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("run.cfg"),
        "# two modes from the file\nscenario = elements\nN = 2\nformat = json\n",
    )
    .unwrap();
    let out = matrixwell(dir.path(), &["--config", "run.cfg"]);
    assert!(out.status.success());
    assert_eq!(from_json(&out.stdout).unwrap().rows.len(), 4);
    let out = matrixwell(dir.path(), &["--config", "run.cfg", "--N", "3"]);
    let r = from_json(&out.stdout).unwrap();
    assert_eq!(r.config.dim, 3);
    assert_eq!(r.rows.len(), 9);
}

#[test]
fn errors_are_machine_readable() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], &str); 4] = [
        (&["spread"], "state"),
        (&["teleport"], "scenario"),
        (&["elements", "--L", "-2"], "L"),
        (&["commutator", "--N", "20", "--block", "9"], "block"),
    ];
    for (args, field) in cases {
        let out = matrixwell(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(err["error"]["field"], field);
    }
}

#[test]
fn failed_runs_leave_no_file() {
    let dir = tempfile::tempdir().unwrap();
    // too few modes to hold a narrow packet
    let out = matrixwell(
        dir.path(),
        &["spread", "--N", "6", "--state", "packet:0.5,0.01", "--out", "spread.csv"],
    );
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "compute");
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn library_run_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("density.json");
    let cfg = parse_config(
        None,
        &[
            ("scenario", "fock-density".into()),
            ("modes", "3".into()),
            ("particles", "4".into()),
            ("positions", "0.25,0.5".into()),
            ("out", path.display().to_string()),
        ],
    )
    .unwrap();
    assert_eq!(cfg.format, Format::Json);
    let report = run(&cfg).unwrap();
    assert_eq!(from_json(&fs::read(&path).unwrap()).unwrap(), report);
    assert!((report.number("integrated_density_start").unwrap() - 4.0).abs() < 1e-8);
}
