use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn ncfourier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncfourier")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn info_reports_dimension_rank_and_jacobian() {
    let out = ncfourier(&["info", "su2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["group"]["dim"], 3);
    assert_eq!(v["group"]["rank"], 1);
    let half_turn = &v["jacobian_samples"][2];
    assert_eq!(half_turn["x"][2].as_f64().unwrap(), PI / 2.0);
    for mode in ["closed", "determinant"] {
        assert!((half_turn[mode].as_f64().unwrap() - 4.0 / (PI * PI)).abs() < 1e-12);
    }
}

#[test]
fn character_prints_value_and_shell_prediction() {
    let out = ncfourier(&["character", "--two-lambda", "2", "--p-norm", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["computed"]["re"].as_f64().unwrap() - 3.28987).abs() < 1e-5);
    assert!((v["predicted"].as_f64().unwrap() - PI * PI / 3.0).abs() < 1e-15);
}

#[test]
fn bch_shows_closed_form_series_and_discrepancy() {
    let out = ncfourier(&["bch", "su2", "--x", "0.1,-0.2,0.05", "--y", "0.0,0.1,0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["series_order"], 6);
    assert!(v["discrepancy"].as_f64().unwrap() < 1e-6);
    let csv = ncfourier(&["bch", "u1", "--x", "0.5", "--y", "-1.25", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text, "component,closed,series\n0,-0.75,-0.75\n");
}

#[test]
fn transform_of_a_mode_and_of_an_expression() {
    let out = ncfourier(&["transform", "u1", "--func", "cos(2*x)", "--p", "2", "--p", "-1", "--coefficient"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v[0]["value"]["re"].as_f64().unwrap() - PI).abs() < 1e-12);
    assert!(v[1]["value"]["re"].as_f64().unwrap().abs() < 1e-12);
    // the radial expression takes the class fast path and matches the builtin
    let expr = ncfourier(&["transform", "su2", "--func", "exp(-r^2/2)", "--p", "0.5,0,0", "--domain", "whole"]);
    let builtin = ncfourier(&["transform", "su2", "--func", "gaussian(1)", "--p", "0.5,0,0"]);
    let (a, b) = (json(&expr), json(&builtin));
    let (a, b) = (a[0]["value"]["re"].as_f64().unwrap(), b[0]["value"]["re"].as_f64().unwrap());
    assert!((a - b).abs() < 1e-10 * b.abs(), "{a} {b}");
}

#[test]
fn poisson_sides_agree_for_a_circle_gaussian() {
    let out = ncfourier(&["poisson", "u1", "--func", "gaussian(1)", "--x", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn exit_codes_separate_rejections_from_operational_errors() {
    let parse = ncfourier(&["transform", "su2", "--func", "2*+3", "--p", "1,0,0"]);
    assert_eq!(parse.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("byte 2"));
    assert_eq!(ncfourier(&["info", "so3"]).status.code(), Some(1));
    assert_eq!(ncfourier(&["transform", "u1", "--func", "sinh(x)", "--p", "1"]).status.code(), Some(1));
    assert_eq!(ncfourier(&["transform", "u1", "--func", "character(2)", "--p", "1"]).status.code(), Some(1));
    assert_eq!(ncfourier(&["transform", "u1", "--func", "1/x", "--p", "1"]).status.code(), Some(2));
    assert_eq!(ncfourier(&["info"]).status.code(), Some(2));
    assert_eq!(ncfourier(&["--help"]).status.code(), Some(0));
}

#[test]
fn group_files_are_accepted_where_names_are() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let first = ncfourier(&["info", "torus2"]);
    let group = &json(&first)["group"];
    std::fs::write(&path, serde_json::to_string(group).unwrap()).unwrap();
    let second = ncfourier(&["info", path.to_str().unwrap()]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(json(&second), json(&first));
}

#[test]
fn verification_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for (path, mode) in [(&a, "--serial"), (&b, "--format=json")] {
        let out = ncfourier(&["verify", "--suite", "duflo", mode, "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(a, b);
    let report: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["version"], 1);
    assert_eq!(report["suite"], "duflo");
    let cases = report["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 40);
    for c in cases {
        assert_eq!(c["passed"], c["residual"].as_f64().unwrap() <= c["tolerance"].as_f64().unwrap());
        assert!(!c["reference"].as_str().unwrap().is_empty());
    }
    let csv = ncfourier(&["verify", "--suite", "duflo", "--format", "csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("id,reference,expected,computed,residual,tolerance,passed\n"));
}

#[test]
fn a_different_seed_changes_the_sampled_points() {
    let a = ncfourier(&["verify", "--suite", "duflo"]);
    let b = ncfourier(&["verify", "--suite", "duflo", "--seed", "7"]);
    assert_ne!(a.stdout, b.stdout);
    assert_eq!(json(&b)["meta"]["seed"], 7);
}
