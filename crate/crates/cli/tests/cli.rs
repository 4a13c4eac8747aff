//! End-to-end tests of the `sprck` binary: command grammar, JSON round
//! trips, exit codes, and certificate determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use sprck_core::embed::self_embed_w2;
use sprck_core::ordinal::Ordinal;
use sprck_core::rational::rat;
use sprck_core::stepfn::StepFn;

fn sprck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sprck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_json(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn stepfn_value(f: &StepFn) -> Value {
    // mirror of the CLI encoding, kept deliberately independent of it
    let cells: Vec<Value> = f
        .cells()
        .iter()
        .map(|c| {
            serde_json::json!({
                "end": ordinal_value(&c.end),
                "value": sprck_core::rational::format_rational(&c.value),
            })
        })
        .collect();
    serde_json::json!({ "domain": ordinal_value(f.domain_end()), "cells": cells })
}

fn ordinal_value(o: &Ordinal) -> Value {
    Value::Array(
        o.terms()
            .iter()
            .map(|(e, k)| {
                serde_json::json!([
                    e.to_string().parse::<serde_json::Number>().unwrap(),
                    k.to_string().parse::<serde_json::Number>().unwrap()
                ])
            })
            .collect(),
    )
}

#[test]
fn ordinal_commands() {
    assert_eq!(stdout_of(&sprck(&["ord", "add", "w*2+3", "w"])), "w*3\n");
    assert_eq!(stdout_of(&sprck(&["ord", "cmp", "w^2", "w*5 + 7"])), "greater\n");
    assert_eq!(stdout_of(&sprck(&["ord", "cmp", "0", "0"])), "equal\n");
    assert_eq!(stdout_of(&sprck(&["ord", "ell", "w*3+2", "--alpha", "2"])), "w*4\n");
    assert_eq!(stdout_of(&sprck(&["ord", "beta0", "w^2*2+w*3", "--alpha", "3"])), "1\n");
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(exit_code(&sprck(&["ord", "add", "w++", "w"])), 2);
    assert_eq!(exit_code(&sprck(&["ord", "ell", "w^3", "--alpha", "2"])), 2);
    assert_eq!(exit_code(&sprck(&["ord", "frobnicate"])), 2); // unknown subcommand
    assert_eq!(exit_code(&sprck(&["spr", "search", "--basis", "nope:3"])), 2);
    // impossible embedding parameterization is a usage error
    let dir = tempfile::tempdir().unwrap();
    let zero = StepFn::zero(Ordinal::omega_pow(2)).unwrap();
    let f = write_json(dir.path(), "f.json", &stepfn_value(&zero));
    let out = sprck(&[
        "embed", "apply", "--op", "spr-embed:alpha=2,gamma=w^2", "--in",
        f.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
    // malformed JSON
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(exit_code(&sprck(&["fn", "norm", bad.to_str().unwrap()])), 2);
}

#[test]
fn glued_embedding_reproduces_values_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let w3 = Ordinal::omega_pow(3);
    let f = StepFn::from_cells(
        w3.clone(),
        vec![
            (Ordinal::natural(5), rat(3, 4)),
            ("w^2*2".parse().unwrap(), rat(-1, 2)),
            (w3, rat(1, 3)),
        ],
    )
    .unwrap();
    let f_path = write_json(dir.path(), "f.json", &stepfn_value(&f));
    let g_path = dir.path().join("g.json");
    let out = sprck(&[
        "embed", "apply", "--op", "T-glued", "--alpha", "3", "--in",
        f_path.to_str().unwrap(), "--out", g_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let shifted = stdout_of(&sprck(&["fn", "eval", g_path.to_str().unwrap(), "--at", "w^2+5"]));
    let original = stdout_of(&sprck(&["fn", "eval", f_path.to_str().unwrap(), "--at", "5"]));
    assert_eq!(shifted, original);
    assert_eq!(original, "3/4\n");
    // norms agree too
    let gn = stdout_of(&sprck(&["fn", "norm", g_path.to_str().unwrap()]));
    let fnorm = stdout_of(&sprck(&["fn", "norm", f_path.to_str().unwrap()]));
    assert_eq!(gn, fnorm);
}

#[test]
fn operator_parameters_ride_on_the_name() {
    // R:alpha=2 applied to the indicator of the second block: a single
    // coefficient 1/2 at w*2
    let dir = tempfile::tempdir().unwrap();
    let w2 = Ordinal::omega_pow(2);
    let block = StepFn::indicator(&Ordinal::omega(), &"w*2".parse().unwrap(), &w2).unwrap();
    let f = write_json(dir.path(), "f.json", &stepfn_value(&block));
    let out = sprck(&["embed", "apply", "--op", "R:alpha=2", "--in", f.to_str().unwrap()]);
    let coeffs: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(
        coeffs,
        serde_json::json!({ "entries": [ { "index": [[1, 2]], "value": "1/2" } ] })
    );
}

#[test]
fn sequence_embedding_example() {
    let dir = tempfile::tempdir().unwrap();
    let seq = serde_json::json!({
        "entries": [
            { "index": [[0, 1]], "value": "1" },
            { "index": [[0, 2]], "value": "1" },
        ]
    });
    let path = write_json(dir.path(), "seq.json", &seq);
    let out_path = dir.path().join("s.json");
    let out = sprck(&[
        "embed", "apply", "--op", "S", "--in", path.to_str().unwrap(), "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // value (lambda_1 + lambda_2)/2 = 1 at w + 2
    assert_eq!(
        stdout_of(&sprck(&["fn", "eval", out_path.to_str().unwrap(), "--at", "w+2"])),
        "1\n"
    );
}

#[test]
fn emitted_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let f_path = dir.path().join("f.json");
    let out = sprck(&[
        "fn", "indicator", "--a", "w", "--b", "w*2", "--gamma", "w^2", "--out",
        f_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // abs of a 0/1 indicator is itself: feeding the emitted file back in
    // reproduces it byte for byte
    let g_path = dir.path().join("g.json");
    let out = sprck(&["fn", "abs", f_path.to_str().unwrap(), "--out", g_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&f_path).unwrap(),
        std::fs::read_to_string(&g_path).unwrap()
    );
    // meet with itself reproduces it as well
    let m_path = dir.path().join("m.json");
    let out = sprck(&[
        "fn", "meet", f_path.to_str().unwrap(), f_path.to_str().unwrap(), "--out",
        m_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&f_path).unwrap(),
        std::fs::read_to_string(&m_path).unwrap()
    );
}

#[test]
fn ratio_command() {
    let dir = tempfile::tempdir().unwrap();
    let w2 = Ordinal::omega_pow(2);
    let a = StepFn::indicator(&Ordinal::zero(), &Ordinal::omega(), &w2).unwrap();
    let b = StepFn::indicator(&Ordinal::omega(), &"w*2".parse().unwrap(), &w2).unwrap();
    let a_path = write_json(dir.path(), "a.json", &stepfn_value(&a));
    let b_path = write_json(dir.path(), "b.json", &stepfn_value(&b));
    assert_eq!(
        stdout_of(&sprck(&["spr", "ratio", a_path.to_str().unwrap(), b_path.to_str().unwrap()])),
        "1\n"
    );
    // equal moduli without a common sign: unbounded
    let sum = a.add(&b).unwrap();
    let diff = a.sub(&b).unwrap();
    let s_path = write_json(dir.path(), "s.json", &stepfn_value(&sum));
    let d_path = write_json(dir.path(), "d.json", &stepfn_value(&diff));
    assert_eq!(
        stdout_of(&sprck(&["spr", "ratio", s_path.to_str().unwrap(), d_path.to_str().unwrap()])),
        "inf\n"
    );
}

#[test]
fn verify_passes_the_overlapping_basis_and_fails_disjoint_blocks() {
    let out = sprck(&["spr", "verify", "--basis", "xbasis:3", "--C", "3", "--grid", "1/4"]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let cert: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["min_value"], Value::String("1/3".into()));
    assert_eq!(cert["method"], Value::String("exhaustive-grid".into()));

    let out = sprck(&["spr", "verify", "--basis", "blocks:2,4", "--C", "2", "--grid", "1/1"]);
    assert_eq!(exit_code(&out), 1);
    let cert: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["min_value"], Value::String("0".into()));
}

#[test]
fn verify_accepts_an_image_basis_from_a_file() {
    // three-element basis inside the image of the self-embedding; the image
    // admits the 1/12 floor, so C = 12 must pass on the quarter grid
    let dir = tempfile::tempdir().unwrap();
    let w2 = Ordinal::omega_pow(2);
    let sources = [
        StepFn::indicator(&Ordinal::zero(), &Ordinal::omega(), &w2).unwrap(),
        StepFn::indicator(&Ordinal::omega(), &"w*2".parse().unwrap(), &w2).unwrap(),
        sprck_core::embed::c0_basis(2).unwrap(),
    ];
    let basis: Vec<Value> =
        sources.iter().map(|f| stepfn_value(&self_embed_w2(f).unwrap())).collect();
    let path = write_json(dir.path(), "basis.json", &Value::Array(basis));
    let spec = format!("file:{}", path.display());
    let out = sprck(&["spr", "verify", "--basis", &spec, "--C", "12", "--grid", "1/4"]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn certificates_are_deterministic_up_to_the_timestamp() {
    let strip = |bytes: &[u8]| -> String {
        let mut v: Value = serde_json::from_slice(bytes).unwrap();
        v.as_object_mut().unwrap().remove("timestamp").expect("timestamp present");
        serde_json::to_string_pretty(&v).unwrap()
    };
    let run = || sprck(&["spr", "search", "--basis", "xbasis:2", "--seed", "7", "--budget", "10"]);
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
    // a different seed changes the trajectory but stays deterministic
    let c = sprck(&["spr", "search", "--basis", "xbasis:2", "--seed", "8", "--budget", "10"]);
    assert!(c.status.success());
    let cert: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(cert["method"], Value::String("random-restart".into()));
    assert_eq!(cert["seed"], serde_json::json!(8));
}
