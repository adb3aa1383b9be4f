// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn schreier(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_schreier"))
        .current_dir(dir)
        .args(args)
        .envs(env.iter().copied())
        .output()
        .unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (report, out.status.code().unwrap())
}

#[test]
fn generated_graph_has_requested_shape() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = schreier(dir.path(), &["gen", "--kind", "conf-reg", "--deg", "4", "--n", "100", "--seed", "7", "--out", "g.txt"], &[]);
    assert_eq!(code, 0);
    assert_eq!(r["vertices"], 100);
    assert_eq!(r["edges"], 200);
    let text = fs::read_to_string(dir.path().join("g.txt")).unwrap();
    assert!(text.starts_with("100 200\n"));
}

#[test]
fn errors_exit_with_two_and_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let (r, code) = schreier(dir.path(), &["gen", "--kind", "conf-reg", "--deg", "3", "--n", "5", "--seed", "1", "--out", "g.txt"], &[]);
    assert_eq!(code, 2);
    assert_eq!(r["ok"], false);
    assert!(r["error"].as_str().unwrap().contains("odd"));
    // randomized subcommands need a seed
    let (_, code) = schreier(dir.path(), &["gen", "--kind", "conf-reg", "--deg", "4", "--n", "10", "--out", "g.txt"], &[]);
    assert_eq!(code, 2);
    // missing input is reported before any work
    let (r, code) = schreier(dir.path(), &["orient", "missing.txt", "--out", "o.txt"], &[]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("missing.txt"));
}

#[test]
fn odd_degrees_are_listed() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p.txt"), "3 2\n0 1\n1 2\n").unwrap();
    let (r, code) = schreier(dir.path(), &["orient", "p.txt", "--out", "o.txt"], &[]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("[0, 2]"));
}

#[test]
fn decorate_rejects_irregular_input_and_handles_cycles() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("x.txt"), "4 5\n0 1\n1 2\n2 0\n0 3\n3 0\n").unwrap();
    let (r, code) = schreier(dir.path(), &["decorate", "x.txt", "--seed", "1", "--out", "d.json"], &[]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("degree"));
    fs::write(dir.path().join("c6.txt"), "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n").unwrap();
    let (r, code) = schreier(dir.path(), &["decorate", "c6.txt", "--seed", "1", "--out", "d.json", "--permutations", "p.txt"], &[]);
    assert_eq!(code, 0);
    assert_eq!(r["verified"], true);
    let perm: Vec<usize> = fs::read_to_string(dir.path().join("p.txt"))
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    // one 6-cycle
    let mut v = 0;
    let mut steps = 0;
    loop {
        v = perm[v];
        steps += 1;
        if v == 0 {
            break;
        }
    }
    assert_eq!(steps, 6);
}

#[test]
fn coloring_modes_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k33.txt"), "6 9\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n").unwrap();
    let (r, code) = schreier(dir.path(), &["color", "k33.txt", "--mode", "konig", "--out", "c.txt"], &[]);
    assert_eq!(code, 0);
    assert_eq!(r["density"]["palette"], 3);
    fs::write(dir.path().join("bad.txt"), "0 1\n1 1\n").unwrap();
    let (r, code) = schreier(dir.path(), &["color", "k33.txt", "--verify", "bad.txt"], &[]);
    assert_eq!(code, 1);
    assert_eq!(r["proper"], false);
    assert_eq!(r["conflict"]["Conflict"]["vertex"], 0);
    let (_, code) = schreier(dir.path(), &["color", "k33.txt", "--verify", "c.txt"], &[]);
    assert_eq!(code, 0);
}

#[test]
fn purple_mode_reports_density() {
    let dir = tempfile::tempdir().unwrap();
    schreier(dir.path(), &["gen", "--kind", "chord-cycle", "--cycle-len", "400", "--chord-gap", "20", "--seed", "3", "--out", "c.txt"], &[]);
    let (r, code) = schreier(dir.path(), &["color", "c.txt", "--mode", "purple", "--r", "20", "--out", "col.txt"], &[]);
    assert_eq!(code, 0);
    assert!(r["density"]["density_last_color"].as_f64().unwrap() <= 0.2);
}

#[test]
fn shift_check_is_zero_and_budget_errors_are_loud() {
    let dir = tempfile::tempdir().unwrap();
    schreier(dir.path(), &["gen", "--kind", "conf-reg", "--deg", "6", "--n", "60", "--seed", "3", "--out", "g.txt"], &[]);
    schreier(dir.path(), &["decorate", "g.txt", "--seed", "2", "--out", "d.json"], &[]);
    let (r, code) = schreier(dir.path(), &["stats", "g.txt", "--radius", "2", "--decoration", "d.json", "--shift-check", "3"], &[]);
    assert_eq!(code, 0);
    assert_eq!(r["shift_check"]["tv"], 0.0);
    let (r, code) = schreier(dir.path(), &["stats", "g.txt", "--radius", "4"], &[("SCHREIER_WORK_BUDGET", "10")]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("budget"));
}

#[test]
fn orientation_law_matches_oracle() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("star.txt"), "5 4\n0 1\n0 2\n0 3\n0 4\n").unwrap();
    let (r, code) = schreier(dir.path(), &["orientation-law", "star.txt", "--root", "0", "--seed", "5", "--out", "law.json"], &[]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["outcomes"], 6);
    assert!(r["tv_oracle"].as_f64().unwrap() < 0.02);
    let (r, code) = schreier(dir.path(), &["orientation-law", "star.txt", "--root", "1", "--seed", "5"], &[]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("internal"));
}
