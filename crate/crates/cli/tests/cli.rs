// Copyright 2026 The optqrc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn optqrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_optqrc"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) {
    let out = optqrc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn csv_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    files.sort();
    files
}

fn assert_same_csvs(a: &Path, b: &Path) {
    let (fa, fb) = (csv_files(a), csv_files(b));
    assert!(!fa.is_empty());
    assert_eq!(fa.len(), fb.len());
    for (x, y) in fa.iter().zip(&fb) {
        assert_eq!(x.file_name(), y.file_name());
        assert_eq!(fs::read(x).unwrap(), fs::read(y).unwrap(), "{}", x.display());
    }
}

fn rerun(args: &[&str]) {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--out", out.to_str().unwrap()]);
        run_ok(&full);
    }
    assert_same_csvs(&a, &b);
}

#[test]
fn majorization_is_deterministic() {
    rerun(&["majorization", "--n", "4", "--circuits", "20", "--gates", "30", "--seed", "5"]);
}

#[test]
fn qrc_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let base = ["qrc", "--families", "G3,D2,ISING", "--gates", "20", "--seeds", "4"];
    for (out, jobs) in [(&a, "1"), (&b, "2")] {
        let mut args = base.to_vec();
        args.extend(["--jobs", jobs, "--out", out.to_str().unwrap()]);
        run_ok(&args);
    }
    assert_same_csvs(&a, &b);
}

#[test]
fn pauli_map_and_ising_are_deterministic() {
    rerun(&["pauli-map", "--circuits", "50", "--gates", "20"]);
    rerun(&["ising", "--n", "3", "--max-steps", "8", "--seed", "2"]);
}

#[test]
fn qrc_sweep_writes_one_file_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    run_ok(&["qrc", "--families", "G1,G2,G3,MG", "--gates", "5,10,15,20,25", "--seeds", "2", "--out", out]);
    let cells: Vec<PathBuf> = csv_files(dir.path())
        .into_iter()
        .filter(|p| p.file_name().unwrap() != "summary.csv")
        .collect();
    assert_eq!(cells.len(), 20);
    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 21);
    assert!(dir.path().join("run.json").exists());
    let cell = fs::read_to_string(dir.path().join("tfim6_G3_15.csv")).unwrap();
    assert_eq!(cell.lines().next().unwrap(), "family,n_gates,seed,mse");
    assert_eq!(cell.lines().count(), 3);
}

#[test]
fn pinned_seed_gives_zero_spread() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    run_ok(&["majorization", "--n", "4", "--circuits", "2", "--families", "G3", "--gates", "40", "--seed-pin", "--out", out]);
    let csv = fs::read_to_string(dir.path().join("majorization_G3-40.csv")).unwrap();
    for line in csv.lines().skip(2) {
        let std: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!(std.abs() < 1e-12, "{line}");
    }
}

#[test]
fn pauli_map_row_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    run_ok(&["pauli-map", "--families", "G1,G3,MG", "--gates", "10", "--circuits", "30", "--out", out]);
    let cloud = fs::read_to_string(dir.path().join("cloud.csv")).unwrap();
    assert_eq!(cloud.lines().count(), 1 + 3 * 30 + 30);
    assert_eq!(cloud.lines().next().unwrap().split(',').count(), 35);
}

#[test]
fn config_file_sets_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# ensemble\nn = 3\ncircuits = 7\nfamilies = G1\ngates = 10\n").unwrap();
    let out = dir.path().join("out");
    run_ok(&["majorization", "--config", cfg.to_str().unwrap(), "--circuits", "5", "--out", out.to_str().unwrap()]);
    let ranking = fs::read_to_string(out.join("ranking.csv")).unwrap();
    let row = ranking.lines().find(|l| l.contains("G1-10")).unwrap();
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(cols[2], "3");
    assert_eq!(cols[4], "5");
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("run.json")).unwrap()).unwrap();
    assert_eq!(manifest["status"], "ok");
    assert_eq!(manifest["config"]["circuits"], "5");
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "no_such_key = 1\n").unwrap();
    let out = optqrc(&["ising", "--config", cfg.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = optqrc(&["majorization", "--families", "G9", "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inspecting_an_empty_directory_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = optqrc(&["data", "inspect", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generated_archive_feeds_qrc() {
    let dir = tempfile::tempdir().unwrap();
    let archive = dir.path().join("chain4");
    run_ok(&["data", "gen", "tfim-chain", "--n", "4", "--points", "20", "--window", "1.0,1.9", "--name", "chain4", "--out", archive.to_str().unwrap()]);
    let inspect = optqrc(&["data", "inspect", archive.to_str().unwrap()]);
    assert!(inspect.status.success());
    let text = String::from_utf8(inspect.stdout).unwrap();
    assert!(text.contains("chain4"));
    let out = dir.path().join("q");
    run_ok(&["qrc", "--dataset", archive.to_str().unwrap(), "--families", "G3", "--gates", "30", "--seeds", "3", "--out", out.to_str().unwrap()]);
    assert!(out.join("chain4_G3_30.csv").exists());
}
