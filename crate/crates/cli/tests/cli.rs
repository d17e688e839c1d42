use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use gddetf::io::{parse_design, parse_frame, write_design, write_frame};
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gddetf")).current_dir(dir).args(args).output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn classify_examples() {
    let dir = TempDir::new().unwrap();
    assert_eq!(ok(dir.path(), &["classify", "6", "16"]), "(2,+1,3) (4,-1,3)\n");
    assert_eq!(ok(dir.path(), &["classify", "3", "6"]), "none\n");
    assert_eq!(ok(dir.path(), &["classify", "266", "1008"]), "(4,-1,19)\n");
    assert_eq!(code(&run(dir.path(), &["classify", "5", "5"])), 2);
}

#[test]
fn status_examples() {
    let dir = TempDir::new().unwrap();
    assert_eq!(ok(dir.path(), &["status", "4", "-1", "19"]), "known-per-paper (Thm 1.2a)\n");
    assert_eq!(ok(dir.path(), &["status", "4", "-1", "4"]), "unknown\n");
    assert_eq!(ok(dir.path(), &["status", "14", "-1", "13"]), "unknown\n");
    assert_eq!(code(&run(dir.path(), &["status", "4", "0", "3"])), 2);
}

#[test]
fn design_examples() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["design", "td", "3", "3", "-o", "td33.design"]);
    assert!(fs::read_to_string(d.join("td33.design")).unwrap().starts_with("GDD 3 3 3 9\n"));
    ok(d, &["design", "sts", "7", "-o", "sts7.design"]);
    ok(d, &["design", "product", "td33.design", "sts7.design", "-o", "g37.design"]);
    assert!(fs::read_to_string(d.join("g37.design")).unwrap().starts_with("GDD 3 7 3 63\n"));
    assert_eq!(code(&run(d, &["design", "sts", "5"])), 2);
    assert_eq!(code(&run(d, &["design", "td", "5", "3"])), 2);
}

#[test]
fn build_examples() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["design", "td", "3", "3", "-o", "td33.design"]);
    ok(d, &["build", "simplex", "--hadamard", "fourier:3", "-o", "mb3.frame"]);
    let line = ok(
        d,
        &["build", "gdd-etf", "--seed", "mb3.frame", "--gdd", "td33.design", "--he", "fourier:1", "--hf", "sylvester:2", "-o", "etf15x36.frame"],
    );
    assert_eq!(line, "ETF D=15 N=36 s=5 t=1 A=12 types=(3,-1,5)\n");

    ok(d, &["design", "pairs", "4", "-o", "pairs4.design"]);
    let line = ok(d, &["build", "steiner", "--bibd", "pairs4.design", "--hadamard", "sylvester:2", "-o", "etf6x16.frame"]);
    assert_eq!(line, "ETF D=6 N=16 s=3 t=1 A=8 types=(2,+1,3),(4,-1,3)\n");

    ok(d, &["design", "td", "2", "4", "-o", "td24.design"]);
    ok(d, &["build", "mols-etf", "--td", "td24.design", "--hadamard", "sylvester:2", "--variant", "centered", "-o", "m.frame"]);
    let report = ok(d, &["verify", "frame", "m.frame"]);
    assert!(report.starts_with("ETF D=6 N=16 "), "{report}");
    assert!(report.contains("flat=true") && report.contains("centered=true"), "{report}");

    for f in ["mb3.frame", "etf15x36.frame", "etf6x16.frame", "m.frame"] {
        let out = run(d, &["verify", "frame", f]);
        assert_eq!(code(&out), 0, "{f}");
    }
}

#[test]
fn regrouped_seed_and_augmented_mols() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["build", "simplex", "--hadamard", "sylvester:2", "-o", "s4.frame"]);
    ok(d, &["design", "td", "2", "2", "-o", "td22.design"]);
    let line = ok(
        d,
        &["build", "gdd-etf", "--seed", "s4.frame", "--gdd", "td22.design", "--he", "sylvester:1", "--hf", "sylvester:1", "--permute", "2,0,3,1", "-o", "e.frame"],
    );
    assert_eq!(line, "ETF D=10 N=16 s=5 t=1 A=8 types=(2,-1,5)\n");
    assert_eq!(code(&run(d, &["verify", "frame", "e.frame"])), 0);
    let bad = run(d, &["build", "gdd-etf", "--seed", "s4.frame", "--gdd", "td22.design", "--he", "sylvester:1", "--hf", "sylvester:1", "--permute", "0,0,1,2"]);
    assert_eq!(code(&bad), 2);

    ok(d, &["design", "td", "2", "4", "-o", "td24.design"]);
    let line = ok(d, &["build", "mols-etf", "--td", "td24.design", "--hadamard", "sylvester:2", "--variant", "augmented", "-o", "a.frame"]);
    assert!(line.starts_with("TDTF D=7 N=16 tight=true"), "{line}");
    assert_eq!(code(&run(d, &["verify", "tdtf", "a.frame"])), 0);
    assert_eq!(code(&run(d, &["verify", "frame", "a.frame"])), 1);
}

#[test]
fn files_round_trip_byte_identical() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["design", "td", "4", "5", "-o", "a.design"]);
    ok(d, &["design", "projective", "3", "-o", "b.design"]);
    ok(d, &["build", "simplex", "--hadamard", "fourier:5", "-o", "a.frame"]);
    ok(d, &["build", "hadamard", "--hadamard", "paley2:5*fourier:3", "-o", "h.frame"]);
    for f in ["a.design", "b.design"] {
        let text = fs::read_to_string(d.join(f)).unwrap();
        assert_eq!(write_design(&parse_design(&text).unwrap()), text);
    }
    for f in ["a.frame", "h.frame"] {
        let text = fs::read_to_string(d.join(f)).unwrap();
        assert_eq!(write_frame(&parse_frame(&text).unwrap()), text);
    }
    assert_eq!(code(&run(d, &["verify", "hadamard", "h.frame"])), 0);
    assert_eq!(code(&run(d, &["verify", "design", "b.design"])), 0);
}

#[test]
fn perturbed_frame_names_gram_entry() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["design", "pairs", "4", "-o", "p.design"]);
    ok(d, &["build", "steiner", "--bibd", "p.design", "--hadamard", "sylvester:2", "-o", "f.frame"]);
    let text = fs::read_to_string(d.join("f.frame")).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let row: Vec<&str> = lines[1].split(" | ").collect();
    let pos = row.iter().position(|e| *e == "1").unwrap();
    let mut row: Vec<String> = row.into_iter().map(String::from).collect();
    row[pos] = "2".into();
    lines[1] = row.join(" | ");
    fs::write(d.join("bad.frame"), lines.join("\n") + "\n").unwrap();
    let out = run(d, &["verify", "frame", "bad.frame"]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Gram entry"), "{err}");
}

#[test]
fn duplicated_block_names_pair() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["design", "sts", "9", "-o", "s.design"]);
    let text = fs::read_to_string(d.join("s.design")).unwrap();
    let first = text.lines().nth(1).unwrap().to_string();
    let bad = text.replacen("GDD 3 9 1 12", "GDD 3 9 1 13", 1) + &first + "\n";
    fs::write(d.join("bad.design"), bad).unwrap();
    let out = run(d, &["verify", "design", "bad.design"]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("over-covered") && err.contains("pair ("), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(code(&run(d, &["frobnicate"])), 2);
    assert_eq!(code(&run(d, &["build", "simplex", "--hadamard", "paley1:5"])), 2);
    assert_eq!(code(&run(d, &["build", "simplex", "--hadamard", "walsh:2"])), 2);
    assert_eq!(code(&run(d, &["verify", "frame", "missing.frame"])), 2);
    fs::write(d.join("junk.frame"), "FRAME 3 1 2\n1,0 | x,1\n").unwrap();
    assert_eq!(code(&run(d, &["verify", "frame", "junk.frame"])), 2);
}
