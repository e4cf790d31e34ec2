use std::path::Path;
use std::process::{Command, Output};

use sobolsep::digital::{prefix, GeneratorPair};
use sobolsep::geometry::{mesh_ratio, Norm};
use sobolsep::io::{analysis_header, analysis_record, write_table};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sobolsep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_m3_table() {
    let out = run(&["generate", "--sobol", "-m", "3", "-N", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "index,nx,ny,scale\n\
        0,0,0,3\n1,4,4,3\n2,2,6,3\n3,6,2,3\n4,1,5,3\n5,5,1,3\n6,3,3,3\n7,7,7,3\n";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn generate_single_point() {
    let out = run(&["generate", "--sobol", "-m", "1", "-N", "1"]);
    assert_eq!(stdout(&out), "index,nx,ny,scale\n0,0,0,1\n");
}

#[test]
fn generate_from_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.txt");
    // C1 = I, C2 = I puts every point on the diagonal.
    std::fs::write(&f, "2\n10\n01\n10\n01\n").unwrap();
    let out = run(&["generate", "--matrices", path(&f), "-N", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "index,nx,ny,scale\n0,0,0,2\n1,2,2,2\n2,1,1,2\n3,3,3,2\n");

    std::fs::write(&f, "2\n10\n0x\n10\n01\n").unwrap();
    let out = run(&["generate", "--matrices", path(&f), "-N", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["generate"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "--sobol", "-m", "3", "-N", "9"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "--sobol", "-m", "65"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--sobol", "-m", "3", "--norm", "l7"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn analyze_radius_log2() {
    for (m, radius) in [("6", "-6"), ("2", "-3")] {
        let out = run(&["analyze", "--sobol", "-m", m, "--norm", "linf"]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        let col = header.iter().position(|h| *h == "radius_log2").unwrap();
        assert_eq!(row[col], radius, "m = {m}");
    }
}

#[test]
fn analyze_precondition_and_budget() {
    assert_eq!(run(&["analyze", "--sobol", "-m", "1", "-N", "1"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--sobol", "-m", "4", "-k", "14"]).status.code(), Some(3));
}

#[test]
fn round_trip_matches_in_process() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("p.csv");
    let report = dir.path().join("a.csv");
    let gen = run(&["generate", "--sobol", "-m", "7", "-N", "100", "-o", path(&pts)]);
    assert_eq!(gen.status.code(), Some(0));
    assert!(dir.path().join("p.csv.meta").exists());
    for norm in ["l1", "l2", "linf"] {
        let out = run(&["analyze", "--points", path(&pts), "--norm", norm, "-k", "8", "-o", path(&report)]);
        assert_eq!(out.status.code(), Some(0));
        let ps = prefix(&GeneratorPair::sobol(7).unwrap(), 100).unwrap();
        let r = mesh_ratio(&ps, norm.parse::<Norm>().unwrap(), 8).unwrap();
        let mut expected = Vec::new();
        write_table(&mut expected, &analysis_header(), [analysis_record(&r)]).unwrap();
        assert_eq!(std::fs::read(&report).unwrap(), expected, "{norm}");
    }
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for target in [&a, &b] {
        let out = run(&["analyze", "--sobol", "-m", "8", "--norm", "l2", "-k", "9", "-o", path(target)]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let single = Command::new(env!("CARGO_BIN_EXE_sobolsep"))
        .args(["analyze", "--sobol", "-m", "8", "--norm", "l2", "-k", "9"])
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(single.stdout, std::fs::read(&a).unwrap());
}

#[test]
fn verify_passes_and_flags_fault() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("v.csv");
    let out = run(&["verify", "--m-max", "10", "-o", path(&csv)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("m,kind,v,w,c,q_formula_log2,q_exhaustive_log2,match,witness_p,witness_q\n"));
    assert!(text.contains("\n6,GENERAL,2,1,0,-6,-6,true,34,60\n"));

    let out = run(&["verify", "--m-max", "20", "--formula-only"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 21);
    assert!(text.contains("\n17,GENERAL,4,0,0,-17,,true,65537,131070\n"));

    let out = run(&["verify", "--m-max", "6", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains(",false,"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));

    assert_eq!(run(&["verify", "--m-max", "21"]).status.code(), Some(2));
}

#[test]
fn plot_profile() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    let svg = dir.path().join("p.svg");
    assert_eq!(run(&["profile", "--sobol", "-m", "12", "-o", path(&csv)]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 4096);
    let out = run(&["plot", "--input", path(&csv), "-o", path(&svg)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains(r#"width="800" height="600""#));
    assert_eq!(text.matches("<circle").count(), 4095 + 1);

    let empty = dir.path().join("e.csv");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(run(&["plot", "--input", path(&empty)]).status.code(), Some(2));
    std::fs::write(&empty, "N,norm,min_dist_num\n").unwrap();
    assert_eq!(run(&["plot", "--input", path(&empty)]).status.code(), Some(2));
    std::fs::write(&empty, "N,norm,min_dist_num\n4,linf,abc\n").unwrap();
    assert_eq!(run(&["plot", "--input", path(&empty)]).status.code(), Some(2));
}
