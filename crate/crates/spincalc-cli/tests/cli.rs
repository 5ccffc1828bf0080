//! End-to-end tests of the `spincalc` binary: output formats, reference
//! values, exit codes, and cache behavior.

use spincalc::group_tables::{self, golden_rows};
use spincalc::summand_counts::Theory;
use std::process::{Command, Output};

fn spincalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spincalc"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn stdout_of(output: &Output) -> String {
    assert!(
        output.status.success(),
        "expected success, got {:?}\nstderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn group_lines_match_reference() {
    let cases = [
        (&["group", "--theory", "spinh", "-n", "20"][..], "pi_20 MSpin^h = Z^19 + (Z/2)^2"),
        (&["group", "--theory", "spin", "-n", "1"][..], "pi_1 MSpin = Z^0 + (Z/2)^1"),
        (&["group", "--theory", "spinc", "-n", "3"][..], "pi_3 MSpin^c = Z^0 + (Z/2)^0"),
    ];
    for (args, expected) in cases {
        assert_eq!(stdout_of(&spincalc(args)).trim(), expected);
    }
}

#[test]
fn table_zero_degree_emits_single_row() {
    let out = stdout_of(&spincalc(&["table", "--theory", "spin", "--max-n", "0"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3); // header, separator, one data row
    assert_eq!(lines[2], "| 0 | 1 | 0 |");
}

#[test]
fn csv_table_reproduces_reference_rows() {
    let out = stdout_of(&spincalc(&[
        "table", "--theory", "spinh", "--max-n", "99", "--format", "csv",
    ]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,r,t"));
    let golden = golden_rows(Theory::SpinH);
    let data: Vec<&str> = lines.collect();
    assert_eq!(data.len(), 100);
    for (line, &(n, r, t)) in data.iter().zip(golden.iter()) {
        assert_eq!(*line, format!("{n},{r},{t}"));
    }
}

#[test]
fn json_round_trips_documented_schema() {
    let out = stdout_of(&spincalc(&[
        "table", "--theory", "spinc", "--max-n", "12", "--format", "json",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(doc["theory"], "spinc");
    let groups = doc["groups"].as_array().expect("groups array");
    assert_eq!(groups.len(), 13);
    for (i, entry) in groups.iter().enumerate() {
        assert_eq!(entry["n"].as_u64(), Some(i as u64));
        let row = group_tables::group(Theory::SpinC, i);
        assert_eq!(entry["rank"].as_str(), Some(row.rank.to_string().as_str()));
        assert_eq!(
            entry["torsion"].as_str(),
            Some(row.torsion_rank.to_string().as_str())
        );
    }
}

#[test]
fn all_formats_carry_identical_triples() {
    let md = stdout_of(&spincalc(&["table", "--theory", "spin", "--max-n", "25"]));
    let csv = stdout_of(&spincalc(&[
        "table", "--theory", "spin", "--max-n", "25", "--format", "csv",
    ]));
    let json = stdout_of(&spincalc(&[
        "table", "--theory", "spin", "--max-n", "25", "--format", "json",
    ]));

    let md_triples: Vec<(String, String, String)> = md
        .lines()
        .skip(2)
        .map(|line| {
            let cells: Vec<&str> = line.trim_matches('|').split('|').map(str::trim).collect();
            (cells[0].into(), cells[1].into(), cells[2].into())
        })
        .collect();
    let csv_triples: Vec<(String, String, String)> = csv
        .lines()
        .skip(1)
        .map(|line| {
            let cells: Vec<&str> = line.split(',').collect();
            (cells[0].into(), cells[1].into(), cells[2].into())
        })
        .collect();
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let json_triples: Vec<(String, String, String)> = doc["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|entry| {
            (
                entry["n"].as_u64().unwrap().to_string(),
                entry["rank"].as_str().unwrap().to_string(),
                entry["torsion"].as_str().unwrap().to_string(),
            )
        })
        .collect();

    assert_eq!(md_triples, csv_triples);
    assert_eq!(csv_triples, json_triples);
}

#[test]
fn series_dumps_match_reference_values() {
    // R_spinh through degree 9 ends with coefficient 1.
    let out = stdout_of(&spincalc(&["series", "R_spinh", "--max-n", "9"]));
    assert_eq!(out.lines().last(), Some("9\t1"));

    // The Steenrod-algebra series opens 1, 1, 1, 2.
    let out = stdout_of(&spincalc(&["series", "P_A", "--max-n", "3"]));
    assert_eq!(out, "0\t1\n1\t1\n2\t1\n3\t2\n");

    // ku summands are torsion-free, so S and R agree for spin^c.
    let s = stdout_of(&spincalc(&["series", "S_spinc", "--max-n", "40"]));
    let r = stdout_of(&spincalc(&["series", "R_spinc", "--max-n", "40"]));
    assert_eq!(s, r);

    // First K-theory torsion for spin sits in degrees 1 and 2.
    let out = stdout_of(&spincalc(&["series", "Ktors_spin", "--max-n", "2"]));
    assert_eq!(out, "0\t0\n1\t1\n2\t1\n");
}

#[test]
fn series_below_connectivity_prints_zeros() {
    // The degree-4-connected cover is representable at tiny max-n.
    let out = stdout_of(&spincalc(&["series", "P_elephant_cover0", "--max-n", "2"]));
    assert_eq!(out, "0\t0\n1\t0\n2\t0\n");
}

#[test]
fn truncation_override_does_not_change_exact_coefficients() {
    let plain = stdout_of(&spincalc(&["series", "P_mspinh", "--max-n", "6"]));
    let raised = stdout_of(&spincalc(&[
        "series", "P_mspinh", "--max-n", "6", "--truncation", "40",
    ]));
    assert_eq!(plain, raised);
    assert_eq!(plain.lines().count(), 7);
}

#[test]
fn usage_errors_exit_2() {
    let unknown_series = spincalc(&["series", "bogus", "--max-n", "3"]);
    assert_eq!(unknown_series.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&unknown_series.stderr).to_string();
    assert!(stderr.contains("unknown series name"), "{stderr}");
    assert!(stderr.contains("R_<theory>"), "{stderr}");

    let bad_theory = spincalc(&["group", "--theory", "string", "-n", "4"]);
    assert_eq!(bad_theory.status.code(), Some(2));

    let too_large = spincalc(&["table", "--theory", "spin", "--max-n", "2000000"]);
    assert_eq!(too_large.status.code(), Some(2));

    let zero_degree = spincalc(&["asymptotics", "-n", "0"]);
    assert_eq!(zero_degree.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    let verify = spincalc(&["verify"]);
    let out = stdout_of(&verify);
    assert!(out.contains("300/300 reference rows match"), "{out}");
    assert!(out.contains("all checks passed"), "{out}");

    let margolis = spincalc(&["verify-margolis"]);
    let out = stdout_of(&margolis);
    assert!(out.contains("module laws hold"), "{out}");
    assert!(out.contains("all checks passed"), "{out}");
}

#[test]
fn bench_reports_truncation_and_rows() {
    let out = stdout_of(&spincalc(&["bench", "--max-n", "99"]));
    assert!(out.contains("300 rows"), "{out}");
    assert!(out.contains("peak series truncation: 99"), "{out}");
}

#[test]
fn cache_dir_round_trips_and_survives_corruption() {
    let dir = tempfile::tempdir().expect("temp dir");
    let dir_arg = dir.path().to_str().expect("utf-8 temp path");
    let args = [
        "table", "--theory", "spinh", "--max-n", "30", "--format", "csv", "--cache-dir", dir_arg,
    ];

    let cold = stdout_of(&spincalc(&args));
    let cache_file = group_tables::cache_path(dir.path(), Theory::SpinH, 30);
    assert!(cache_file.exists());

    let warm = stdout_of(&spincalc(&args));
    assert_eq!(cold, warm);

    // A stale or damaged cache is recomputed, not trusted.
    std::fs::write(&cache_file, "#theory=spinh nmax=30 version=none\ngarbage\n").unwrap();
    let recovered = stdout_of(&spincalc(&args));
    assert_eq!(cold, recovered);
}

#[test]
fn asymptotics_reports_and_tolerances() {
    let out = stdout_of(&spincalc(&["asymptotics", "-n", "100"]));
    assert!(out.contains("hr-partition"), "{out}");
    assert!(out.contains("hr-ranksum"), "{out}");
    assert!(out.contains("gupta"), "{out}");
    assert!(out.contains("| 100 | 190569292 |"), "{out}");
    assert!(out.contains("tolerances: all estimators within 10.0%"), "{out}");

    // An absurd tolerance trips the exit-1 path.
    let strict = spincalc(&["asymptotics", "-n", "100", "--max-relative-error", "0.000001"]);
    assert_eq!(strict.status.code(), Some(1));
}
