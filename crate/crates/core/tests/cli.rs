use std::process::{Command, Output};

use symdyn::scenario::{Num, SetSpec};

fn symdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symdyn"))
        .args(args)
        .env("SYMDYN_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn summary(text: &str, key: &str) -> String {
    let prefix = format!("# {key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in output"))
        .to_string()
}

#[test]
fn verify_expansion_passes_on_both_examples() {
    for name in ["example-5.1", "example-5.2"] {
        let o = symdyn(&["verify-expansion", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(summary(&stdout(&o), "weak_ce"), "true");
    }
}

#[test]
fn every_pattern_of_the_interval_example_verifies() {
    for p in ["all-f1", "all-f2", "alternate", "1121"] {
        let o = symdyn(&["verify-expansion", "example-5.1", "--pattern", p]);
        assert_eq!(o.status.code(), Some(0), "{p}");
        let text = stdout(&o);
        assert_eq!(summary(&text, "separation"), "0.25");
        for row in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
            assert!(row.ends_with(",0,3"), "{p}: {row}");
        }
    }
}

#[test]
fn orbit_csv_has_the_figure_length() {
    let o = symdyn(&["orbit", "example-5.2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,x1,x2"));
    assert_eq!(lines.clone().count(), 5001);
    assert_eq!(lines.next(), Some("0,0.12,0.01"));
}

#[test]
fn orbit_and_set_orbit_are_deterministic() {
    for args in [
        &["orbit", "example-5.2"][..],
        &["set-orbit", "example-5.2"][..],
        &["chaos-stats", "example-5.1", "--horizon", "512"][..],
        &["conjugacy-check", "example-5.1", "--samples", "20", "--seed", "9"][..],
    ] {
        let a = symdyn(args);
        let b = symdyn(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_symdyn"))
            .args(["conjugacy-check", "example-5.1", "--samples", "40"])
            .env("SYMDYN_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn set_orbit_planar_rows() {
    let o = symdyn(&["set-orbit", "example-5.2", "--a0", "0.1,0.1;0.2,0.2", "--steps", "3"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("step,point_index,x,y"));
    assert_eq!(lines.count(), 8);
}

#[test]
fn set_orbit_interval_rows() {
    let o = symdyn(&["set-orbit", "example-5.1", "--a0", "0:0.1;0.8:0.9", "--steps", "2"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("step,component_count,hull_lo,hull_hi"));
    assert!(text.lines().nth(1).unwrap().starts_with("0,2,0,0.9"));
}

#[test]
fn sft_info_on_the_full_shift() {
    let o = symdyn(&["sft-info", "--matrix", "1,1;1,1"]);
    let text = stdout(&o);
    assert_eq!(summary(&text, "spectral_radius"), "2");
    assert_eq!(summary(&text, "irreducible"), "true");
    assert_eq!(summary(&text, "row_sum_at_least_two"), "true");
}

#[test]
fn decode_fixed_point() {
    let o = symdyn(&["decode", "example-5.1", "--pattern", "all-f1", "--alpha", "2"]);
    let text = stdout(&o);
    let row = text.lines().last().unwrap();
    let x: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((x - 15.0 / 16.0).abs() < 1e-9);
}

#[test]
fn itinerary_matches_decoded_word() {
    let o = symdyn(&["itinerary", "example-5.1", "--pattern", "all-f1", "--x0", "0.9375", "--steps", "5"]);
    assert_eq!(summary(&stdout(&o), "word"), "(2,2,2,2,2)");
}

#[test]
fn classify_lists_applicable_theorems() {
    let o = symdyn(&["classify", "example-5.2"]);
    let text = stdout(&o);
    assert_eq!(summary(&text, "h3"), "false");
    assert!(summary(&text, "applicable").contains("3.7"));
}

#[test]
fn json_report_echoes_the_seed() {
    let o = symdyn(&["--json", "--seed", "42", "conjugacy-check", "example-5.1", "--samples", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "conjugacy-check");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["scenario"]["seed"], 42);
    assert!(v["wall_time_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.csv");
    let o = symdyn(&["orbit", "example-5.2", "--steps", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap().lines().count(), 12);
}

#[test]
fn scenario_files_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let text = symdyn::scenario::builtin_5_1(&symdyn::examples::Pattern51::AllF2).to_json();
    std::fs::write(&path, text).unwrap();
    let o = symdyn(&["verify-expansion", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn failing_verification_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut s = symdyn::scenario::builtin_5_1(&symdyn::examples::Pattern51::AllF2);
    // f2 maps [0, 1/4] onto [0, 7/4], which misses part of [3/2, 2]
    s.family.steps = Some(vec![vec![
        SetSpec::Interval([Num(0.0), Num(0.25)]),
        SetSpec::Interval([Num(1.5), Num(2.0)]),
    ]]);
    s.family.pattern = Some(vec![0]);
    std::fs::write(&path, s.to_json()).unwrap();
    let o = symdyn(&["verify-expansion", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn errors_exit_one() {
    assert_eq!(symdyn(&["bogus"]).status.code(), Some(1));
    assert_eq!(symdyn(&["verify-expansion", "no-such-scenario"]).status.code(), Some(1));
    assert_eq!(symdyn(&["decode", "example-5.1", "--alpha", "1,3"]).status.code(), Some(1));
    assert_eq!(symdyn(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_scenario_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"version\": 1,\n  \"name\": \"x\",\n  oops\n}\n").unwrap();
    let o = symdyn(&["verify-expansion", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}
