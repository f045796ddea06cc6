use std::process::{Command, Output};

fn spin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spin-springer"))
        .args(args)
        .env_remove("SPIN_SPRINGER_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn map_prints_defect_and_bipartition() {
    let o = spin(&["map", "9,5,3,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "t=2 1,1/1\n");

    let o = spin(&["map", "2,2", "--convention", "t0-keep"]);
    assert_eq!(stdout(&o), "t=0 1/\n");

    let o = spin(&["--format", "json", "map", "9,5,2,2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["t"], 2);
    assert_eq!(v["bipartition"], "1,1,1/");
    assert_eq!(v["beta_raw"], serde_json::json!([0]));
}

#[test]
fn invert_picks_a_route() {
    let o = spin(&["invert", "--t", "3", "/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "9,5,4,4,1\n");

    let o = spin(&["invert", "--t", "2", "1,1/1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["route"], "brute_force");
    assert_eq!(v["partition"], "9,5,3,1");
    assert_eq!(v["n"], 18);

    let o = spin(&["invert", "--t", "-1", "/"]);
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn enumeration_commands() {
    assert_eq!(stdout(&spin(&["enum-xn", "4"])), "3,1\n2,2\n");
    assert_eq!(stdout(&spin(&["enum-xn", "2"])), "");
    assert_eq!(
        stdout(&spin(&["enum-bipartitions", "2"])),
        "2/\n1,1/\n1/1\n/2\n/1,1\n"
    );
    let o = spin(&["enum-bipartitions", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!(["1/", "/1"]));
}

#[test]
fn verify_exit_codes() {
    let o = spin(&["verify", "theorem", "--m", "3", "--t", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());

    assert_eq!(spin(&["verify", "theorem", "--m", "2", "--t", "3"]).status.code(), Some(0));
    assert_eq!(spin(&["verify", "bijection", "--n", "12"]).status.code(), Some(0));
    assert_eq!(spin(&["verify", "lemma1", "--m", "2", "--t", "2"]).status.code(), Some(0));
    assert_eq!(spin(&["verify", "lemma2", "--m", "1", "--t", "1"]).status.code(), Some(0));
    assert_eq!(spin(&["counterexample", "--t", "2"]).status.code(), Some(0));
}

#[test]
fn every_failure_path_has_its_code() {
    // usage / parse
    assert_eq!(spin(&[]).status.code(), Some(2));
    assert_eq!(spin(&["map", "9,a"]).status.code(), Some(2));
    assert_eq!(spin(&["invert", "--t", "1", "1,1"]).status.code(), Some(2));
    assert_eq!(spin(&["enum-xn", "4", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(spin(&["hasse", "bipartitions", "--m", "2", "--induced"]).status.code(), Some(2));
    // cap / precondition
    assert_eq!(spin(&["enum-xn", "61"]).status.code(), Some(3));
    assert_eq!(spin(&["enum-xn", "30", "--cap", "20"]).status.code(), Some(3));
    assert_eq!(spin(&["map", "2,2,2"]).status.code(), Some(3));
    assert_eq!(spin(&["verify", "lemma2", "--m", "3", "--t", "2"]).status.code(), Some(3));
    assert_eq!(spin(&["counterexample", "--t", "1"]).status.code(), Some(3));
    assert_eq!(spin(&["scan-threshold", "--m", "1", "--t-min", "3", "--t-max", "2"]).status.code(), Some(3));
    let o = spin(&["invert", "--t", "6", "1/"]);
    assert_eq!(o.status.code(), Some(0));
    let o = spin(&["invert", "--t", "-6", "1/"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn help_is_success() {
    let o = spin(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("scan-threshold"));
}

#[test]
fn scan_and_counterexample_output() {
    let o = spin(&["scan-threshold", "--m", "3", "--t-min", "2", "--t-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("t=2 violations="));
    assert_ne!(lines[0], "t=2 violations=0");
    assert_eq!(lines[3], "t=5 violations=0");

    let o = spin(&["counterexample", "--t", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["check"], "counterexample");
    assert_eq!(v["passed"], true);
}

#[test]
fn hasse_outputs() {
    let o = spin(&["hasse", "xn", "--n", "4"]);
    assert_eq!(stdout(&o), "2,2 < 3,1\n");
    let o = spin(&["hasse", "bipartitions", "--m", "1", "--format", "dot"]);
    assert!(stdout(&o).contains("n1 -> n0;"));
    let o = spin(&["hasse", "bipartitions", "--m", "2", "--induced", "--t", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let induced: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let o = spin(&["hasse", "bipartitions", "--m", "2", "--format", "json"]);
    let djm: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(induced, djm);
}

#[test]
fn json_is_byte_stable() {
    let args = ["verify", "bijection", "--n", "20", "--format", "json"];
    let a = spin(&args);
    let b = spin(&args);
    let c = Command::new(env!("CARGO_BIN_EXE_spin-springer"))
        .args(args)
        .env("SPIN_SPRINGER_WORKERS", "4")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}
