//! End-to-end runs of the `romik` binary: tables, exit codes, report
//! round-trips and determinism.

use std::process::{Command, Output};

use romik_core::congruence::{CheckReport, Status};

fn romik(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_romik")).args(args).output().expect("spawn romik")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn reports(o: &Output) -> Vec<CheckReport> {
    serde_json::from_slice(&o.stdout).expect("report JSON")
}

#[test]
fn compute_tables() {
    let o = romik(&["compute", "u", "--max-n", "0"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "0,1\n"));

    let o = romik(&["compute", "d", "--max-n", "12", "--format", "csv"]);
    assert!(stdout(&o).ends_with("12,-923351332174412751\n"));

    let o = romik(&["compute", "r", "--max-n", "6"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 28);
    assert!(text.lines().any(|l| l == "6,1,1247557386240"));

    let o = romik(&["compute", "d", "--max-n", "5", "--format", "json", "--pipelines", "recursive,poly"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows[5]["value"], "-26199");
    assert_eq!(rows[5]["n"], 5);
}

#[test]
fn rinv_listing_inverts_r() {
    let o = romik(&["compute", "rinv", "--max-n", "2", "--format", "text"]);
    let text = stdout(&o);
    assert!(text.contains("rinv(0,0) = 1\n"));
    assert!(text.contains("rinv(2,1) = -48\n"), "{text}");
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn guard_and_usage_errors_exit_three() {
    assert_eq!(romik(&["compute", "d", "--max-n", "401"]).status.code(), Some(3));
    assert_eq!(romik(&["verify", "no-such-check"]).status.code(), Some(3));
    assert_eq!(romik(&["verify", "thm1", "-p", "5", "-e", "2"]).status.code(), Some(3));
    assert_eq!(romik(&["scan", "c9"]).status.code(), Some(3));
    assert_eq!(romik(&["verify", "thm-main-2", "-p", "5", "--format", "csv", "-e", "1"]).status.code(), Some(3));
    assert_eq!(romik(&["--no-such-flag"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_romik"))
        .args(["compute", "u", "--max-n", "30"])
        .env("ROMIK_MAX_N", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = romik(&["compute", "u", "--max-n", "30", "--guard", "20", "--unsafe-no-guard"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_exit_codes() {
    let o = romik(&["verify", "thm-main-3", "-e", "4", "--horizon", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let o = romik(&["verify", "wakhare", "-p", "13", "--horizon", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(reports(&o)[0].check_id, "wakhare");
    let o = romik(&["verify", "thm-main-1", "-p", "3", "-e", "2", "--horizon", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let o = romik(&["verify", "thm-main-2", "-p", "13", "-e", "1", "--horizon", "20"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(reports(&o)[0].status, Status::Inconclusive);
}

#[test]
fn scans_exit_zero_whatever_the_outcome() {
    let o = romik(&["scan", "c2", "-p", "7", "-e", "8", "--horizon", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &reports(&o)[0];
    assert_eq!(r.status, Status::Counterexample);
    assert_eq!(r.observed.start, Some(102));
    let o = romik(&["scan", "c3", "-p", "3", "-e", "1", "--horizon", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(reports(&o).iter().all(|r| r.status == Status::VerifiedToHorizon));
}

#[test]
fn reports_round_trip_and_ignore_worker_count() {
    let one = romik(&["verify", "prop2", "--samples", "4", "--seed", "3", "--jobs", "1"]);
    let many = romik(&["verify", "prop2", "--samples", "4", "--seed", "3", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let parsed = reports(&one);
    assert_eq!(parsed.len(), 15);
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(again, stdout(&one));
    let mut sorted = parsed.clone();
    sorted.sort_by_key(|r| r.sort_key());
    assert_eq!(sorted, parsed);
}

#[test]
fn out_file_receives_the_body() {
    let dir = std::env::temp_dir().join(format!("romik-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d.csv");
    let o = romik(&["compute", "d", "--max-n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "0,1\n1,1\n2,-1\n3,51\n");
    std::fs::remove_dir_all(&dir).unwrap();
}
