use std::process::{Command, Output};

use pgc_core::census::CensusReport;
use pgc_core::verify::SuiteReport;

fn pgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgc"))
        .args(args)
        .env_remove("PGC_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gauss_prints_the_value() {
    let o = pgc(&["gauss", "--n", "4", "--k", "2", "--q", "2", "--no-header"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "35\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn header_goes_to_stderr_only() {
    let o = pgc(&["galois", "--n", "3", "--q", "3"]);
    assert_eq!(stdout(&o), "28\n");
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("# pgc "));
}

#[test]
fn census_json_round_trips() {
    let o = pgc(&["census", "--d", "2", "--p", "3", "--n", "2", "--explicit", "--format", "json", "--no-header"]);
    assert_eq!(o.status.code(), Some(0));
    let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "pgc.census/1");
    assert_eq!(v["orbit_count"], "8");
    v.as_object_mut().unwrap().remove("schema");
    let r: CensusReport = serde_json::from_value(v).unwrap();
    assert_eq!(r.explicit.unwrap().orbit_count, 8);
}

#[test]
fn output_is_deterministic() {
    let args = ["census", "--d", "3", "--p", "2", "--format", "json", "--no-header", "--workers", "3"];
    let a = pgc(&args);
    let b = pgc(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = pgc(&["census", "--d", "3", "--p", "2", "--format", "json", "--no-header", "--workers", "1"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn csv_has_a_header_row() {
    let o = pgc(&["ranks", "--d", "2", "--n", "3", "--format", "csv", "--no-header"]);
    assert_eq!(stdout(&o), "i,witt,cumulative\n1,2,2\n2,1,3\n3,2,5\n");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(pgc(&["gauss", "--n", "4"]).status.code(), Some(64));
    assert_eq!(pgc(&["gauss", "--n", "4", "--k", "2", "--q", "2", "--bogus"]).status.code(), Some(64));
    assert_eq!(pgc(&["census", "--d", "2", "--p", "4", "--no-header"]).status.code(), Some(64));
    assert_eq!(pgc(&["gauss", "--n", "4", "--k", "2", "--q", "2", "--budget", "nokey=1"]).status.code(), Some(64));
    assert_eq!(pgc(&["--help"]).status.code(), Some(0));
}

#[test]
fn resource_limits_exit_1() {
    let args = ["census", "--d", "3", "--p", "2", "--explicit", "--no-header"];
    let mut with_flag = args.to_vec();
    with_flag.extend(["--budget", "max_census_ops=10"]);
    assert_eq!(pgc(&with_flag).status.code(), Some(1));

    let o = Command::new(env!("CARGO_BIN_EXE_pgc"))
        .args(args)
        .env("PGC_BUDGET", "small,max_census_ops=10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));

    let path = std::env::temp_dir().join(format!("pgc-budget-{}.toml", std::process::id()));
    std::fs::write(&path, "max_census_ops = 10\n").unwrap();
    let mut with_config = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    with_config.extend(["--config", &p]);
    assert_eq!(pgc(&with_config).status.code(), Some(1));
    std::fs::remove_file(path).unwrap();
    assert_eq!(pgc(&args).status.code(), Some(0));
}

#[test]
fn verify_suites() {
    let o = pgc(&["verify", "qcomb", "--format", "json", "--no-header"]);
    assert_eq!(o.status.code(), Some(0));
    let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "pgc.verify/1");
    v.as_object_mut().unwrap().remove("schema");
    let r: SuiteReport = serde_json::from_value(v).unwrap();
    assert!(r.passed && r.criteria.len() == 2);

    let o = pgc(&["verify", "pgroup", "--budget", "max_aut_tuples=10", "--no-header"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL criterion  8"));
}

#[test]
fn fixed_and_count() {
    let o = pgc(&["fixed", "--matrix", "1,1;0,1", "--p", "2", "--brute", "--no-header"]);
    assert!(stdout(&o).starts_with("3\n"));
    let o = pgc(&["count", "--alpha", "2,1", "--beta", "1", "--q", "2", "--no-header"]);
    assert_eq!(stdout(&o), "3\n");
}
