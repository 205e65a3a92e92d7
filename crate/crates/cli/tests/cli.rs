use std::process::{Command, Output};

use serde_json::Value;

fn dmrb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmrb")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = dmrb(args);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (code, v)
}

fn status<'a>(v: &'a Value, name: &str) -> &'a str {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))["status"]
        .as_str()
        .unwrap()
}

#[test]
fn check_identity_elements() {
    for mu in ["1", "-1"] {
        let (code, v) = report(&["check", "--deg", "5", "--mu", mu, "--g", "1", "--tests", "quad,stabM,dmr:stab,dmr:grouplike,gt"]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["schema"], "dmrb-report/1");
        assert_eq!(v["command"], "check");
        assert_eq!(v["config"]["degree"], 5);
        assert_eq!(v["summary"]["pass"], 5);
    }
}

#[test]
fn failing_verdict_exits_one() {
    let (code, v) = report(&["check", "--deg", "5", "--g", "X0 X1", "--tests", "gt,quad"]);
    assert_eq!(code, 1);
    assert_eq!(status(&v, "gt"), "fail");
    assert_eq!(v["checks"][0]["data"]["duality"], false);
}

#[test]
fn series_input_and_lie_input() {
    let (code, v) = report(&["check", "--deg", "4", "--g", "exp([u0,u1])", "--tests", "grouplike,quad"]);
    assert_eq!(code, 1);
    assert_eq!(status(&v, "grouplike"), "pass");
    assert_eq!(status(&v, "quad"), "fail");
    let (_, v) = report(&["check", "--deg", "4", "--lie", "12; [u0,u1]", "--tests", "quad"]);
    assert_eq!(status(&v, "quad"), "pass");
    assert_eq!(v["input"]["x"]["u0*u1"], "1");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["check", "--g", "t0 + * t1"][..],
        &["check", "--g", "X0 X2"],
        &["check", "--tests", "nonsense"],
        &["check", "--ring", "padic:4:2"],
        &["solve-lie", "--deg", "4", "--deg-max", "4"],
        &["check-padic", "--lambda", "1"],
        &["frobnicate"],
    ] {
        let out = dmrb(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = dmrb(&["check", "--g", "t0 + * t1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 6"));
}

#[test]
fn padic_checks() {
    let (code, v) = report(&["check-padic", "--p", "3", "--K", "3", "--deg", "5", "--lambda", "-1", "--f", "1"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["config"]["p"], 3);
    assert_eq!(v["config"]["K"], 3);
    let (code, v) = report(&["check-padic", "--ring", "padic:5:2", "--deg", "4", "--lambda", "2", "--f", "X0", "--tests", "star-roundtrip"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = report(&["check-padic", "--p", "5", "--K", "2", "--lambda", "5", "--tests", "star-roundtrip"]);
    assert_eq!(code, 1);
    assert!(v["checks"][0]["detail"].as_str().unwrap().contains("error"));
}

#[test]
fn gamma_of_x1() {
    let (code, v) = report(&["gamma", "--deg", "4", "--g", "X1"]);
    assert_eq!(code, 0);
    let data = &v["checks"][0]["data"];
    assert_eq!(data["gamma"], "1 + t + 1/2*t^2 + 1/6*t^3 + 1/24*t^4");
    assert_eq!(data["gamma_aut_M(1)"], "1 + 2*t1 + t1*t1");
    assert_eq!(status(&v, "gammaRefl"), "skipped");
}

#[test]
fn solve_lie_report() {
    let (code, v) = report(&["solve-lie", "--deg", "6", "--deg-max", "5", "--compare", "quad,primM", "--check-inclusion", "stabW"]);
    assert_eq!(code, 0, "{v}");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    assert_eq!(checks[0]["name"], "degree-01");
    for c in checks {
        assert_eq!(c["data"]["same_space"], true);
        assert_eq!(c["data"]["inclusion"], true);
    }
}

#[test]
fn discrete_enumeration() {
    let (code, v) = report(&["enumerate-discrete", "--max-len", "5", "--deg", "5", "--samples", "50"]);
    assert_eq!(code, 0, "{v}");
    let members = &v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "window").unwrap()["data"]["members"];
    assert_eq!(members.as_array().unwrap().len(), 2);
}

#[test]
fn reports_are_deterministic() {
    let args = ["suite", "group-axioms", "--deg", "4", "--seed", "7"];
    let a = dmrb(&args);
    let b = dmrb(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = dmrb(&["suite", "group-axioms", "--deg", "4", "--seed", "8"]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn json_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("dmrb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = dmrb(&["suite", "hopf", "--deg", "4", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("hopf/coassociativity"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["input"]["suite"], "hopf");
    assert_eq!(v["summary"]["fail"], 0);
    std::fs::remove_dir_all(&dir).unwrap();
}
