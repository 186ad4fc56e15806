use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nphk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nphk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nphk-it-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn is_rational_text(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    let mut parts = s.splitn(2, '/');
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    digits(parts.next().unwrap()) && parts.next().is_none_or(digits)
}

#[test]
fn analyze_nla_phase_json() {
    let dir = scratch("nla");
    let json = dir.join("r.json");
    let o = nphk(&[
        "analyze",
        "--phi",
        "x*(y - x^2)^2 + x^7",
        "--p",
        "1,4/3,2",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["kind"], "D8");
    assert_eq!(v["m"], "2");
    assert_eq!(v["n"], "7");
    assert_eq!(v["h"], "7/4");
    assert_eq!(v["h_lin"], "5/3");
    assert_eq!(v["linearly_adapted"], false);
    assert_eq!(v["kp_table"][0]["k_p"], "17/7");
    assert_eq!(v["kp_table"][2]["k_p"], "0");
    for field in ["h", "h_lin"] {
        assert!(is_rational_text(v[field].as_str().unwrap()));
    }
    assert!(is_rational_text(v["polygon"]["d"].as_str().unwrap()));
    for e in v["kp_table"].as_array().unwrap() {
        assert!(is_rational_text(e["p"].as_str().unwrap()));
        assert!(is_rational_text(e["k_p"].as_str().unwrap()));
    }
    for s in v["profile"].as_array().unwrap() {
        for k in ["slope", "intercept", "u_from", "u_to"] {
            assert!(is_rational_text(s[k].as_str().unwrap()), "{k}: {}", s[k]);
        }
    }
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn analyze_e6() {
    let o = nphk(&["analyze", "--phi", "y^3 + x^4", "--p", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("class      E6"));
    assert!(text.contains("h = 12/7"));
    assert!(text.contains("k_p = 29/12"));
}

#[test]
fn rank_positive_phase_warns_and_keeps_polygon() {
    let o = nphk(&["analyze", "--phi", "x^2 + y^3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("rank >= 1: out of scope"));
    assert!(text.contains("d = 6/5"));
}

#[test]
fn errors_are_json_with_exit_codes() {
    let o = nphk(&["analyze", "--phi", "x^2 + + y"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "parse");

    let o = nphk(&["analyze", "--phi", "x + y^2"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"], "not_critical_at_origin");

    let o = nphk(&["decay", "--phi", "x^2 + y^3"]);
    assert_eq!(o.status.code(), Some(3));

    let o = nphk(&["analyze", "--phi", "x^4 + y^4", "--p", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decay_nondegenerate_phase() {
    let dir = scratch("decay");
    let csv = dir.join("d.csv");
    let svg = dir.join("d.svg");
    let o = nphk(&[
        "decay",
        "--phi",
        "x^2 + y^2",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("gamma_hat")).unwrap();
    let gamma: f64 = line.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!((gamma - 1.0).abs() < 0.05, "{line}");
    assert!(line.contains("1/h = 1.0000"));
    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().next(), Some("lambda,re_I,im_I,abs_I,quad_err"));
    assert_eq!(rows.lines().count(), 10);
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn randol_scan_reports_both_ratios() {
    let dir = scratch("randol");
    let csv = dir.join("r.csv");
    let o = nphk(&[
        "decay",
        "--phi",
        "(y-x^2)^2",
        "--randol",
        "--m",
        "2",
        "--q",
        "2,8",
        "--grid",
        "5",
        "--lmax",
        "256",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("q = 2 "));
    assert!(text.contains("q = 8 "));
    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().next(), Some("s1,s2,M_value"));
    assert_eq!(rows.lines().count(), 1 + 9 * 9);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn corpus_runs_filters_and_detects_poison() {
    let o = nphk(&["corpus"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = nphk(&["corpus", "--filter", "D"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS")).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|l| l[6..].starts_with('D')));

    let o = nphk(&["corpus", "--poison", "D10"]);
    assert_ne!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("FAIL")).count(), 1);
}

#[test]
fn identical_runs_give_identical_bytes() {
    let dir = scratch("det");
    let run = |name: &str| {
        let path = dir.join(name);
        let o = nphk(&["analyze", "--phi", "y^3 + y*x^3", "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        (fs::read(path).unwrap(), o.stdout)
    };
    assert_eq!(run("a.json"), run("b.json"));
    let seeded = |seed: &str| stdout(&nphk(&["corpus", "--seed", seed]));
    assert_eq!(seeded("7"), seeded("7"));
    fs::remove_dir_all(dir).unwrap();
}
