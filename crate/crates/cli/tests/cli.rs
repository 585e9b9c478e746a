use std::process::{Command, Output};

fn ffhg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffhg"))
        .args(args)
        .env_remove("FFHG_JOBS")
        .output()
        .expect("spawn ffhg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const HEADER: &str = "p,object,case,lhs,rhs,match,elapsed_us\n";

#[test]
fn verify_theorem_one_rows() {
    let o = ffhg(&["verify", "--theorems", "1", "--pmin", "2", "--pmax", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with(HEADER));
    assert!(!text.contains('\r'));
    let mut ps: Vec<u64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    ps.dedup();
    assert_eq!(ps, [5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97]);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true,0")));
}

#[test]
fn empty_range_keeps_header() {
    let o = ffhg(&["verify", "--theorems", "1", "--pmin", "2", "--pmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), HEADER);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["verify", "--theorems", "1", "--pmin", "100", "--pmax", "2"][..],
        &["verify", "--pmax", "10"],
        &["verify", "--theorems", "7", "--pmax", "10"],
        &["verify", "--lemmas", "nope", "--pmax", "10"],
        &["eval", "--p", "13", "--order", "8", "--a", "3"],
        &["eval", "--p", "15", "--order", "4", "--a", "3"],
        &[
            "eval", "--p", "13", "--order", "4", "--a", "3", "--root", "3",
        ],
        &["count", "--p", "13", "--family", "D", "--params", "4,1"],
        &["count", "--p", "13", "--family", "E", "--params", "0,0,0"],
        &["frobnicate"],
        &[],
    ] {
        assert_eq!(ffhg(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(ffhg(&["--help"]).status.code(), Some(0));
}

#[test]
fn eval_matches_closed_form() {
    let o = ffhg(&[
        "eval", "--p", "13", "--order", "6", "--a", "4", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["theorem"], "theorem3");
    assert_eq!(v["cases"].as_array().unwrap().len(), 2);
    assert!(v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["match"] == true));
    // every root of order 4 mod 13 gives a valid prime above 13
    for r in ["5", "8"] {
        let o = ffhg(&["eval", "--p", "13", "--order", "4", "--a", "4", "--root", r]);
        assert_eq!(o.status.code(), Some(0), "root {r}");
    }
}

#[test]
fn deterministic_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &str| {
        vec![
            "verify".to_string(),
            "--theorems".into(),
            "all".into(),
            "--lemmas".into(),
            "dnc,hello-again,prop".into(),
            "--pmax".into(),
            "150".into(),
            "--out".into(),
            dir.path().join(out).display().to_string(),
        ]
    };
    let run = |out: &str, jobs: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_ffhg"));
        c.args(args(out)).env_remove("FFHG_JOBS");
        if let Some(j) = jobs {
            c.env("FFHG_JOBS", j);
        }
        let o = c.output().unwrap();
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        std::fs::read(dir.path().join(out)).unwrap()
    };
    let a = run("a.csv", None);
    let b = run("b.csv", None);
    let c = run("c.csv", Some("4"));
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!(a.starts_with(HEADER.as_bytes()));
}

#[test]
fn jobs_flag_overrides_env() {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ffhg"));
    c.args(["verify", "--theorems", "1", "--pmax", "20", "--jobs", "2"])
        .env("FFHG_JOBS", "not-a-number");
    assert_eq!(c.output().unwrap().status.code(), Some(0));
    let mut c = Command::new(env!("CARGO_BIN_EXE_ffhg"));
    c.args(["verify", "--theorems", "1", "--pmax", "20"])
        .env("FFHG_JOBS", "not-a-number");
    assert_eq!(c.output().unwrap().status.code(), Some(1));
}

#[test]
fn json_report_lines() {
    let o = ffhg(&[
        "verify",
        "--theorems",
        "2",
        "--pmax",
        "17",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 15);
    for l in text.lines() {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["p"], 17);
        assert_eq!(v["match"], true);
    }
}

#[test]
fn jacobi_table() {
    let o = ffhg(&["jacobi", "--p", "13", "--orders", "4,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "p,a,b,jacobi,abs_square");
    assert_eq!(lines.len(), 1 + 8);
    // J(eps, eps) = p - 2
    assert_eq!(lines[1], "13,psi4^0,psi2^0,[1] 11,121");
    let nontrivial = lines
        .iter()
        .find(|l| l.starts_with("13,psi4^1,psi2^1,"))
        .unwrap();
    assert!(nontrivial.ends_with(",13"));
}

#[test]
fn count_families() {
    let o = ffhg(&["count", "--p", "13", "--family", "E", "--params", "0,-1,0"]);
    assert_eq!(
        stdout(&o),
        "p=13 curve=E[c=1,a2=0,a4=-1,a6=0] count=8 trace=6\n"
    );
    let o = ffhg(&[
        "count", "--p", "5", "--family", "e", "--params", "0,-1,0", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["trace"], -2);
    let o = ffhg(&["count", "--p", "17", "--family", "D", "--params", "8,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ffhg(&["count", "--p", "13", "--family", "C", "--params", "6,4,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("formula="));
}
