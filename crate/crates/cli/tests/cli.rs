use std::process::{Command, Output};

use parkfn::exactalg::json::{from_json, to_json};

fn parkfn(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_parkfn"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("PARKFN_THREADS", t);
    }
    cmd.output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = parkfn(args, None);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn json_round_trips_bit_exactly() {
    for args in [
        &["gf", "--family", "pf", "--n", "4", "--stats", "x=unl,y=dis,z=des,w=rlm"][..],
        &["gf", "--family", "rk", "--m", "3", "--r", "2", "--k", "2", "--stats", "x=unl,y=rep", "--prob"],
        &["gf", "--family", "upf", "--n", "5", "--stats", "y=dis", "--method", "closed"],
    ] {
        let text = stdout(args);
        let poly = from_json(text.trim_end()).unwrap();
        assert_eq!(to_json(&poly), text.trim_end());
    }
}

#[test]
fn worked_examples() {
    let text = |a: &[&str]| stdout(a).trim_end().to_string();
    assert_eq!(
        text(&["gf", "--family", "pf", "--n", "2", "--stats", "x=unl,y=dis,z=des,w=rlm", "--format", "text"]),
        "xyw + zw^2 + w"
    );
    assert_eq!(text(&["gf", "--family", "pf", "--n", "0", "--format", "text"]), "1");
    assert_eq!(
        text(&["gf", "--family", "ppf", "--n", "3", "--stats", "x=unl,y=rep", "--method", "closed", "--format", "text"]),
        "x^2y^2 + x^2y + xy + x"
    );
}

#[test]
fn methods_agree_through_the_binary() {
    let base = ["gf", "--family", "pfmn", "--m", "3", "--n", "4", "--stats", "x=unl,y=dis,z=des,w=rlm"];
    let oracle = stdout(&base);
    let rec = stdout(&[&base[..], &["--method", "recurrence"]].concat());
    assert_eq!(oracle, rec);
    let unl = ["gf", "--family", "pfmn", "--m", "3", "--n", "4", "--stats", "x=unl"];
    assert_eq!(stdout(&unl), stdout(&[&unl[..], &["--method", "closed"]].concat()));
}

#[test]
fn output_is_independent_of_threads_and_repeats() {
    let args = ["gf", "--family", "pf", "--n", "5", "--stats", "x=lel,y=one,z=unl"];
    let a = parkfn(&args, Some("1"));
    let b = parkfn(&args, Some("3"));
    let c = parkfn(&args, None);
    let d = parkfn(&[&args[..], &["--sequential"]].concat(), None);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(a.stdout, d.stdout);
    assert!(a.status.success() && !a.stdout.is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(parkfn(&["gf", "--family", "pf", "--n", "3"], None).status.code(), Some(0));
    assert_eq!(parkfn(&["gf", "--family", "pf"], None).status.code(), Some(2));
    assert_eq!(parkfn(&["gf", "--family", "pf", "--n", "3", "--stats", "x=nope"], None).status.code(), Some(2));
    assert_eq!(parkfn(&["gf", "--nonsense"], None).status.code(), Some(2));
    assert_eq!(parkfn(&["verify", "no-such-suite"], None).status.code(), Some(2));
    assert_eq!(parkfn(&["gf", "--family", "pf", "--n", "11"], None).status.code(), Some(3));
    assert_eq!(parkfn(&["gf", "--family", "pf", "--n", "3"], Some("zero")).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = stdout(&["verify", "table1"]);
    assert!(out.starts_with("PASS table1"), "{out}");
    let out = stdout(&["verify", "counterexamples"]);
    assert!(out.contains("PASS counterexamples"), "{out}");
    let out = stdout(&["verify", "tree-recurrence", "--max-n", "4", "--verbose"]);
    assert!(out.lines().filter(|l| l.starts_with("pass")).count() > 10);
}

#[test]
fn dist_csv() {
    let out = stdout(&["dist", "--pmf", "displacement", "--n", "2", "--i", "1"]);
    assert_eq!(out, "k,probability\n0,2/3\n1,1/3\n");
    let out = stdout(&["dist", "--pmf", "displacement", "--n", "4", "--i", "0"]);
    assert_eq!(out, "k,probability\n0,1/1\n");
    let out = stdout(&["dist", "--pmf", "ur", "--m", "2", "--r", "1", "--k", "1"]);
    assert_eq!(out, "u,r,probability\n0,0,2/3\n1,1,1/3\n");
    let out = stdout(&["dist", "--limits", "--m", "50", "--m", "200", "--c", "1", "--r", "1"]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("m,k,lambda"));
    assert_eq!(parkfn(&["dist", "--pmf", "displacement", "--n", "2", "--i", "2"], None).status.code(), Some(2));
}
