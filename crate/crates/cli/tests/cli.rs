use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn fairsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairsim"))
        .args(args)
        .env_remove("FAIRSIM_ARITY_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn check_nd_on_b_trees_and_ring() {
    for method in ["fixpoint", "game", "both"] {
        let o = fairsim(&[
            "check-nd",
            "--lhs",
            &fixture("ex312X.nbta"),
            "--rhs",
            &fixture("ex312Y.nbta"),
            "--method",
            method,
        ]);
        assert_eq!(o.status.code(), Some(0), "{method}");
        let out = stdout(&o);
        assert!(out.contains("verdict: holds"));
        assert!(out.contains("witness is the full relation"));
    }
    let o = fairsim(&[
        "check-nd",
        "--lhs",
        &fixture("ex312X.nbta"),
        "--rhs",
        &fixture("ex312Y.nbta"),
        "--relation",
        &fixture("ex312full.rel"),
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn check_nd_failure_names_the_condition() {
    // the reverse direction: the ring accepts trees that x1 does not
    let dir = tempfile::tempdir().unwrap();
    let rel = write(dir.path(), "r.rel", "pair y0 x2\n");
    let o = fairsim(&[
        "check-nd",
        "--lhs",
        &fixture("ex312Y.nbta"),
        "--rhs",
        &fixture("ex312X.nbta"),
        "--relation",
        &rel,
        "--method",
        "fixpoint",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("verdict: fails"), "{out}");
    assert!(out.contains("condition: initial-states"), "{out}");
    assert!(out.contains("counterexample:"), "{out}");
}

#[test]
fn game_dump_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("game.txt");
    let o = fairsim(&[
        "check-nd",
        "--lhs",
        &fixture("ex312X.nbta"),
        "--rhs",
        &fixture("ex312Y.nbta"),
        "--method",
        "game",
        "--dump-game",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dump).unwrap();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("0 * owner=Odd"), "{first}");
    assert!(first.ends_with("winner=Even"), "{first}");
}

#[test]
fn check_prob_fixtures() {
    for search in [false, true] {
        let mut args = vec![
            "check-prob".to_string(),
            "--lhs".into(),
            fixture("ex416X.pbwa"),
            "--rhs".into(),
            fixture("ex416Y.pbwa"),
            "--matrix".into(),
            fixture("ex416A.mat"),
        ];
        if search {
            args.push("--search".into());
        }
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = fairsim(&args);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert!(out.contains("limit11 y1 x1=1/2"), "{out}");
        assert!(out.contains("limit12 y1 x2=1/2"), "{out}");
    }
    let o = fairsim(&[
        "check-prob",
        "--lhs",
        &fixture("ex616X.pbwa"),
        "--rhs",
        &fixture("ex616Y.pbwa"),
        "--matrix",
        &fixture("ex616A.mat"),
    ]);
    assert_eq!(o.status.code(), Some(3), "no sequences and no --search is a usage error");
}

#[test]
fn check_prob_fails_and_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(
        dir.path(),
        "x.pbwa",
        "pbwa\nalphabet a\nstates p\ninitial p 1\naccepting p\ntrans p a p 1\n",
    );
    let y = write(dir.path(), "y.pbwa", "pbwa\nalphabet a\nstates q\ninitial q 1\naccepting\ntrans q a q 1\n");
    let one = write(dir.path(), "one.mat", "row q p=1\n");
    let o = fairsim(&["check-prob", "--lhs", &x, "--rhs", &y, "--matrix", &one, "--search"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("verdict: inconclusive"));

    let half = write(dir.path(), "half.mat", "row q p=1/2\n");
    let o = fairsim(&["check-prob", "--lhs", &x, "--rhs", &y, "--matrix", &half, "--search"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("condition: initial-vector"), "{out}");

    let bad = write(dir.path(), "bad.mat", "row q p=1\nseq11 0\nseq12 0\n");
    let o = fairsim(&["check-prob", "--lhs", &x, "--rhs", &y, "--matrix", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("condition: final-element"));
}

#[test]
fn lang_prob_leaking_chain() {
    let o = fairsim(&["lang-prob", "--automaton", &fixture("ex43.pbwa"), "--word", "aa"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1/12");
    let o = fairsim(&["lang-prob", "--automaton", &fixture("ex43.pbwa"), "--word", "ac"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn oracle_commands() {
    let o = fairsim(&[
        "oracle",
        "prefix",
        "--lhs",
        &fixture("ex312X.nbta"),
        "--rhs",
        &fixture("ex312Y.nbta"),
        "--depth",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("necessary condition"));

    let o = fairsim(&[
        "oracle",
        "cylinder",
        "--lhs",
        &fixture("ex416X.pbwa"),
        "--rhs",
        &fixture("ex416Y.pbwa"),
    ]);
    assert_eq!(o.status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let all = write(
        dir.path(),
        "all.nbta",
        "nbta\nalphabet a:1 b:1\nstates s\ninitial s\naccepting s\ntrans s a s\ntrans s b s\n",
    );
    let inf_b = write(
        dir.path(),
        "infb.nbta",
        "nbta\nalphabet a:1 b:1\nstates p q\ninitial p\naccepting q\ntrans p a p\ntrans p b q\ntrans q a p\ntrans q b q\n",
    );
    let o = fairsim(&["oracle", "lasso", "--lhs", &all, "--rhs", &inf_b, "--stem-bound", "2", "--loop-bound", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(ε, a)"), "{}", stdout(&o));
    let o = fairsim(&["oracle", "lasso", "--lhs", &inf_b, "--rhs", &all]);
    assert_eq!(o.status.code(), Some(0));
    let o = fairsim(&["oracle", "lasso", "--lhs", &fixture("ex33.nbta"), "--rhs", &all]);
    assert_eq!(o.status.code(), Some(3), "binary symbols are not words");
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(fairsim(&[]).status.code(), Some(3));
    assert_eq!(fairsim(&["check-nd", "--lhs", "x"]).status.code(), Some(3));
    assert_eq!(fairsim(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(
        fairsim(&["check-nd", "--lhs", "/nonexistent.nbta", "--rhs", "/nonexistent.nbta"])
            .status
            .code(),
        Some(3)
    );
    let help = fairsim(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("check-nd"));
}

#[test]
fn arity_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_fairsim"))
            .args(["check-nd", "--lhs", &fixture("ex33.nbta"), "--rhs", &fixture("ex33.nbta")])
            .env("FAIRSIM_ARITY_CAP", cap)
            .output()
            .unwrap()
    };
    let o = run("1");
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap 1"));
    assert_eq!(run("2").status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "check-prob",
        "--lhs",
        &fixture("ex416X.pbwa"),
        "--rhs",
        &fixture("ex416Y.pbwa"),
        "--matrix",
        &fixture("ex416A.mat"),
        "--search",
        "--no-timing",
    ];
    assert_eq!(stdout(&fairsim(&args)), stdout(&fairsim(&args)));
    let suite = ["suite", "--seed", "3", "--count", "5"];
    let first = fairsim(&suite);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&fairsim(&suite)));
}

#[test]
fn empty_suite() {
    let o = fairsim(&["suite", "--count", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("nbta pairs: 0"), "{out}");
    assert!(out.contains("violations: 0"), "{out}");
}
