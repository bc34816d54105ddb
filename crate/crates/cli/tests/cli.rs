use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ellis-lab"));
    c.env_remove("ELLIS_LAB_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn enumerate_counts() {
    let o = run(&["enumerate", "--n", "3", "--mode", "I"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["order"], 34);
    assert_eq!(v["elements"].as_array().unwrap().len(), 34);
    assert_eq!(v["rank_ideal_sizes"], serde_json::json!([1, 10, 28, 34]));
    let o = run(&["enumerate", "--n", "4", "--mode", "J"]);
    assert_eq!(stdout_json(&o)["order"], 70);
}

#[test]
fn enumerate_csv() {
    let o = run(&["enumerate", "--n", "2", "--mode", "J", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "n,mode,order,rank_ideal_sizes,quotient_orders\n2,J,6,1;5;6,6;2;1\n"
    );
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["enumerate", "--n", "0"]).status.code(), Some(1));
    assert_eq!(
        run(&["enumerate", "--n", "3", "--mode", "K"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["enumerate"]).status.code(), Some(1));
}

#[test]
fn caps_exit_two_and_can_be_raised() {
    assert_eq!(run(&["enumerate", "--n", "7"]).status.code(), Some(2));
    assert_eq!(
        run(&["enumerate", "--n", "3", "--cap", "2"]).status.code(),
        Some(2)
    );
    let o = bin()
        .args(["enumerate", "--n", "7", "--mode", "J", "--format", "csv"])
        .env("ELLIS_LAB_CAP", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().contains("7,J,3432,"));
}

#[test]
fn verify_suites_pass() {
    for suite in ["inverse-axioms", "ideals", "rees", "xi", "lattice", "all"] {
        let o = run(&["verify", "--suite", suite, "--n", "3"]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        let v = stdout_json(&o);
        assert_eq!(v["pass"], true, "{suite}");
        assert!(v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["pass"] == true));
    }
}

#[test]
fn witness_refutes_with_clause() {
    let o = run(&["witness", "--in", &fixture("bm_refuted_i.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout_json(&o),
        serde_json::json!({"verdict": "refuted", "clause": "(i)"})
    );
    let o = run(&["witness", "--in", &fixture("cx_wrap.json")]);
    assert_eq!(stdout_json(&o)["clause"], "wrap");
}

#[test]
fn witness_builds_and_rechecks() {
    for name in ["bm_consistent.json", "alpha_sym.json"] {
        let o = run(&["witness", "--in", &fixture(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let v = stdout_json(&o);
        assert_eq!(v["verdict"], "consistent");
        assert_eq!(v["recheck"], "pass");
    }
    let v = stdout_json(&run(&["witness", "--in", &fixture("alpha_sym.json")]));
    assert_eq!(v["witness"]["kind"], "permutation");
}

#[test]
fn malformed_input_exits_one() {
    let o = run(&["witness", "--in", &fixture("malformed.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line"));
    assert_eq!(
        run(&["witness", "--in", "/no/such/file.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    for args in [
        &["lattice", "--seed", "4"][..],
        &["verify", "--suite", "lattice", "--seed", "9"][..],
        &["enumerate", "--n", "4"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
    let path = std::env::temp_dir().join(format!("ellis-lab-out-{}.json", std::process::id()));
    let o = run(&["lattice", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, run(&["lattice"]).stdout);
}
