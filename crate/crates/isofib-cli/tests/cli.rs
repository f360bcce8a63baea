//! End-to-end tests of the binary: output formats, exit codes, and the JSON
//! byte round-trip guarantee.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isofib"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn cqs_examples() {
    assert_eq!(
        stdout(&["cqs", "11", "7"]).trim(),
        "n=11 q=7 [2, 3, 2, 2] q'=8 B=10+4/11 h=-6/11"
    );
    assert_eq!(stdout(&["cqs", "2", "1"]).trim(), "n=2 q=1 [2] q'=1 B=3 h=0");
    let out = run(&["cqs", "4", "2"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("coprime"));
}

#[test]
fn appendix_b_row_counts() {
    // Sum of phi(n) over 2 <= n <= 9 is 27.
    let text = stdout(&["appendix-b", "--max-n", "9"]);
    assert_eq!(text.lines().count(), 27);
    assert!(text.contains("n=5 q=2 [3, 2] q'=3 B=6 h=-2/5"));
    let text = stdout(&["appendix-b"]);
    assert!(text.contains("n=12 q=5 [3, 2, 3] q'=5 B=8+5/6 h=-1"));
    assert!(text.contains("n=14 q=3 [5, 3] q'=5 B=8+4/7 h=-19/7"));
}

#[test]
fn classify_counts_and_errors() {
    for (genus, count) in [("1", 3), ("2", 6), ("3", 17)] {
        let text = stdout(&["classify", "--genus", genus]);
        assert_eq!(text.lines().count(), count, "genus {genus}");
    }
    let text = stdout(&["classify", "--genus", "2"]);
    assert!(text
        .lines()
        .last()
        .unwrap()
        .contains("(1/2, 2/5, 1/10)  n=10  c=4  delta=2+2/5  Irreducible"));
    let out = run(&["classify", "--genus", "0"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("infinitely many"));
}

#[test]
fn fibration_worked_example() {
    let text = stdout(&[
        "fibration",
        "--group",
        "psl2:7",
        "--v1",
        "genus=0; a,b,(a*b)^-1",
        "--v2",
        "same",
    ]);
    assert!(text.contains("K^2=-6  e=18  q=0  p_g=0  chi=1"));
    assert!(text.contains("4 x 1/2(1,1) + 1/3(1,1) + 1/3(1,2) + 1/7(1,1) + 1/7(1,2) + 1/7(1,4)"));
    assert!(text.contains("type (1/7, 2/7, 4/7)") && text.contains("(-1)-fibre: yes, c=2"));
    assert!(text.contains("minimal model: K^2=-4  e=16"));

    // A free action is reported as a quasi-bundle.
    let text = stdout(&[
        "fibration",
        "--group",
        "cyclic:2",
        "--v1",
        "genus=1; | x, 1",
        "--v2",
        "same",
    ]);
    assert!(text.contains("quasi-bundle: K^2 = 8 chi"));

    let out = run(&["fibration", "--group", "cyclic:2", "--v1", "genus=0; x", "--v2", "same"]);
    assert!(!out.status.success());
}

#[test]
fn construct_examples() {
    let text = stdout(&["construct", "--set", "1/2,1/3,1/6", "--q", "1"]);
    assert!(text.contains("n=6, 6 (-1)-fibres"));
    assert!(text.contains("c=3, delta=1+1/3"));

    // The elliptic case with p_g = q = 2.
    let text = stdout(&["construct", "--set", "1/3,1/3,1/3", "--q", "2"]);
    assert!(text.contains("q=2  p_g=2"));

    let out = run(&["construct", "--set", "1/2,1/4", "--q", "0"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("3/4"));
}

#[test]
fn verify_subcommand() {
    let text = stdout(&["verify", "--only", "groups"]);
    assert_eq!(text.trim(), "PASS groups");
    let out = run(&["verify", "--only", "nonsense"]);
    assert!(!out.status.success());
}

#[test]
fn json_round_trips() {
    let commands: &[&[&str]] = &[
        &["--format", "json", "cqs", "11", "7"],
        &["--format", "json", "appendix-b", "--max-n", "8"],
        &["--format", "json", "classify", "--genus", "2"],
        &[
            "--format",
            "json",
            "fibration",
            "--group",
            "cyclic:2",
            "--v1",
            "genus=0; x,x,x,x,x,x",
            "--v2",
            "genus=1; x,x | 1,1",
        ],
        &["--format", "json", "construct", "--set", "1/2,1/2", "--q", "0"],
        &["--format", "json", "verify", "--only", "appendix-b"],
    ];
    for args in commands {
        let text = stdout(args);
        let line = text.trim_end();
        let value: serde_json::Value = serde_json::from_str(line).expect("valid JSON");
        assert_eq!(
            serde_json::to_string(&value).unwrap(),
            line,
            "round trip for {args:?}"
        );
    }
}

#[test]
fn fibration_json_schema() {
    let text = stdout(&[
        "--format",
        "json",
        "fibration",
        "--group",
        "cyclic:2",
        "--v1",
        "genus=0; x,x,x,x,x,x",
        "--v2",
        "genus=1; x,x | 1,1",
    ]);
    let v: serde_json::Value = serde_json::from_str(text.trim_end()).unwrap();
    assert_eq!(v["group"], "Z2");
    assert_eq!(v["sing"][0]["mult"], 12);
    assert_eq!(v["invariants"]["K2"], 4);
    assert_eq!(v["invariants"]["chi"], 2);
    assert_eq!(v["fibres"].as_array().unwrap().len(), 2);
    assert_eq!(v["fibres"][0]["delta"], "6");
    assert_eq!(v["fibres"][0]["Y2"], -3);
    assert_eq!(v["minimal_model"]["K2"], 4);
}
