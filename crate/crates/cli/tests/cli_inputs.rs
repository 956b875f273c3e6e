use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodgeloci")).args(args).output().expect("CLI runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        &[],
        &["tangent", "--n", "3", "--d", "5", "--alpha", "1,1"],
        &["tangent", "--n", "2", "--d", "2", "--alpha", "1,1"],
        &["tangent", "--n", "2", "--d", "5", "--alpha", "2,1"],
        &["tangent", "--n", "2", "--d", "5", "--alpha", "1,1,1"],
        &["tangent", "--n", "2", "--d", "5"],
        &["hilbert", "--n", "2", "--d", "5", "--alpha", "1,1", "--random"],
        &["hilbert", "--n", "2", "--d", "5", "--poly", "{\"vars\":4,"],
        &["hilbert", "--n", "2", "--d", "5", "--poly", "/nonexistent/class.json"],
        &["recover", "--n", "2", "--d", "5", "--a", "1+"],
        &["recover", "--n", "2", "--d", "5", "--a", "i,1"],
        &["tangent", "--n", "2", "--d", "5", "--alpha", "1,1", "--pairing", "0,0,1,2"],
        &["tangent", "--n", "2", "--d", "5", "--alpha", "1,1", "--order", "0,1,2"],
        &["special", "--n", "2", "--d", "4", "--a", "2,z"],
        &["special", "--n", "2", "--d", "5", "--a", "1,1"],
        &["split-intersection", "--n", "2", "--d", "5", "--type", "0,2"],
        &["plane", "--n", "2", "--d", "5"],
        &["cross-ratio", "--d", "5", "--a", "1/0"],
        &["tangent", "--n", "2", "--d", "5", "--alpha", "1,1", "--output", "xml"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn failed_checks_exit_with_one_and_still_report() {
    let out = run(&["scan-bounds", "--n", "2", "--d", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["min"], 1);

    let out = run(&["scan-bounds", "--n", "2", "--d", "6", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["partial"], true);

    // linearly dependent forms
    let forms = r#"[{"vars":4,"m":10,"terms":[{"exp":[1,0,0,0],"coeff":["1","0","0","0"]}]},{"vars":4,"m":10,"terms":[{"exp":[1,0,0,0],"coeff":["2","0","0","0"]}]}]"#;
    let out = run(&["plane", "--n", "2", "--d", "5", "--forms", forms]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dependent"));
}

#[test]
fn successful_runs() {
    let out = run(&["tangent", "--n", "2", "--d", "5", "--alpha", "1,1", "--shape"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["value"], 2);
    assert_eq!(v["classification"], "attains-linear-minimum");
    assert_eq!(v["shape"], "linear");

    let out = run(&["linear-cycle", "--n", "2", "--d", "3", "--alpha", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["polynomial"]["terms"].as_array().unwrap().len(), 4);

    let out = run(&["pair", "--n", "2", "--d", "3", "--alpha", "1,1", "--alpha2", "1,1"]);
    assert_eq!(stdout_json(&out)["intersection"]["coords"][0], "-4/27");

    let out = run(&["certify", "--n", "2", "--d", "4", "--alpha", "1,3", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("alpha,pairing,c,status"));
    assert_eq!(text.lines().count(), 1 + 16);

    let out = run(&["split-intersection", "--n", "2", "--d", "5", "--type", "1,2", "--output", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().lines().any(|l| l.starts_with("degree_d_dim") && l.ends_with(" 3")));
}

#[test]
fn polynomial_input_matches_named_class() {
    let named = run(&["linear-cycle", "--n", "2", "--d", "5", "--alpha", "3,7"]);
    let poly = stdout_json(&named)["polynomial"].to_string();
    let a = run(&["hilbert", "--n", "2", "--d", "5", "--poly", &poly]);
    let b = run(&["hilbert", "--n", "2", "--d", "5", "--alpha", "3,7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
