use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numberless"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const FIG1: [&str; 6] = ["-a", "builtin:fig1", "--set", "x=1/2", "--set", "y=1/4"];

#[test]
fn eval_prints_exact_and_float() {
    let mut args = vec!["eval"];
    args.extend(FIG1);
    args.extend(["--word", "i a f"]);
    let o = run(&args);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1/4\t0.25\n");
}

#[test]
fn unknown_letter_is_an_input_error() {
    let mut args = vec!["eval"];
    args.extend(FIG1);
    args.extend(["--word", "i z"]);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown letter"));
}

#[test]
fn missing_parameter_is_an_input_error() {
    let o = run(&["eval", "-a", "builtin:fig1", "--set", "x=1/2", "--word", "i"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_document_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"kind\": \"pa\", \"states\": [").unwrap();
    let o = run(&["eval", "-a", path.to_str().unwrap(), "--word", ""]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_props_is_clean_and_deterministic() {
    let a = run(&["check-props", "--seed", "11", "--trials", "6"]);
    let b = run(&["check-props", "--seed", "11", "--trials", "6"]);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    assert!(text.starts_with("id,inputs,lhs,rhs,lhs_float,rhs_float,relation,verdict\n"));
    assert!(!text.contains(",violated"));
    assert_eq!(text, stdout(&b));
}

#[test]
fn case_study_csv() {
    let o = run(&["case-study", "--x", "3/4", "--y", "1/4", "--n-max", "3", "--m-max", "64", "--eps", "1/10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,m,exact,float,above_threshold"));
    assert_eq!(lines.count(), 4 * 8);
    assert!(text.contains(",true\n"));
}

#[test]
fn monte_carlo_is_reproducible() {
    let mut args = vec!["monte-carlo"];
    args.extend(FIG1);
    args.extend(["--word", "i a f", "--samples", "2000", "--seed", "5"]);
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn built_documents_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("src.json");
    let doc = r#"{
  "kind": "pa",
  "name": "coin",
  "states": ["p", "f"],
  "alphabet": ["a"],
  "initial": "p",
  "final": ["f"],
  "transitions": [
    {"from": "p", "letter": "a", "to": {"p": "1/2", "f": "1/2"}},
    {"from": "f", "letter": "a", "to": {"f": "1"}}
  ]
}
"#;
    std::fs::write(&src, doc).unwrap();
    let fc = dir.path().join("fc.json");
    let o = run(&["fair-coin", "-a", src.to_str().unwrap(), "--lambda", "1/2", "-o", fc.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // `a` encoded with k = 1: the gadget resolves with probability 1/2
    let o = run(&["eval", "-a", fc.to_str().unwrap(), "--word", "a # #"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("1/4\t"), "{}", stdout(&o));

    let sim = dir.path().join("sim.json");
    let o = run(&["simulate-build", "-a", src.to_str().unwrap(), "-o", sim.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let dot = run(&["export-dot", "-a", sim.to_str().unwrap()]);
    assert!(dot.status.success(), "{}", String::from_utf8_lossy(&dot.stderr));
    assert!(stdout(&dot).starts_with("digraph"));
}
