use std::io::Write;
use std::process::Command;

use serde_json::Value;
use vcoalg_cli::main_with;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (Value, i32) {
    let mut argv = vec!["vcoalg".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (out, err, code) = main_with(argv);
    assert!(err.is_empty(), "{err}");
    (serde_json::from_str(&out).unwrap(), code)
}

fn run_err(args: &[&str]) -> (String, i32) {
    let mut argv = vec!["vcoalg".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (_, err, code) = main_with(argv);
    (err, code)
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn check_valid_and_broken() {
    let (r, code) = run(&["check", &fixture("c2.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["passed"], true);

    let (r, code) = run(&["check", &fixture("broken_refl.json")]);
    assert_eq!(code, 1);
    let fail = r["checks"].as_array().unwrap().iter().find(|c| c["holds"] == false).unwrap();
    assert!(fail["law"].as_str().unwrap().ends_with("reflexivity"));
    assert_eq!(fail["witness"], serde_json::json!(["a"]));
}

#[test]
fn check_non_distributive_quantale() {
    let (r, code) = run(&["check", &fixture("n5.json")]);
    assert_eq!(code, 1);
    let fails: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["holds"] == false).collect();
    assert!(!fails.is_empty());
    assert!(fails.iter().all(|c| c["witness"].as_array().unwrap().len() == 3));
}

#[test]
fn hausdorff_on_the_line() {
    let (r, code) = run(&["hausdorff", "--category", &fixture("line.json"), "--a", "0,1", "--b", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["h_ab"], "2");
    assert_eq!(r["result"]["h_ba"], "3");
    assert_eq!(r["result"]["symmetric"], "3");
    let (r, _) = run(&["hausdorff", "--category", &fixture("line.json"), "--a", "0,1", "--b", ""]);
    assert_eq!(r["result"]["h_ab"], "0");
}

#[test]
fn chain_sizes() {
    let (r, code) = run(&["chain", "--functor", "H", "--quantale", "bool", "--depth", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["sizes"], serde_json::json!([1, 2, 3, 4, 5, 6, 7]));
}

#[test]
fn cantor_on_two_chain() {
    let (r, code) = run(&["cantor", "--category", &fixture("c2.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["maps_checked"], 8);
    assert_eq!(r["result"]["not_injective"], 8);
    assert_eq!(r["result"]["first"]["witness"]["verdict"], "not-injective");
}

#[test]
fn lift_swap_gives_top() {
    let (r, code) = run(&["lift", "--coalgebra", &fixture("swap.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["matrix"], serde_json::json!([["1", "1"], ["1", "1"]]));
}

#[test]
fn behave_worked_example() {
    let mut argv = vec!["vcoalg".to_string()];
    argv.extend(["behave", "--coalgebra", &fixture("worked.json"), "--format", "csv"].map(String::from));
    let (out, _, code) = main_with(argv);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "x,y,0,1/2,1,3,3"));
    assert!(out.lines().any(|l| l == "y,z,0,5/2,5/2,5/2,5/2"));
}

#[test]
fn equalize_and_ana() {
    let fan = fixture("fan.json");
    let (r, code) =
        run(&["equalize", "--coalgebra", &fan, "--target", &fan, "--f", "x:x,y:y,z:z", "--g", "x:x,y:z,z:y"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["states"], serde_json::json!([]));
    let (r, code) = run(&["ana", "--coalgebra", &fixture("loop_stop.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["behaviour"], serde_json::json!({"x": "1", "y": "0", "z": "inf"}));
}

#[test]
fn input_errors_exit_2() {
    let f = temp_json(r#"{"quantale": "bool", "states": ["a"], "extra": true}"#);
    let (err, code) = run_err(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown field") && err.contains("line 1"), "{err}");

    let f = temp_json(r#"{"version": 2, "quantale": "bool", "states": []}"#);
    assert_eq!(run_err(&["check", f.path().to_str().unwrap()]).1, 2);

    let (_, code) = run_err(&["hausdorff", "--category", &fixture("line.json"), "--a", "7", "--b", "0"]);
    assert_eq!(code, 2);
    assert_eq!(run_err(&["cantor", "--category", &fixture("broken_refl.json")]).1, 2);
    assert_eq!(run_err(&["nonsense"]).1, 2);
}

#[test]
fn cap_exceeded_exits_3() {
    let (err, code) = run_err(&["cantor", "--category", &fixture("c2.json"), "--cap", "4"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn binary_reports_are_reproducible() {
    let bin = env!("CARGO_BIN_EXE_vcoalg");
    let go = || Command::new(bin).args(["suite", "--cases", "30", "--seed", "9"]).output().unwrap();
    let (a, b) = (go(), go());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(bin).args(["suite", "--cases", "30", "--seed", "9", "--sequential"]).output().unwrap();
    let strip = |o: &[u8]| String::from_utf8_lossy(o).replace(",\n    \"--sequential\"", "");
    assert_eq!(strip(&a.stdout), strip(&c.stdout));
}
