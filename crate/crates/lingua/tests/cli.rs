use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn lingua(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lingua")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lingua-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn run_prints_a_sorted_dump() {
    let out = lingua(&["run", corpus("hr_database.lingua").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("var salesmen_base = array [record {"));
    assert!(text.ends_with("error = OK\n"));
    let keys: Vec<&str> = text.lines().filter_map(|l| l.split(" = ").next()?.split(' ').nth(1)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn lingua_errors_exit_with_one() {
    let out = lingua(&["run", corpus("division_by_zero.lingua").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).ends_with("error = division-by-zero\n"));
}

#[test]
fn exhausted_budget_exits_with_three() {
    let out = lingua(&["run", "--max-steps", "10", corpus("forever.lingua").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_errors_exit_with_two_and_a_position() {
    let out = lingua(&["check", corpus("parse_error.lingua").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse_error.lingua:4:1:"));
    assert_eq!(lingua(&["check", corpus("isr.lingua").to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn quantifiers_are_an_internal_breach() {
    let f = temp_file("forall.lingua", "let x be number tel; x := 1; asr (for-all y : TT) rsa");
    assert_eq!(lingua(&["run", f.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn assertions_can_be_switched_off() {
    let f = temp_file("asr.lingua", "let x be number tel; x := 1; asr x > 5 rsa");
    assert_eq!(lingua(&["run", f.to_str().unwrap()]).status.code(), Some(1));
    let out = lingua(&["run", "--assertions", "off", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn no_restore_demands_concrete_syntax() {
    let f = temp_file("colloquial.lingua", "let x be number tel; x := 1 + 2 * 3");
    assert_eq!(lingua(&["run", f.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(lingua(&["run", "--no-restore", f.to_str().unwrap()]).status.code(), Some(2));
    let concrete = lingua(&["restore", f.to_str().unwrap()]);
    let g = temp_file("concrete.lingua", &stdout(&concrete));
    let out = lingua(&["run", "--no-restore", g.to_str().unwrap()]);
    assert_eq!(stdout(&out), "var x = 7\nerror = OK\n");
}

#[test]
fn limits_file_tightens_representability() {
    let limits = temp_file("tight.limits", "max_int_digits = 2\n");
    let f = temp_file("big.lingua", "let x be number tel; x := 60 * 2");
    let out = lingua(&["run", "--limits", limits.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).ends_with("error = overload\n"));
    let bad = temp_file("bad.limits", "speed = 3\n");
    assert_eq!(lingua(&["run", "--limits", bad.to_str().unwrap(), f.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn trace_lists_atomic_instructions() {
    let f = temp_file("trace.lingua", "let x be number tel; x := 0; while x < 2 do x := x + 1 od");
    let out = lingua(&["run", "--trace", f.to_str().unwrap()]);
    let trace = String::from_utf8(out.stderr).unwrap();
    assert_eq!(trace, "x := 0\nx := (x + 1)\nx := (x + 1)\n");
}

#[test]
fn restore_is_the_identity_on_its_output_and_deterministic() {
    for name in ["hr_database.lingua", "isr.lingua", "parity.lingua"] {
        let once = stdout(&lingua(&["restore", corpus(name).to_str().unwrap()]));
        let f = temp_file(name, &once);
        assert_eq!(stdout(&lingua(&["restore", f.to_str().unwrap()])), once);
        assert_eq!(stdout(&lingua(&["restore", corpus(name).to_str().unwrap()])), once);
    }
}

#[test]
fn grammar_prints_equations() {
    let out = lingua(&["grammar", corpus("algnumboo.sig").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("NumExp = 0 | 1 | plus(NumExp, NumExp)"));
    let bad = temp_file("bad.sig", "f : A B\n");
    let out = lingua(&["grammar", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}
