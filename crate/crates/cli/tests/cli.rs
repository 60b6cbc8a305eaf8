use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn dyck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn check_classifies_all_three_classes() {
    let one = dyck(&["--pairs", "3", "--brackets", "check", "([()()]{}[])()"]);
    assert_eq!(code(&one), 0);
    assert!(stdout(&one).contains("class: one_sided\n"));

    let two = dyck(&["--brackets", "check", ")()(][)("]);
    assert_eq!(code(&two), 0);
    let text = stdout(&two);
    assert!(text.contains("class: two_sided_only\n"));
    assert!(text.contains("in_closure: true\n"));

    let neither = dyck(&["check", "aab"]);
    assert_eq!(code(&neither), 0);
    let text = stdout(&neither);
    assert!(text.contains("class: neither\n"));
    assert!(text.contains("moved_point: 0\n"));
}

#[test]
fn check_structured_output_parses() {
    let out = dyck(&["--format", "structured", "check", "aBbA"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["class"], "two_sided_only");
    assert_eq!(v["in_closure"], true);
}

#[test]
fn reduce_prints_trace() {
    let out = dyck(&["reduce", "aBbA"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out)
        .starts_with("word: aBbA\nstep 1: delete (B,b) at 1\nstep 2: delete (a,A) at 0\n"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&dyck(&["check", "axb"])), 2);
    assert_eq!(code(&dyck(&["--pairs", "0", "check", "a"])), 2);
    assert_eq!(
        code(&dyck(&["--pairs", "4", "--brackets", "check", "()"])),
        2
    );
    assert_eq!(code(&dyck(&["verify", "/nonexistent/certificate"])), 2);
    assert_eq!(
        code(&dyck(&["selftest", "--max-length", "20", "--cap", "1000"])),
        2
    );
    assert_eq!(code(&dyck(&["frobnicate"])), 2);
}

#[test]
fn approximate_with_cyclic_quotient_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cyclic3.txt");
    fs::write(
        &path,
        "degree 3\npairs 2\na: 1 2 0\nA: 1 2 0\nb: 1 2 0\nB: 1 2 0\n",
    )
    .unwrap();
    let q = path.to_str().unwrap();

    let out = dyck(&["approximate", "Aa", "--quotient", q, "--minimal"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("witness: aaAAaaAA\n"));
    assert!(text.contains("result: pass\n"));
    assert!(text.contains("minimal: aA\n"));

    let out = dyck(&["approximate", "aab", "--quotient", q]);
    assert_eq!(code(&out), 1);
}

#[test]
fn separate_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.txt");
    let file = path.to_str().unwrap();

    let out = dyck(&["separate", "aab", "--output", file]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("result: pass\n"));

    let out = dyck(&["verify", file]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("one_sided_checked: 275\n"));

    let tampered = fs::read_to_string(&path).unwrap().replace(
        "image_of_word_moves_point_to: 3",
        "image_of_word_moves_point_to: 2",
    );
    fs::write(&path, tampered).unwrap();
    assert_eq!(code(&dyck(&["verify", file])), 1);
}

#[test]
fn separate_single_letter_and_member() {
    let out = dyck(&["separate", "a"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("image_of_word_moves_point_to: 1\n"));

    assert_eq!(code(&dyck(&["separate", "Aa"])), 1);
}

#[test]
fn count_prints_tables() {
    let out = dyck(&["count", "--csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "kind,pairs,length,count\n\
         one_sided,2,2,2\none_sided,2,4,8\none_sided,2,6,40\n\
         two_sided,2,2,4\ntwo_sided,2,4,28\ntwo_sided,2,6,232\n"
    );
}

#[test]
fn quotient_generate_is_seeded_and_inspectable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.txt");
    let file = path.to_str().unwrap();

    let first = dyck(&[
        "quotient", "generate", "--degree", "5", "--seed", "9", "--output", file,
    ]);
    let second = dyck(&["quotient", "generate", "--degree", "5", "--seed", "9"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(fs::read(&path).unwrap(), first.stdout);
    assert!(stdout(&first).starts_with("degree 5\npairs 2\n"));

    let out = dyck(&["quotient", "inspect", file]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("pair 1 (bB): exponent "));
}

#[test]
fn selftest_small_bound_passes() {
    let out = dyck(&["selftest", "--max-length", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("selftest: pass\n"));

    let out = dyck(&["--pairs", "1", "selftest", "--max-length", "4"]);
    assert_eq!(code(&out), 0);
}
