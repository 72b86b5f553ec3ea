//! End-to-end tests for the `infere` binary: output formats, exit codes,
//! and determinism of file-producing commands.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_infere"))
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn parse_prints_all_three_forms() {
    let output = bin()
        .args(["parse", "--form", "functional", "and(startwith(<low>),endwith(<vow>))"])
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "plain: (([a-z])(.*))&((.*)([AEIOUaeiou]))\n\
         functional: and(startwith(<low>),endwith(<vow>))\n\
         chain: step1=<low> step2=startwith(step1) step3=<vow> step4=endwith(step3) step5=and(step2,step4)\n"
    );
}

#[test]
fn parse_chain_form() {
    let output = bin().args(["parse", "--form", "chain", "step1=<num>"]).output().unwrap();
    assert!(output.status.success());
    assert!(stdout(&output).starts_with("plain: [0-9]\n"));
}

#[test]
fn malformed_input_exits_2() {
    let output = bin().args(["parse", "((("]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(!String::from_utf8(output.stderr).unwrap().is_empty());
}

#[test]
fn eq_exit_codes_follow_verdict() {
    let gold = "((.*)([0-9]))|((<m0>)(.*))";
    let equivalent = "((<m0>)(.*))|((.*)([0-9]))";
    let wrong = "((<m0>)|((.*)([0-9])))(.*)";

    let output = bin().args(["eq", gold, equivalent]).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "true\n");

    let output = bin().args(["eq", gold, wrong]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert_eq!(stdout(&output), "false\n");

    let output = bin().args(["eq", gold, "((("]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn eq_dot_dumps_both_automata() {
    let output = bin()
        .args(["eq", "--dot", "[0-9]", "[0-9]"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("true\n"));
    assert_eq!(text.matches("digraph dfa {").count(), 2);
    assert!(text.contains("[0-9]"));
}

#[test]
fn decompose_and_revert_are_inverse_through_the_cli() {
    // sugar operators survive only in functional form; plain text parses
    // to the desugared tree
    let output = bin()
        .args(["decompose", "--form", "functional", "and(repeat_least(<let>,3),contain(<num>))"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let chain = stdout(&output);
    assert_eq!(
        chain.trim(),
        "step1=<let> step2=repeat_least(step1,3) step3=<num> step4=contain(step3) step5=and(step2,step4)"
    );
    let output = bin().args(["revert", chain.trim()]).output().unwrap();
    assert!(output.status.success());
    assert_eq!(stdout(&output).trim(), "(([A-Za-z]){3,})&((.*)(([0-9])(.*)))");

    let plain = "(([A-Za-z]){3,})&((.*)(([0-9])(.*)))";
    let output = bin().args(["decompose", plain]).output().unwrap();
    let desugared_chain = stdout(&output);
    let output = bin().args(["revert", desugared_chain.trim()]).output().unwrap();
    assert_eq!(stdout(&output).trim(), plain);
}

#[test]
fn vote_reports_winner_and_tally() {
    let dir = tmp_dir("vote");
    let path = dir.join("candidates.jsonl");
    std::fs::write(
        &path,
        concat!(
            "{\"id\":0,\"candidates\":[",
            "{\"source\":\"plain\",\"text\":\"((<m0>)(.*))|((.*)([0-9]))\"},",
            "{\"source\":\"plain\",\"text\":\"((.*)([0-9]))|((<m0>)(.*))\"},",
            "{\"source\":\"plain\",\"text\":\"((<m0>)|((.*)([0-9])))(.*)\"}]}\n",
            "{\"id\":1,\"candidates\":[{\"source\":\"plain\",\"text\":\"((a)(\"}]}\n"
        ),
    )
    .unwrap();

    let output = bin()
        .args(["vote", "--candidates", path.to_str().unwrap(), "--id", "0"])
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "winner: ((<m0>)(.*))|((.*)([0-9]))\n\
         votes: 2\n\
         classes:\n  \
         2  ((<m0>)(.*))|((.*)([0-9]))\n  \
         1  ((<m0>)|((.*)([0-9])))(.*)\n\
         invalid: 0\n"
    );

    // a record whose candidates are all invalid yields exit 1
    let output = bin()
        .args(["vote", "--candidates", path.to_str().unwrap(), "--id", "1"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}

fn write_four_record_fixture(dir: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let queries = dir.join("queries.txt");
    let regexes = dir.join("regexes.txt");
    let candidates = dir.join("candidates.jsonl");
    std::fs::write(&queries, "q0\nq1\nq2\nq3\n").unwrap();
    std::fs::write(
        &regexes,
        "([a-z])(<m0>)\n([a-z])|([0-9])\n[0-9]\n([a-z])(.*)\n",
    )
    .unwrap();
    let line = |id: usize, texts: &[&str]| -> String {
        let candidates: Vec<String> = texts
            .iter()
            .map(|t| format!("{{\"source\":\"plain\",\"text\":\"{t}\"}}"))
            .collect();
        format!("{{\"id\":{id},\"candidates\":[{}]}}\n", candidates.join(","))
    };
    let mut content = String::new();
    content.push_str(&line(0, &["([a-z])(<m0>)", "([a-z])(<m0>)", "[0-9]"]));
    content.push_str(&line(1, &["([0-9])|([a-z])", "([0-9])|([a-z])", "[0-9]"]));
    content.push_str(&line(2, &["[a-z]", "[a-z]", "[0-9]"]));
    content.push_str(&line(3, &["[0-9]"]));
    std::fs::write(&candidates, content).unwrap();
    (queries, regexes, candidates)
}

#[test]
fn eval_writes_the_expected_report() {
    let dir = tmp_dir("eval4");
    let (queries, regexes, candidates) = write_four_record_fixture(&dir);
    let out = dir.join("report.json");
    let output = bin()
        .args([
            "eval",
            "--queries",
            queries.to_str().unwrap(),
            "--regexes",
            regexes.to_str().unwrap(),
            "--candidates",
            candidates.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "DFA-EQ@1(%)  DFA-EQ@5(%)  EM(%)\n50.0         75.0         25.0\nn=4  invalid_candidates=0\n"
    );
    let report = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        report,
        "{\"n\":4,\"dfa_eq_at\":{\"1\":0.5000,\"5\":0.7500},\"em\":0.2500,\"invalid_candidates\":0}\n"
    );

    // identical invocation produces identical bytes
    let out2 = dir.join("report2.json");
    bin()
        .args([
            "eval",
            "--queries",
            queries.to_str().unwrap(),
            "--regexes",
            regexes.to_str().unwrap(),
            "--candidates",
            candidates.to_str().unwrap(),
            "--out",
            out2.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(report, std::fs::read_to_string(&out2).unwrap());
}

#[test]
fn eval_missing_candidate_file_exits_2() {
    let dir = tmp_dir("eval_missing");
    let (queries, regexes, _) = write_four_record_fixture(&dir);
    let output = bin()
        .args([
            "eval",
            "--queries",
            queries.to_str().unwrap(),
            "--regexes",
            regexes.to_str().unwrap(),
            "--candidates",
            dir.join("nope.jsonl").to_str().unwrap(),
            "--out",
            dir.join("r.json").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn fixtures_are_byte_identical_across_runs() {
    let dir_a = tmp_dir("fx_a");
    let dir_b = tmp_dir("fx_b");
    for dir in [&dir_a, &dir_b] {
        let output = bin()
            .args([
                "fixtures",
                "--seed",
                "7",
                "--count",
                "10",
                "--depth",
                "4",
                "--out-dir",
                dir.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(output.status.success());
    }
    for name in ["queries.txt", "regexes.txt", "candidates.jsonl"] {
        let a = std::fs::read(dir_a.join(name)).unwrap();
        let b = std::fs::read(dir_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
}

#[test]
fn fixtures_depth_is_bounded() {
    let output = bin()
        .args(["fixtures", "--depth", "9", "--out-dir", tmp_dir("fx_bad").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn zero_caps_are_rejected() {
    let dir = tmp_dir("caps");
    let (queries, regexes, candidates) = write_four_record_fixture(&dir);
    let output = bin()
        .args([
            "eval",
            "--queries",
            queries.to_str().unwrap(),
            "--regexes",
            regexes.to_str().unwrap(),
            "--candidates",
            candidates.to_str().unwrap(),
            "--k-cap",
            "0",
            "--out",
            dir.join("r.json").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));

    let output = bin()
        .args(["vote", "--candidates", candidates.to_str().unwrap(), "--id", "0", "--k-cap", "0"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unroll_cap_env_and_flag() {
    // {101} exceeds the default cap
    let big = "([0-9]){101}";
    let output = bin().args(["eq", big, big]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));

    let output = bin()
        .args(["eq", "--unroll-cap", "200", big, big])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));

    let output = bin()
        .env("INFERE_UNROLL_CAP", "200")
        .args(["eq", big, big])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));

    // the flag wins over the environment
    let output = bin()
        .env("INFERE_UNROLL_CAP", "200")
        .args(["eq", "--unroll-cap", "50", big, big])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn dot_prints_a_digraph() {
    let output = bin().args(["dot", "[a-z]"]).output().unwrap();
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("digraph dfa {"));
    assert!(text.ends_with("}\n"));
    assert!(text.contains("doublecircle"));
}
