//! End-to-end behavior of the `pfg` binary: exit codes, text and JSON
//! output, and files written with `--out`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pfg_core::io::{load_pfs, parse_pfs};
use pfg_core::pfs::cartesian_product;
use pfg_core::pfsg::{is_pfnsg_conjugation, is_pfsg, left_coset};
use serde_json::Value;

fn corpus(relative: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(relative)
}

fn pfg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfg"))
        .args(args)
        .env_remove("PFG_MAX_ORDER")
        .output()
        .expect("the binary runs")
}

fn pfs_arg(name: &str) -> String {
    corpus(&format!("pfs/{name}.json")).display().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn check_reports_holds_and_fails() {
    let holds = pfg(&["check", "--pfs", &pfs_arg("z4_two_level")]);
    assert_eq!(code(&holds), 0);
    assert_eq!(stdout(&holds).trim(), "holds: a PFSG of Z4");

    let fails = pfg(&["check", "--pfs", &pfs_arg("z2_failing")]);
    assert_eq!(code(&fails), 1);
    assert!(stdout(&fails).contains("τ-closure fails at a=1, b=1"));

    let not_normal = pfg(&[
        "check",
        "--pfs",
        &pfs_arg("s3_two_level"),
        "--mode",
        "pfnsg",
    ]);
    assert_eq!(code(&not_normal), 1);
    assert!(stdout(&not_normal).contains("normality fails"));
}

#[test]
fn check_json_is_one_object() {
    let out = pfg(&[
        "--json",
        "check",
        "--pfs",
        &pfs_arg("q8_centre"),
        "--mode",
        "pfnsg",
    ]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["carrier"], "Q8");
    assert_eq!(doc["holds"], true);
    assert_eq!(doc["violation"], Value::Null);

    let out = pfg(&[
        "--json",
        "check",
        "--pfs",
        &pfs_arg("z2_failing"),
        "--mode",
        "pfnsg",
    ]);
    assert_eq!(code(&out), 1);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["holds"], false);
    assert!(doc["reason"].as_str().unwrap().contains("not even a PFSG"));
}

#[test]
fn check_against_a_named_group() {
    let ok = pfg(&["check", "--pfs", &pfs_arg("z4_two_level"), "--group", "Z4"]);
    assert_eq!(code(&ok), 0);
    let group_file = corpus("groups/z4.json").display().to_string();
    let ok = pfg(&[
        "check",
        "--pfs",
        &pfs_arg("z4_two_level"),
        "--group",
        &group_file,
    ]);
    assert_eq!(code(&ok), 0);
    let wrong = pfg(&["check", "--pfs", &pfs_arg("z4_two_level"), "--group", "V4"]);
    assert_eq!(code(&wrong), 2);
}

#[test]
fn invalid_inputs_exit_two_with_a_diagnostic() {
    let cases = [
        ("bad_rational", "element 1"),
        ("bad_sum", "13/12"),
        ("short", "1 triples given for a carrier of order 3"),
        ("not_a_group", "malformed JSON"),
    ];
    for (file, needle) in cases {
        let path = corpus(&format!("invalid/{file}.json"))
            .display()
            .to_string();
        let out = pfg(&["check", "--pfs", &path]);
        assert_eq!(code(&out), 2, "{file}");
        assert!(stderr(&out).contains(needle), "{file}: {}", stderr(&out));
    }
    let missing = pfg(&["check", "--pfs", "no/such/file.json"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn cut_prints_members() {
    let z4 = pfs_arg("z4_two_level");
    let out = pfg(&[
        "cut", "--pfs", &z4, "--r", "1/2", "--s", "1/4", "--t", "1/8",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "0 2");

    let out = pfg(&[
        "--json", "cut", "--pfs", &z4, "--r", "0", "--s", "0", "--t", "1",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["members"], serde_json::json!([0, 1, 2, 3]));

    let over = pfg(&[
        "cut", "--pfs", &z4, "--r", "1/2", "--s", "1/2", "--t", "1/8",
    ]);
    assert_eq!(code(&over), 2);
    assert!(stderr(&over).contains("exceeds 1"));
}

#[test]
fn product_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("product.json");
    let out = pfg(&[
        "product",
        "--pfs",
        &pfs_arg("product_left"),
        "--pfs",
        &pfs_arg("product_right"),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let written = load_pfs(&out_path).unwrap();
    let expected = cartesian_product(
        &load_pfs(&corpus("pfs/product_left.json")).unwrap(),
        &load_pfs(&corpus("pfs/product_right.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(written.triples(), expected.triples());
    assert_eq!(written.at(0).to_string(), "(1/3, 1/4, 1/5)");

    let printed = pfg(&[
        "product",
        "--pfs",
        &pfs_arg("product_left"),
        "--pfs",
        &pfs_arg("product_right"),
    ]);
    assert_eq!(
        stdout(&printed).trim_end(),
        std::fs::read_to_string(&out_path).unwrap().trim_end()
    );

    let one = pfg(&["product", "--pfs", &pfs_arg("product_left")]);
    assert_eq!(code(&one), 2);
}

#[test]
fn coset_matches_the_library() {
    let out = pfg(&["coset", "--pfs", &pfs_arg("s3_two_level"), "--element", "1"]);
    assert_eq!(code(&out), 0);
    let printed = parse_pfs(&stdout(&out)).unwrap();
    let expected = left_coset(&load_pfs(&corpus("pfs/s3_two_level.json")).unwrap(), 1).unwrap();
    assert_eq!(printed.triples(), expected.triples());

    let bad = pfg(&["coset", "--pfs", &pfs_arg("s3_two_level"), "--element", "6"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn image_and_preimage() {
    let out = pfg(&[
        "image",
        "--pfs",
        &pfs_arg("z4_mixed_fiber"),
        "--map",
        "mod",
        "--target",
        "Z2",
    ]);
    assert_eq!(code(&out), 0);
    let pushed = parse_pfs(&stdout(&out)).unwrap();
    assert_eq!(pushed.at(0).to_string(), "(1/4, 1/4, 1/8)");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z2.json");
    std::fs::write(&path, stdout(&out)).unwrap();
    let out = pfg(&[
        "image",
        "--pfs",
        path.to_str().unwrap(),
        "--map",
        "mod",
        "--source",
        "Z4",
        "--preimage",
    ]);
    assert_eq!(code(&out), 0);
    let pulled = parse_pfs(&stdout(&out)).unwrap();
    assert_eq!(pulled.carrier().order(), 4);
    assert_eq!(pulled.at(2), pushed.at(0));

    let overflowing = pfg(&[
        "image",
        "--pfs",
        &pfs_arg("masking_p"),
        "--map",
        "const:0",
        "--target",
        "Z1",
    ]);
    assert_eq!(code(&overflowing), 0);
    let not_cyclic = pfg(&[
        "image",
        "--pfs",
        &pfs_arg("s3_two_level"),
        "--map",
        "mod",
        "--target",
        "Z2",
    ]);
    assert_eq!(code(&not_cyclic), 2);
}

#[test]
fn sample_is_deterministic_and_valid() {
    let first = pfg(&["sample", "--group", "D4", "--kind", "pfnsg", "--seed", "5"]);
    let second = pfg(&["sample", "--group", "D4", "--kind", "pfnsg", "--seed", "5"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let set = parse_pfs(&stdout(&first)).unwrap();
    assert!(is_pfnsg_conjugation(&set).unwrap().holds());

    let sampled = pfg(&[
        "sample",
        "--group",
        "S3",
        "--seed",
        "1",
        "--chain-length",
        "2",
    ]);
    assert!(is_pfsg(&parse_pfs(&stdout(&sampled)).unwrap()).holds());

    let too_long = pfg(&["sample", "--group", "Z6", "--chain-length", "9"]);
    assert_eq!(code(&too_long), 2);
    assert!(stderr(&too_long).contains("longest has 3"));
}

#[test]
fn group_writes_the_shipped_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.json");
    let shipped = corpus("groups/q8.json");
    let out = pfg(&[
        "group",
        "--group",
        shipped.to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Q8 of order 8"));
    assert!(stdout(&out).contains("1 of order 1, 1 of order 2, 6 of order 4"));
    assert_eq!(
        std::fs::read(&path).unwrap(),
        std::fs::read(&shipped).unwrap()
    );
    let unknown = pfg(&["group", "--group", "Q8"]);
    assert_eq!(code(&unknown), 2);
}

#[test]
fn max_order_limits_enumeration() {
    let out = Command::new(env!("CARGO_BIN_EXE_pfg"))
        .args(["sample", "--group", "S4"])
        .env("PFG_MAX_ORDER", "12")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let out = pfg(&["--max-order", "24", "sample", "--group", "S4"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_writes_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reports.jsonl");
    let args = [
        "--json",
        "verify",
        "--theorem",
        "product_cut",
        "--theorem",
        "coset_translation",
        "--trials",
        "20",
        "--seed",
        "3",
        "--out",
        path.to_str().unwrap(),
    ];
    let out = pfg(&args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), std::fs::read_to_string(&path).unwrap());
    let lines: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let tags: Vec<&str> = lines
        .iter()
        .map(|l| l["theorem_id"].as_str().unwrap())
        .collect();
    assert_eq!(tags, ["coset_translation", "product_cut"]);
    assert!(lines.iter().all(|l| l["passed"] == true));
    assert_eq!(pfg(&args).stdout, out.stdout);
}

#[test]
fn verify_exit_code_follows_the_reports() {
    let refuted = pfg(&[
        "verify",
        "--theorem",
        "identity_dominance",
        "--trials",
        "10",
    ]);
    assert_eq!(code(&refuted), 1);
    assert!(stdout(&refuted).contains("FAIL"));
    assert!(stdout(&refuted).contains("counterexample"));

    let strict = pfg(&[
        "verify",
        "--theorem",
        "cut_subgroup_iff",
        "--trials",
        "10",
        "--strict",
    ]);
    assert_eq!(code(&strict), 1);

    let unknown = pfg(&["verify", "--theorem", "nope"]);
    assert_eq!(code(&unknown), 2);
    assert!(stderr(&unknown).contains("valid tags: pfsg_forms"));

    let unknown_group = pfg(&["verify", "--groups", "Z2,W9", "--trials", "1"]);
    assert_eq!(code(&unknown_group), 2);
}
