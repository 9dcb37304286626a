//! End-to-end checks of the binary: exit codes, the stable error prefix,
//! stage independence, and artifact handling.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn medicx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_medicx"))
        .args(args)
        .env_remove("MEDICX_DATA_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn path(p: &Path) -> String {
    p.display().to_string()
}

#[test]
fn unknown_subcommand_exits_2_with_usage() {
    let output = medicx(&["frobnicate"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).to_lowercase().contains("usage"));
}

#[test]
fn ingest_reports_the_cleaning_summary() {
    let input = fixtures_dir().join("mma.jsonl");
    let output = medicx(&["ingest", "--source", "mma", "--in", &path(&input)]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("kept 35"), "{text}");
    assert!(text.contains("dropped 3"), "{text}");
}

#[test]
fn ingest_parse_error_exits_2_with_stable_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.jsonl");
    std::fs::write(&bad, "this is not json\n").unwrap();
    let output = medicx(&["ingest", "--source", "mma", "--in", &path(&bad)]);
    assert_eq!(output.status.code(), Some(2));
    assert!(
        stderr(&output).starts_with("error[parse]:"),
        "{}",
        stderr(&output)
    );
}

#[test]
fn missing_data_dir_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kg.nq");
    let output = medicx(&["build", "--out", &path(&out)]);
    assert_eq!(output.status.code(), Some(2));
    assert!(
        stderr(&output).starts_with("error[usage]:"),
        "{}",
        stderr(&output)
    );
}

#[test]
fn data_dir_env_var_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kg.nq");
    let output = Command::new(env!("CARGO_BIN_EXE_medicx"))
        .args(["build", "--out", &path(&out)])
        .env("MEDICX_DATA_DIR", fixtures_dir())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    assert!(out.exists());
}

#[test]
fn build_output_matches_the_committed_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kg.nq");
    let output = medicx(&[
        "build",
        "--data-dir",
        &path(&fixtures_dir()),
        "--out",
        &path(&out),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    let built = std::fs::read(&out).unwrap();
    let golden = std::fs::read(fixtures_dir().join("expected/kg.golden.nq")).unwrap();
    assert_eq!(built, golden, "export drifted from the golden artifact");
}

#[test]
fn map_writes_a_report_and_exits_0_despite_unmatched_subjects() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let output = medicx(&[
        "map",
        "--data-dir",
        &path(&fixtures_dir()),
        "--report",
        &path(&report),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    assert!(stdout(&output).contains("Direct match to BNF entry"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["report"]["tier_counts"]["Unmatched"], 2);
    assert_eq!(json["report"]["subjects"], 38);
}

#[test]
fn query_prints_tsv_with_parameter_substitution() {
    let dir = tempfile::tempdir().unwrap();
    let kg = dir.path().join("kg.nq");
    medicx(&[
        "build",
        "--data-dir",
        &path(&fixtures_dir()),
        "--out",
        &path(&kg),
    ]);
    let query_file = fixtures_dir().join("queries/cq2.rq");
    let output = medicx(&[
        "query",
        "--file",
        &path(&query_file),
        "--param",
        "ingredientX=http://medicX.org/ingredient/paracetamol",
        "--graph",
        &path(&kg),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    let text = stdout(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("?productName\t?authorisationStatus"));
    assert_eq!(text.lines().count(), 5); // header + four products
    assert!(text.contains("Panadol 500mg Tablets\tAuthorized"));
}

#[test]
fn query_syntax_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.rq");
    std::fs::write(&bad, "SELECT WHERE {}").unwrap();
    let output = medicx(&[
        "query",
        "--file",
        &path(&bad),
        "--data-dir",
        &path(&fixtures_dir()),
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).starts_with("error[parse]:"));
}

#[test]
fn stages_compose_through_artifacts_on_disk() {
    // build -> export (nquads and ntriples) -> stats over the artifact
    let dir = tempfile::tempdir().unwrap();
    let kg = dir.path().join("kg.nq");
    let reexported = dir.path().join("kg2.nq");
    let triples = dir.path().join("kg.nt");
    let stats = dir.path().join("stats.json");

    medicx(&[
        "build",
        "--data-dir",
        &path(&fixtures_dir()),
        "--out",
        &path(&kg),
    ]);
    let output = medicx(&["export", "--in", &path(&kg), "--out", &path(&reexported)]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(
        std::fs::read(&kg).unwrap(),
        std::fs::read(&reexported).unwrap()
    );

    let output = medicx(&[
        "export",
        "--in",
        &path(&kg),
        "--format",
        "ntriples",
        "--out",
        &path(&triples),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let nt = std::fs::read_to_string(&triples).unwrap();
    assert!(nt
        .lines()
        .all(|l| l.matches('<').count() >= 2 && !l.contains("graph/")));

    let output = medicx(&["stats", "--graph", &path(&kg), "--out", &path(&stats)]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("Product"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
    let product = json["entities"]
        .as_array()
        .unwrap()
        .iter()
        .find(|row| row["label"] == "Product")
        .unwrap();
    assert_eq!(product["count"], 35);
}

#[test]
fn lexicon_override_changes_matching_behaviour() {
    // With an empty salt lexicon the salt-stripped monograph keyspace
    // collapses into the plain one, so the ingredient that only matches a
    // salt-suffixed monograph through stripping stays unmatched.
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("salts.txt"), "").unwrap();
    std::fs::write(dir.path().join("spelling.tsv"), "").unwrap();
    let report = dir.path().join("report.json");
    let output = medicx(&[
        "map",
        "--data-dir",
        &path(&fixtures_dir()),
        "--lexicon",
        &path(dir.path()),
        "--report",
        &path(&report),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    // the builtin lexicon yields 25 direct and 2 unmatched on this corpus
    let direct = json["report"]["tier_counts"]["BnfDirect"].as_u64().unwrap();
    let unmatched = json["report"]["tier_counts"]["Unmatched"].as_u64().unwrap();
    assert!(
        direct < 25,
        "lexicon override had no effect (direct {direct})"
    );
    assert!(
        unmatched > 2,
        "lexicon override had no effect (unmatched {unmatched})"
    );
}

#[test]
fn cq_run_writes_the_outcome_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("cq.json");
    let reference = fixtures_dir().join("cq-refs.json");
    let output = medicx(&[
        "cq",
        "run",
        "--reference",
        &path(&reference),
        "--report",
        &path(&report),
        "--data-dir",
        &path(&fixtures_dir()),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("CQ1"));
    assert!(text.contains("Not Met"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["outcomes"].as_array().unwrap().len(), 7);
}
