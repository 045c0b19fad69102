//! End-to-end runs of the `descoh` binary against golden outputs.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the golden files from the current
//! binary.

use std::path::{Path, PathBuf};
use std::process::Command;

use descoh_core::algebra::{symmetric_group, ElementMap, Permutation};
use descoh_core::descent::{is_left_cocycle, kernel_of_cocycle, DescentCocycle};
use descoh_core::exec::Limits;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn descoh(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_descoh"))
        .args(args)
        .output()
        .expect("the binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("UTF-8 output"),
        stderr: String::from_utf8(out.stderr).expect("UTF-8 output"),
    }
}

fn check_golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

/// Runs a command, checks its exit code, and compares stdout to a golden
/// file.
fn golden(name: &str, args: &[&str], code: i32) -> Run {
    let run = descoh(args);
    assert_eq!(run.code, code, "{args:?}: {}", run.stderr);
    check_golden(name, &run.stdout);
    run
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn validate_reports_structure() {
    golden(
        "validate_s3_table.txt",
        &["validate", &path("s3_table.json")],
        0,
    );
    golden(
        "validate_semilattice.json",
        &["--format", "json", "validate", &path("semilattice.json")],
        0,
    );
    let run = golden(
        "validate_nonassoc.txt",
        &["validate", &path("nonassoc.json")],
        1,
    );
    assert!(run.stdout.contains("(1*1)*1"));
}

#[test]
fn input_failures_exit_with_two() {
    let missing = descoh(&["validate", &path("missing.json")]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("cannot read"));
    let malformed = descoh(&["validate", &path("malformed.json")]);
    assert_eq!(malformed.code, 2);
    assert!(malformed.stderr.contains("cannot parse"));
}

#[test]
fn complements_listing() {
    let s3 = path("s3.json");
    let run = golden(
        "complements_s3_s2.txt",
        &["complements", &s3, "--gens", "(1 2)"],
        0,
    );
    assert!(run.stdout.contains("{(), (1 2 3), (1 3 2)}"));
    golden(
        "complements_s3_s2.json",
        &["--format", "json", "complements", &s3, "--gens", "(1 2)"],
        0,
    );
    let z4 = golden(
        "complements_z4.txt",
        &["complements", &path("z4.json"), "--gens", "2"],
        0,
    );
    assert_eq!(z4.stdout, "no complements\n");
    let whole = descoh(&["--format", "json", "complements", &s3, "--index", "0"]);
    let doc: Value = serde_json::from_str(&whole.stdout).unwrap();
    assert_eq!(
        doc["complements"][0]["elements"].as_array().unwrap().len(),
        6
    );
}

#[test]
fn subgroup_listing() {
    golden("subgroups_s3.txt", &["subgroups", &path("s3.json")], 0);
}

#[test]
fn desc1_classes() {
    let s3 = path("s3.json");
    golden("desc1_s3_s2.txt", &["desc1", &s3, "--gens", "(1 2)"], 0);
    golden(
        "desc1_s3_s2.json",
        &["--format", "json", "desc1", &s3, "--gens", "(1 2)"],
        0,
    );
    golden("desc1_s3_a3.txt", &["desc1", &s3, "--alternating"], 0);
    golden(
        "desc1_s6_a6.txt",
        &["desc1", &path("s6.json"), "--alternating"],
        0,
    );
}

#[test]
fn desc1_json_rebuilds_valid_cocycles() {
    let run = descoh(&[
        "--format",
        "json",
        "desc1",
        &path("s6.json"),
        "--alternating",
    ]);
    assert_eq!(run.code, 0);
    let doc: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(doc["class_count"], 2);
    let s6 = symmetric_group(6, &Limits::default()).unwrap();
    let b_labels: Vec<&str> = doc["subgroup"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let b_elems: Vec<u32> = b_labels
        .iter()
        .map(|t| {
            s6.index_of_permutation(&Permutation::parse_cycles(t, 6).unwrap())
                .unwrap()
        })
        .collect();
    let b = descoh_core::algebra::Subgroup::from_elements(&s6, &b_elems).unwrap();
    let iota = ElementMap::inclusion(&s6.subgroup_as_group(&b)).unwrap();
    for class in doc["classes"].as_array().unwrap() {
        let values: Vec<u32> = class["representative"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap() as u32)
            .collect();
        let q = ElementMap::new(&s6, iota.domain(), values).unwrap();
        assert!(is_left_cocycle(&iota, &q).unwrap());
        let c = DescentCocycle::left(&iota, q).unwrap();
        let kernel = kernel_of_cocycle(&c).unwrap();
        assert_eq!(kernel.order(), 2);
        assert_eq!(class["kernel"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn factorization_counts() {
    let run = golden(
        "fac_s3.json",
        &["--format", "json", "fac", &path("s3.json")],
        0,
    );
    let doc: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(doc["fac_count"], 6);
    assert_eq!(doc["class_count"], 4);
    golden("fac_s3.txt", &["fac", &path("s3.json")], 0);
    for group in ["z4.json", "z5.json"] {
        let doc: Value =
            serde_json::from_str(&descoh(&["--format", "json", "fac", &path(group)]).stdout)
                .unwrap();
        assert_eq!(doc["fac_count"], 0);
    }
}

#[test]
fn cohomology_listing() {
    let inv = golden(
        "h1_inversion.json",
        &["--format", "json", "h1", &path("inversion_z2_z3.json")],
        0,
    );
    let doc: Value = serde_json::from_str(&inv.stdout).unwrap();
    assert_eq!(doc["h1_count"], 1);
    assert_eq!(doc["h0"].as_array().unwrap().len(), 1);
    golden(
        "h1_trivial_z2_z2.txt",
        &["h1", &path("trivial_z2_z2.json")],
        0,
    );
    let doc: Value = serde_json::from_str(
        &descoh(&["--format", "json", "h1", &path("trivial_z2_z2.json")]).stdout,
    )
    .unwrap();
    assert_eq!(doc["h1_count"], 2);
    let doc: Value = serde_json::from_str(
        &descoh(&["--format", "json", "h1", &path("trivial_actor.json")]).stdout,
    )
    .unwrap();
    assert_eq!(doc["h1_count"], 1);
}

#[test]
fn verify_outcomes() {
    golden(
        "verify_empty.txt",
        &["verify", &path("empty_catalog.json")],
        0,
    );
    let faulty = golden(
        "verify_faulty.json",
        &["--format", "json", "verify", &path("faulty_catalog.json")],
        1,
    );
    assert!(faulty.stdout.contains("composition condition fails"));
    let seeded = descoh(&["--seed-catalog", &path("faulty_catalog.json"), "verify"]);
    assert_eq!(seeded.code, 1);
}

#[test]
fn default_catalog_passes() {
    let run = descoh(&["--format", "json", "verify"]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let doc: Value = serde_json::from_str(&run.stdout).unwrap();
    let records = doc["records"].as_array().unwrap();
    assert!(records.len() > 300);
    assert!(records
        .iter()
        .all(|r| r["status"] == "pass" && r.get("elapsed_ms").is_none()));
    let timed = descoh(&["--format", "json", "--timings", "verify"]);
    let doc: Value = serde_json::from_str(&timed.stdout).unwrap();
    assert!(doc["records"][0].get("elapsed_ms").is_some());
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--format",
        "json",
        "desc1",
        &path("s3.json"),
        "--gens",
        "(1 2)",
    ];
    assert_eq!(descoh(&args).stdout, descoh(&args).stdout);
    let sequential = descoh(&[
        "--threads",
        "1",
        "--format",
        "json",
        "desc1",
        &path("s3.json"),
        "--gens",
        "(1 2)",
    ]);
    assert_eq!(sequential.stdout, descoh(&args).stdout);
}

#[test]
fn budget_limits_searches() {
    let run = descoh(&["--budget", "1", "h1", &path("trivial_z2_z2.json")]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("exceeds budget"));
}

#[test]
fn dumped_catalog_round_trips() {
    let run = descoh(&["verify", "--dump-catalog"]);
    assert_eq!(run.code, 0);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("catalog.json");
    std::fs::write(&file, &run.stdout).unwrap();
    let again = descoh(&["verify", "--dump-catalog", file.to_str().unwrap()]);
    assert_eq!(again.stdout, run.stdout);
}
