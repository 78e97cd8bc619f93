//! Behavior of the `bwlab` binary: exit codes, file handling, and report
//! shape for each subcommand.

use std::path::PathBuf;
use std::process::{Command, Output};

use bwlab_cli::report::{InstanceFile, MatrixFile};

fn bwlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bwlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("bwlab-cli-test-{}-{name}", std::process::id()));
    p
}

fn parse_report(path: &PathBuf) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn rank_instance_file() -> InstanceFile {
    let entry = bwlab_core::known_counterexamples()
        .into_iter()
        .find(|e| e.id == "CE_RANK")
        .unwrap();
    InstanceFile::from_instance(&entry.instance)
}

#[test]
fn repro_passes_and_reports_exact_sides() {
    let out = tmp("repro.json");
    let run = bwlab(&["repro", "--out", out.to_str().unwrap()]);
    assert!(run.status.success(), "repro must exit 0");
    let report = parse_report(&out);
    let bounds = report["bounds"].as_array().unwrap();
    assert_eq!(bounds.len(), 2);
    let false_kron = &bounds[0];
    assert_eq!(false_kron["bound_id"], "FALSE_KRON_B");
    assert_eq!(false_kron["violations"][0]["lhs"], 1.0);
    assert_eq!(false_kron["violations"][0]["rhs"], 0.0);
    let rank_k = &bounds[1];
    assert_eq!(rank_k["bound_id"], "RANK_K");
    assert_eq!(rank_k["violations"][0]["lhs"], 4.5);
    assert_eq!(rank_k["violations"][0]["rhs"], 4.0);

    // A second run differs only in the timestamp fields.
    let out2 = tmp("repro2.json");
    let rerun = bwlab(&["repro", "--out", out2.to_str().unwrap()]);
    assert!(rerun.status.success());
    let normalize = |mut v: serde_json::Value| {
        v["timestamp"] = 0u64.into();
        v["wall_time_ms"] = 0u64.into();
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(normalize(report), normalize(parse_report(&out2)));
    std::fs::remove_file(&out).ok();
    std::fs::remove_file(&out2).ok();
}

#[test]
fn verify_zero_trials_gives_empty_success() {
    let out = tmp("verify0.json");
    let run = bwlab(&[
        "verify",
        "--shapes",
        "2x2",
        "--trials",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let report = parse_report(&out);
    assert!(report["bounds"].as_array().unwrap().is_empty());
    assert_eq!(report["discovery"], false);
    std::fs::remove_file(&out).ok();
}

#[test]
fn verify_vector_shape_covers_the_sharpened_bound() {
    let out = tmp("verify_vec.json");
    let run = bwlab(&[
        "verify",
        "--shapes",
        "1x3",
        "--trials",
        "100",
        "--seed",
        "11",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let report = parse_report(&out);
    let gbw_vec = report["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["bound_id"] == "GBW_VEC")
        .expect("GBW_VEC applies on 1x3");
    assert_eq!(gbw_vec["instances_evaluated"], 100);
    assert_eq!(gbw_vec["holds_count"], 100);
    std::fs::remove_file(&out).ok();
}

#[test]
fn verify_rejects_malformed_shape() {
    let run = bwlab(&["verify", "--shapes", "2x", "--trials", "1"]);
    assert_eq!(run.status.code(), Some(2));
    let run = bwlab(&["verify", "--shapes", "0x2", "--trials", "1"]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn search_rejects_inapplicable_bound_shape() {
    let run = bwlab(&["search", "--bound", "GBW_VEC", "--shapes", "2x2"]);
    assert_eq!(run.status.code(), Some(2));
    let run = bwlab(&["search", "--bound", "NOPE", "--shapes", "2x2"]);
    assert_eq!(run.status.code(), Some(2));
    let run = bwlab(&["search", "--bound", "BW", "--shapes", "2x2"]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn search_finds_violations_of_known_false_bounds() {
    let out = tmp("search_false.json");
    let run = bwlab(&[
        "search",
        "--bound",
        "FALSE_KRON_B",
        "--shapes",
        "2x2",
        "--trials",
        "200",
        "--steps",
        "200",
        "--seed",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    // Known-false bound: the violation is expected, not an error.
    assert!(run.status.success());
    let report = parse_report(&out);
    let search = &report["searches"][0];
    assert_eq!(search["terminated"], "violation_found");
    assert!(search["best_ratio"].as_f64().unwrap() > 1.0 + 1e-8);
    assert_eq!(report["discovery"], false);
    std::fs::remove_file(&out).ok();
}

#[test]
fn eval_reports_the_rank_counterexample() {
    let file = tmp("rank_instance.json");
    std::fs::write(&file, serde_json::to_string(&rank_instance_file()).unwrap()).unwrap();
    let out = tmp("eval_rank.json");
    let run = bwlab(&[
        "eval",
        file.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    // RANK_K is known-false, so its violation does not fail the run.
    assert!(run.status.success());
    let report = parse_report(&out);
    let rank_row = report["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["bound_id"] == "RANK_K")
        .unwrap();
    assert_eq!(rank_row["holds_count"], 0);
    assert_eq!(rank_row["violations"][0]["lhs"], 4.5);
    assert_eq!(rank_row["violations"][0]["rhs"], 4.0);
    let certs = &report["certificates"];
    assert_eq!(certs["psd_valid"], true);
    assert_eq!(certs["pairing_ok"], true);
    assert_eq!(certs["chain_check_ok"], true);
    std::fs::remove_file(&file).ok();
    std::fs::remove_file(&out).ok();
}

#[test]
fn eval_rejects_bad_files() {
    let missing = bwlab(&["eval", "/nonexistent/instance.json"]);
    assert_eq!(missing.status.code(), Some(2));

    let garbage = tmp("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    let run = bwlab(&["eval", garbage.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    std::fs::remove_file(&garbage).ok();

    // Shape mismatch between blocks: B must be n x m.
    let mut file = rank_instance_file();
    file.b = MatrixFile {
        rows: 2,
        cols: 2,
        entries: vec![[1.0, 0.0]; 4],
    };
    let bad = tmp("bad_shape.json");
    std::fs::write(&bad, serde_json::to_string(&file).unwrap()).unwrap();
    let run = bwlab(&["eval", bad.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&run.stderr);
    assert!(stderr.contains("incompatible"), "stderr: {stderr}");
    std::fs::remove_file(&bad).ok();
}

#[test]
fn eval_with_zero_b_skips_rank_k() {
    let entry = bwlab_core::known_counterexamples()
        .into_iter()
        .find(|e| e.id == "CE_RANK")
        .unwrap();
    let zero_b = entry
        .instance
        .replace(bwlab_core::Operand::B, bwlab_core::CMat::zeros(3, 3))
        .unwrap();
    let file = tmp("zero_b.json");
    std::fs::write(
        &file,
        serde_json::to_string(&InstanceFile::from_instance(&zero_b)).unwrap(),
    )
    .unwrap();
    let out = tmp("eval_zero_b.json");
    let run = bwlab(&["eval", file.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(run.status.success());
    let report = parse_report(&out);
    let ids: Vec<&str> = report["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["bound_id"].as_str().unwrap())
        .collect();
    assert!(!ids.contains(&"RANK_K"), "RANK_K must be skipped for B = 0");
    for b in report["bounds"].as_array().unwrap() {
        assert_eq!(b["holds_count"], b["instances_evaluated"]);
        if let Some(r) = b["max_ratio"].as_f64() {
            assert_eq!(r, 0.0);
        }
    }
    std::fs::remove_file(&file).ok();
    std::fs::remove_file(&out).ok();
}

#[test]
fn eval_with_equal_a_and_c_reports_vacuous_pairing() {
    let a = bwlab_core::CMat::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
    let t = bwlab_core::TripleInstance::new(
        a.clone(),
        bwlab_core::CMat::identity(2),
        a,
        "test",
    )
    .unwrap();
    let file = tmp("a_equals_c.json");
    std::fs::write(
        &file,
        serde_json::to_string(&InstanceFile::from_instance(&t)).unwrap(),
    )
    .unwrap();
    let out = tmp("eval_a_equals_c.json");
    let run = bwlab(&["eval", file.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(run.status.success());
    let report = parse_report(&out);
    // K = 0: the pairing claim holds vacuously and says so.
    assert_eq!(report["certificates"]["pairing_vacuous"], true);
    assert_eq!(report["certificates"]["pairing_ok"], true);
    for b in report["bounds"].as_array().unwrap() {
        assert_eq!(b["holds_count"], b["instances_evaluated"]);
    }
    std::fs::remove_file(&file).ok();
    std::fs::remove_file(&out).ok();
}

#[test]
fn tabular_format_renders_rows() {
    let out = tmp("tabular.tsv");
    let run = bwlab(&[
        "verify",
        "--shapes",
        "2x2",
        "--trials",
        "20",
        "--format",
        "tabular",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("section\tbound"));
    let body: Vec<&str> = lines.collect();
    assert!(body.iter().any(|l| l.starts_with("bound\tGBW\t")));
    std::fs::remove_file(&out).ok();
}

#[test]
fn stdout_is_used_when_out_is_omitted() {
    let run = bwlab(&["repro"]);
    assert!(run.status.success());
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.contains("\"bound_id\": \"RANK_K\""));
}
