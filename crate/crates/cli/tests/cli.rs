//! End-to-end tests of the `prehom` binary: exit codes, output
//! contracts, report round-trips, and determinism.

use std::path::PathBuf;
use std::process::Command;

use prehom_cli::report::{strip_timestamp, RunDocument};
use prehom_core::SearchReport;

fn prehom(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_prehom"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

/// The JSON document is the suffix of stdout.
fn json_part(stdout: &str) -> serde_json::Value {
    let start = stdout.find("{\n").expect("stdout contains a JSON document");
    serde_json::from_str(&stdout[start..]).expect("document parses")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("prehom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn missing_subcommand_and_bad_keys_are_usage_errors() {
    let (code, _, _) = prehom(&[]);
    assert_eq!(code, 2);
    let (code, _, err) = prehom(&["certify", "--set", "case=NOPE"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown case"));
    let (code, _, err) = prehom(&["search", "--set", "case=CUBIC4", "--set", "targets=1"]);
    assert_eq!(code, 2, "box search without a radius is a usage error");
    assert!(err.contains("radius"));
}

#[test]
fn certify_exit_codes_separate_rational_from_irrational() {
    let (code, out, _) = prehom(&["certify", "--set", "case=CUBIC4"]);
    assert_eq!(code, 1, "the identity is not sufficiently irrational");
    assert!(out.contains("sufficiently irrational: false"));

    let (code, out, _) = prehom(&[
        "certify",
        "--set",
        "case=CUBIC4",
        "--set",
        "d=2",
        "--set",
        "g=1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,1+1*sqrt(2)",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("sufficiently irrational: true"));
    let doc = json_part(&out);
    assert_eq!(doc["certificate"]["certified"], serde_json::json!(true));
}

#[test]
fn certify_float_mode_points_at_reconstruction() {
    let (code, _, err) = prehom(&["certify", "--set", "case=CUBIC4", "--set", "mode=float"]);
    assert_eq!(code, 2);
    assert!(err.contains("rational_reconstruct"));
}

#[test]
fn rational_baseline_is_a_hypothesis_violation() {
    let (code, _, err) = prehom(&[
        "baseline",
        "--set",
        "diag=1,1,-2",
        "--set",
        "targets=0",
        "--set",
        "radius=4",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("irrational"));
    // Same battery behind `certify`.
    let (code, _, _) = prehom(&["certify", "--set", "case=BASELINE", "--set", "diag=1,1,-2"]);
    assert_eq!(code, 3);
    let (code, _, err) = prehom(&[
        "certify",
        "--set",
        "case=BASELINE",
        "--set",
        "d=2",
        "--set",
        "diag=1,1,1*sqrt(2)",
    ]);
    assert_eq!(code, 3, "definite forms violate a hypothesis");
    assert!(err.contains("indefinite"));
}

#[test]
fn lemma13_reports_the_decomposition_and_detects_tampering() {
    let (code, out, _) = prehom(&["lemma13"]);
    assert_eq!(code, 0);
    assert!(out.contains("15 = 3 + 5 + 7"));
    assert!(out.contains("dim sp(4,B) = 10"));
    assert!(out.contains("all checks passed"));

    let (code, out, _) = prehom(&["lemma13", "--tamper"]);
    assert_eq!(code, 1);
    assert!(out.contains("triple relation check failed"));
}

#[test]
fn decompose_standard_form_prints_the_known_split() {
    let (code, out, _) = prehom(&["decompose"]);
    assert_eq!(code, 0);
    assert!(out.contains("lambda = 1"));
    assert!(out.contains("[1, 0, 0, 0, 0, 0]"));
    assert!(out.contains("[0, 0, 0, 0, 0, 1]"));
    assert!(out.contains("sufficiently irrational: false"));
}

#[test]
fn decompose_rejects_non_semistable_input_with_exit_3() {
    let (code, _, err) = prehom(&[
        "decompose",
        "--set",
        "x=1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("not semistable"));
}

#[test]
fn trivector_file_input_round_trips() {
    let path = scratch("w.trivector");
    std::fs::write(&path, "1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1\n").unwrap();
    let (code, out, _) = prehom(&["decompose", "--set", &format!("file={}", path.display())]);
    assert_eq!(code, 0);
    assert!(out.contains("lambda = 1"));
}

#[test]
fn search_reports_parse_and_contain_the_exact_witness() {
    let (code, out, _) = prehom(&[
        "search",
        "--set",
        "case=CUBIC4",
        "--set",
        "targets=-4,0",
        "--set",
        "radius=2",
    ]);
    assert_eq!(code, 0);
    let doc: RunDocument<SearchReport> =
        serde_json::from_str(&out[out.find("{\n").unwrap()..]).unwrap();
    assert_eq!(doc.reports.len(), 2);
    for r in &doc.reports {
        assert_eq!(r.error, 0.0, "Delta takes both values inside radius 2");
        assert_eq!(r.case, "CUBIC4");
    }
    assert_eq!(doc.params["targets"], "-4,0");
}

#[test]
fn out_and_csv_files_are_written_and_overrides_land_in_params() {
    let out_path = scratch("run.json");
    let csv_path = scratch("run.csv");
    let (code, _, _) = prehom(&[
        "search",
        "--set",
        "case=CUBIC4",
        "--set",
        "targets=7",
        "--set",
        "radius=3",
        "--set",
        "seed=11",
        "--set",
        &format!("out={}", out_path.display()),
        "--set",
        &format!("csv={}", csv_path.display()),
    ]);
    assert_eq!(code, 0);
    let doc: RunDocument<SearchReport> =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc.params["seed"], "11");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("case,target,at,error\n"));
    assert!(csv.lines().count() >= 2);
}

#[test]
fn identical_runs_are_byte_identical_modulo_timestamp_under_sharding() {
    let path = scratch("det.json");
    let mut outputs = Vec::new();
    for threads in ["1", "4", "1"] {
        let (code, _, _) = prehom(&[
            "search",
            "--threads",
            threads,
            "--set",
            "case=CUBIC4",
            "--set",
            "targets=-4,7,100",
            "--set",
            "radius=6",
            "--set",
            &format!("out={}", path.display()),
        ]);
        assert_eq!(code, 0);
        outputs.push(strip_timestamp(&std::fs::read_to_string(&path).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1], "thread count must not leak into reports");
    assert_eq!(outputs[0], outputs[2], "reruns must reproduce bytes");
}

#[test]
fn config_file_plus_override_drives_a_run() {
    let cfg = scratch("walk.cfg");
    std::fs::write(
        &cfg,
        "# walk on the discriminant\ncase = CUBIC4\nmethod = walk\nx0 = 1, 0, 1, 0\n\
         targets = -4\nbudget = 50\nseed = 5\n",
    )
    .unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["search", "--config"];
        let cfg_s = cfg.to_str().unwrap().to_string();
        args.push(Box::leak(cfg_s.into_boxed_str()));
        args.extend_from_slice(extra);
        prehom(&args)
    };
    let (code, out, _) = run(&[]);
    assert_eq!(code, 0);
    let doc = json_part(&out);
    assert_eq!(doc["reports"][0]["error"], serde_json::json!(0.0));
    // x0 already hits the target, so one evaluation suffices.
    let (code, out, _) = run(&["--set", "budget=1"]);
    assert_eq!(code, 0);
    let doc = json_part(&out);
    assert_eq!(doc["reports"][0]["evaluations"], serde_json::json!(1));
}

#[test]
fn invariants_prints_all_three_generator_sets() {
    let (code, out, _) = prehom(&["invariants", "--set", "case=CUBIC4"]);
    assert_eq!(code, 0);
    assert!(out.contains("Delta = - 27*x0^2*x3^2"));
    let (code, out, _) = prehom(&["invariants", "--set", "case=SYM4"]);
    assert_eq!(code, 0);
    assert!(out.contains("Q = 12*x0*x4"));
    assert!(out.contains("F = 72*x0*x2*x4"));
    let (code, out, _) = prehom(&["invariants", "--set", "case=ADJ_SL3"]);
    assert_eq!(code, 0);
    assert!(out.contains("Q = "));
    assert!(out.contains("F = "));
}

#[test]
fn list_cases_renders_the_table() {
    let (code, out, _) = prehom(&["--list-cases"]);
    assert_eq!(code, 0);
    assert!(out.contains("(29)"));
    assert!(out.contains("Gr(3,6)"));
    assert!(out.contains("CUBIC4"));
    assert!(out.contains("BASELINE"));
}

#[test]
fn basis_search_runs_from_the_cli() {
    // These slot values come from the row move u3 <- u3 + u0 applied to
    // the identity, so a matching basis is one shear away.
    let (code, out, _) = prehom(&[
        "search",
        "--set",
        "case=TRIVECTOR",
        "--set",
        "y=1,0,0,0,0,0,1,0,0,0",
        "--set",
        "budget=100000",
        "--set",
        "seed=2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("basis search: objective"));
    let doc = json_part(&out);
    let objective = doc["reports"][0]["objective"].as_f64().unwrap();
    assert!(objective <= 1e-9, "planted slots are one move away, got {objective}");
}
