//! End-to-end checks of the binary: exit codes, output determinism, and
//! the documented flag surface.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tokenbound"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_small_core_sweep_is_clean() {
    let out = run(&["verify", "--orders", "3..6", "--conjectures", "core"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("violations: 0"), "{text}");
    // orders 3..6 enumerate 4 + 11 + 34 + 156 isomorphism classes
    assert!(text.contains("graphs: 205"), "{text}");
}

#[test]
fn verify_registry_reports_expected_failures() {
    let out = run(&["verify", "--registry"]);
    assert!(
        out.status.success(),
        "registry failures are expected, exit 0"
    );
    let text = stdout(&out);
    assert!(text.contains("violations: 2"), "{text}");
    assert!(text.contains("AMinMonotonic_refuted"));
    assert!(text.contains("LCutBound_refuted"));
}

#[test]
fn verify_registry_strict_mode_flags_the_reds() {
    let out = run(&["verify", "--registry", "--mode", "strict"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_code_two_on_injected_violation() {
    let out = bin()
        .args(["verify", "--orders", "3..4", "--conjectures", "LMax"])
        .env("TOKENBOUND_TEST_FORCE_VIOLATION", "LMax")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("synthetic"));
}

#[test]
fn verify_exit_code_one_on_bad_flags() {
    let out = run(&["verify", "--orders", "9..3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_reports_are_byte_identical_across_jobs() {
    let args = |jobs: &str| {
        vec![
            "verify".to_string(),
            "--orders".into(),
            "3..6".into(),
            "--conjectures".into(),
            "all".into(),
            "--samples".into(),
            "40".into(),
            "--seed".into(),
            "11".into(),
            "--format".into(),
            "json".into(),
            "--jobs".into(),
            jobs.to_string(),
        ]
    };
    let a = bin().args(args("1")).output().unwrap();
    let b = bin().args(args("8")).output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn verify_graph6_stream_counts_parse_errors() {
    let dir = std::env::temp_dir().join(format!("tokenbound-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("stream.g6");
    let mut f = std::fs::File::create(&path).unwrap();
    // two valid records and one corrupt line
    writeln!(f, "Bw").unwrap();
    writeln!(f, "B!").unwrap();
    writeln!(f, "A_").unwrap();
    drop(f);
    let out = run(&[
        "verify",
        "--graph6",
        path.to_str().unwrap(),
        "--conjectures",
        "core",
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["graphs"], 2);
    assert_eq!(v["parse_errors"].as_array().unwrap().len(), 1);
    assert!(v["parse_errors"][0].as_str().unwrap().contains("line 2"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_emit_all_csv_has_row_per_check() {
    let out = run(&[
        "verify",
        "--orders",
        "3..3",
        "--conjectures",
        "LMax",
        "--format",
        "csv",
        "--emit-all",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    // 4 graphs of order 3, one k each (floor(3/2) = 1), plus the header
    assert_eq!(text.trim().lines().count(), 5, "{text}");
    assert!(text.starts_with("graph,conjecture,k,lhs,rhs,margin,pass"));
}

#[test]
fn table_defaults_match_reference() {
    let out = run(&["table", "--max-n", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("qmc_cycle"));
    assert!(text.contains("6.24"), "{text}");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("largest deviation"));
}

#[test]
fn spectra_k4_signless() {
    let out = run(&["spectra", "--graph6", "C~", "--kind", "Q", "--k", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("2.000000") && text.contains("6.000000"),
        "{text}"
    );
}

#[test]
fn ratio_cycle5_qmc_true() {
    let out = run(&[
        "ratio",
        "--family",
        "cycle:5",
        "--problem",
        "qmc",
        "--true",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let r = v["true_ratio"].as_f64().unwrap();
    assert!((r - 0.881).abs() < 0.01, "{r}");
}

#[test]
fn separate_star_violation_with_audit() {
    let out = run(&[
        "separate",
        "--family",
        "complete:3",
        "--point",
        r#"{"g":[1.6,1.6,1.6]}"#,
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["audit"], true);
    assert_eq!(v["outcome"]["Violated"]["kind"]["Star"], 0);
}

#[test]
fn ears_cycle_is_single_closed() {
    let out = run(&["ears", "--family", "cycle:5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.trim().lines().count(), 1);
    assert!(text.contains("closed"));
}

#[test]
fn ears_rejects_non_members() {
    let out = run(&["ears", "--family", "cycle:6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("factor-critical"));
}

#[test]
fn bounds_k4_text() {
    let out = run(&["bounds", "--graph6", "C~"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("QMax"));
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn edgelist_input_works() {
    let dir = std::env::temp_dir().join(format!("tokenbound-el-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.txt");
    std::fs::write(&path, "3 2\n0 1 1.5\n1 2 0.5\n").unwrap();
    let out = run(&[
        "ratio",
        "--edgelist",
        path.to_str().unwrap(),
        "--problem",
        "epr",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_accepts_orders_beyond_the_internal_cap_via_graph6() {
    // orders 8..10 arrive as graph6 streams; the internal enumerator stops
    // at 7 but the checks themselves scale fine
    let c8 = tokenbound::graph::generate(&tokenbound::graph::GraphFamily::Cycle { n: 8 }).unwrap();
    let d2 = tokenbound::conjecture::counterexample_registry()
        .pop()
        .unwrap()
        .1;
    let records = format!(
        "{}\n{}\n",
        tokenbound::graph6::write_graph6(&c8).unwrap(),
        tokenbound::graph6::write_graph6(&d2).unwrap()
    );
    let dir = std::env::temp_dir().join(format!("tokenbound-big-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("orders8to10.g6");
    std::fs::write(&path, records).unwrap();
    let out = run(&[
        "verify",
        "--graph6",
        path.to_str().unwrap(),
        "--conjectures",
        "core",
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["graphs"], 2);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn size_cap_env_var_is_honored() {
    let out = bin()
        .args(["spectra", "--family", "complete:10", "--k", "5"])
        .env("TOKENBOUND_SIZE_CAP", "100")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("252") && err.contains("cap"), "{err}");
}
