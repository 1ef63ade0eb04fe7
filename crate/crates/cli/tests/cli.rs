use biserial_cli::{run, SuiteReport};

#[test]
fn witt_prints_p4() {
    let out = run(["biserial", "witt", "--d", "4"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("p_4(t) = t^3 - 2*t"), "{}", out.stdout);
    assert!(out.stdout.contains("rho identity holds"));
}

#[test]
fn projectives_suite_for_one_family() {
    let out = run(["biserial", "suite", "projectives", "--family", "psl1", "--d", "3", "--format", "json"]);
    assert_eq!(out.code, 0);
    let r: SuiteReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(r.passed());
    assert!(r.checks.windows(2).all(|w| w[0].id < w[1].id));
    assert_eq!(r.parameters.get("family").map(String::as_str), Some("psl1"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(["biserial", "suite", "nope"]).code, 2);
    assert_eq!(run(["biserial", "witt", "--d", "2"]).code, 2);
    assert_eq!(run(["biserial", "frobnicate"]).code, 2);
    assert_eq!(run(["biserial", "algebra", "--family", "psl9"]).code, 2);
    assert_eq!(run(["biserial", "strings", "--word", "xx yy"]).code, 2);
    let out = run(["biserial", "module"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--word"));
}

#[test]
fn failing_check_exits_one() {
    // S0 is not uniserial of the required shape
    let out = run(["biserial", "udr", "--word", "1_0"]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert!(out.stdout.contains("FAIL"));
}

#[test]
fn hom_and_module_queries() {
    let out = run(["biserial", "hom", "--from", "1_1", "--to", "1_1", "--format", "json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["dim_hom"], 1);
    assert_eq!(v["dim_hom_combinatorial"], 1);
    let out = run(["biserial", "module", "--projective", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 9);
    assert_eq!(v["dim_stable_end"], 0);
    let out = run(["biserial", "module", "--word", "ga- be- et de", "--band", "--field-ext", "2", "--lambda", "3", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["dimension_vector"], serde_json::json!([2, 1, 1]));
}

#[test]
fn strings_listing_and_hooks() {
    let out = run(["biserial", "strings", "--max-len", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["band_count"], 0);
    let out = run(["biserial", "strings", "--word", "1_0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["valid_string"], true);
    assert!(v["hooks"]["right"].is_string() || v["hooks"]["left"].is_string());
}

#[test]
fn classify_writes_graph_and_report() {
    let dir = std::env::temp_dir().join(format!("biserial-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("graph.json");
    let table = dir.join("table.md");
    let out = run([
        "biserial",
        "classify",
        "--family",
        "psl2",
        "--max-len",
        "6",
        "--format",
        "md",
        "--emit-graph",
        graph.to_str().unwrap(),
        "--out",
        table.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let g: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&graph).unwrap()).unwrap();
    assert!(g["components"].as_array().unwrap().len() >= 5);
    assert!(g["components"][0]["graph"]["nodes"].is_array());
    assert!(std::fs::read_to_string(&table).unwrap().contains("| component |"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reports_are_stable_across_runs() {
    let a = run(["biserial", "suite", "psl1-tube", "--format", "json", "--jobs", "1"]);
    let b = run(["biserial", "suite", "psl1-tube", "--format", "json", "--jobs", "3"]);
    let ra: SuiteReport = serde_json::from_str(&a.stdout).unwrap();
    let rb: SuiteReport = serde_json::from_str(&b.stdout).unwrap();
    assert_eq!(ra.normalized(), rb.normalized());
}
