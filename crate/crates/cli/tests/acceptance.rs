//! Acceptance criteria, one line each. Runs the suites in-process.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use biserial_cli::{run, SuiteReport};

struct Criterion {
    number: usize,
    title: &'static str,
    suite: &'static str,
    budget: Duration,
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, title: "projective radical series", suite: "projectives", budget: Duration::from_secs(5) },
    Criterion { number: 2, title: "End = k census for psl1(3), strings <= 9", suite: "endk-psl1", budget: Duration::from_secs(30) },
    Criterion { number: 3, title: "A and A' modules: stable End k, Ext1 0", suite: "psl1-endos0", budget: Duration::from_secs(30) },
    Criterion { number: 4, title: "3-tubes of S1, S2", suite: "psl1-tube", budget: Duration::from_secs(30) },
    Criterion { number: 5, title: "uniserial length 4: mod-2 deformation ring", suite: "psl1-uniserial", budget: Duration::from_secs(60) },
    Criterion { number: 6, title: "psl1(3) bands have stable End >= 2", suite: "bands-psl1", budget: Duration::from_secs(120) },
    Criterion { number: 7, title: "psl2(3) and a7 classifications", suite: "classify-rest", budget: Duration::from_secs(120) },
    Criterion { number: 8, title: "Witt identities d = 3..12", suite: "witt", budget: Duration::from_secs(10) },
    Criterion { number: 9, title: "combinatorial Hom basis vs solver", suite: "krause", budget: Duration::from_secs(120) },
];

fn suite(name: &str, jobs: usize) -> (i32, Option<SuiteReport>, Duration) {
    let start = Instant::now();
    let jobs = jobs.to_string();
    let out = run(["biserial", "suite", name, "--format", "json", "--jobs", &jobs]);
    let elapsed = start.elapsed();
    (out.code, serde_json::from_str(&out.stdout).ok(), elapsed)
}

fn normalized(r: &SuiteReport) -> String {
    serde_json::to_string_pretty(&r.normalized()).expect("serializable")
}

fn main() -> ExitCode {
    let mut all = true;
    let mut reference = Vec::new();
    for c in CRITERIA {
        let (code, report, elapsed) = suite(c.suite, 0);
        let checks = report.as_ref().map_or(0, |r| r.checks.len());
        let failed: Vec<String> = report.as_ref().map(|r| r.checks.iter().filter(|x| !x.passed()).map(|x| x.id.clone()).collect()).unwrap_or_default();
        let ok = code == 0 && report.as_ref().is_some_and(SuiteReport::passed) && elapsed < c.budget;
        all &= ok;
        println!(
            "criterion {:>2} [{}] {}: suite {} {} checks, {:.2}s (budget {}s){}",
            c.number,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            c.suite,
            checks,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            if failed.is_empty() { String::new() } else { format!(", failed: {}", failed.join(", ")) }
        );
        reference.push((c.suite, report, elapsed));
    }

    // determinism: --jobs 1 and --jobs 8 give identical normalized reports,
    // and neither re-run takes more than twice the first run
    let mut mismatched = Vec::new();
    let mut slow = Vec::new();
    let mut worst = 0.0f64;
    for (name, first, elapsed) in &reference {
        let budget = *elapsed * 2 + Duration::from_millis(500);
        let (_, one, t1) = suite(name, 1);
        let (_, eight, t8) = suite(name, 8);
        let same = match (first, one, eight) {
            (Some(a), Some(b), Some(c)) => normalized(a) == normalized(&b) && normalized(&b) == normalized(&c),
            _ => false,
        };
        if !same {
            mismatched.push(*name);
        }
        if t1 > budget || t8 > budget {
            slow.push(*name);
        }
        worst = worst.max(t1.max(t8).as_secs_f64() / elapsed.as_secs_f64().max(1e-3));
    }
    let ok = mismatched.is_empty() && slow.is_empty();
    all &= ok;
    println!(
        "criterion 10 [{}] determinism across --jobs 1 / --jobs 8: {} suites identical{}{}, worst re-run ratio {:.2}",
        if ok { "PASS" } else { "FAIL" },
        reference.len() - mismatched.len(),
        if mismatched.is_empty() { String::new() } else { format!(", differing: {}", mismatched.join(", ")) },
        if slow.is_empty() { String::new() } else { format!(", over budget: {}", slow.join(", ")) },
        worst
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
