use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use biserial::{par, Result, FORMAT_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub observed: String,
    pub verdict: String,
    pub runtime_ms: u64,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub format_version: String,
    pub suite: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    pub verdict: String,
    pub toolkit_version: String,
    pub presentation_hash: String,
}

impl SuiteReport {
    pub fn new(suite: &str, parameters: BTreeMap<String, String>, mut checks: Vec<CheckRecord>, fingerprints: &[String]) -> SuiteReport {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let pass = checks.iter().all(CheckRecord::passed);
        let hash = format!("{:016x}", biserial::fnv1a(fingerprints.join(",").as_bytes()));
        SuiteReport {
            format_version: FORMAT_VERSION.into(),
            suite: suite.into(),
            parameters,
            checks,
            verdict: if pass { "pass" } else { "fail" }.into(),
            toolkit_version: env!("CARGO_PKG_VERSION").into(),
            presentation_hash: hash,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    /// Same report with every runtime zeroed.
    pub fn normalized(&self) -> SuiteReport {
        let mut r = self.clone();
        r.checks.iter_mut().for_each(|c| c.runtime_ms = 0);
        r
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {}: {}\n", self.suite, self.verdict.to_uppercase());
        for c in &self.checks {
            s.push_str(&format!("  [{}] {} ({} ms)\n      {}\n      expected: {}\n      observed: {}\n", c.verdict.to_uppercase(), c.id, c.runtime_ms, c.description, c.expected, c.observed));
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Suite `{}`: {}\n\n", self.suite, self.verdict);
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        s.push_str(&format!("parameters: {}; toolkit {}; presentations {}\n\n", params.join(", "), self.toolkit_version, self.presentation_hash));
        s.push_str("| id | verdict | expected | observed | ms |\n|---|---|---|---|---|\n");
        for c in &self.checks {
            s.push_str(&format!("| {} | {} | {} | {} | {} |\n", c.id, c.verdict, c.expected.replace('|', "\\|"), c.observed.replace('|', "\\|"), c.runtime_ms));
        }
        s
    }
}

type Runner = Box<dyn Fn() -> Result<(bool, String)> + Send + Sync>;

/// One independent check, run on the worker pool.
pub struct Job {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub run: Runner,
}

impl Job {
    pub fn new(id: impl Into<String>, description: impl Into<String>, expected: impl Into<String>, run: impl Fn() -> Result<(bool, String)> + Send + Sync + 'static) -> Job {
        Job { id: id.into(), description: description.into(), expected: expected.into(), run: Box::new(run) }
    }
}

pub fn execute(jobs: Vec<Job>) -> Vec<CheckRecord> {
    par::map(&jobs, |j| {
        let start = Instant::now();
        let (verdict, observed) = match (j.run)() {
            Ok((true, obs)) => ("pass", obs),
            Ok((false, obs)) => ("fail", obs),
            Err(e) => ("fail", format!("error: {e}")),
        };
        CheckRecord {
            id: j.id.clone(),
            description: j.description.clone(),
            expected: j.expected.clone(),
            observed,
            verdict: verdict.into(),
            runtime_ms: start.elapsed().as_millis() as u64,
        }
    })
}
