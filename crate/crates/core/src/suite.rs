//! Batch verification over a manifest of rings.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{predict, profile_factors, summary_table, verify_instance, GenusClass, VerificationReport};
use crate::error::{Error, Result};
use crate::genus::Budget;
use crate::pis::PisInstance;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteCase {
    pub ring: String,
    pub expected: GenusClass,
    #[serde(default)]
    pub anchor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetOverride>,
}

impl SuiteCase {
    pub fn budget_from(&self, base: &Budget) -> Budget {
        let mut b = base.clone();
        if let Some(o) = &self.budget {
            if let Some(t) = o.time_ms {
                b.time_ms = Some(t);
            }
            if let Some(n) = o.nodes {
                b.nodes = n;
            }
        }
        b
    }
}

pub fn parse_manifest(text: &str) -> Result<Vec<SuiteCase>> {
    serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))
}

pub fn load_manifest(path: &Path) -> Result<Vec<SuiteCase>> {
    parse_manifest(&std::fs::read_to_string(path)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub case: SuiteCase,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Expected class equals the classifier's prediction.
    pub consistent: bool,
    pub seconds: f64,
}

impl SuiteOutcome {
    pub fn failed(&self) -> bool {
        !self.consistent || self.error.is_some() || self.report.as_ref().is_some_and(|r| r.is_failure())
    }
}

fn run_case(case: &SuiteCase, base: &Budget) -> SuiteOutcome {
    let start = std::time::Instant::now();
    let result = PisInstance::from_spec(&case.ring).and_then(|inst| {
        let predicted = predict(&profile_factors(&inst.factors)?)?;
        let report = verify_instance(&case.ring, &inst, &case.budget_from(base))?;
        Ok((predicted, report))
    });
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok((predicted, report)) => SuiteOutcome {
            case: case.clone(),
            consistent: predicted == case.expected,
            report: Some(report),
            error: None,
            seconds,
        },
        Err(e) => SuiteOutcome { case: case.clone(), report: None, error: Some(e.to_string()), consistent: false, seconds },
    }
}

/// Runs every case, at most `jobs` at a time. Results keep manifest order.
pub fn run_suite(cases: &[SuiteCase], base: &Budget, jobs: usize) -> Result<Vec<SuiteOutcome>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Manifest(e.to_string()))?;
    Ok(pool.install(|| cases.par_iter().map(|c| run_case(c, base)).collect()))
}

pub fn suite_failed(outcomes: &[SuiteOutcome]) -> bool {
    outcomes.iter().any(SuiteOutcome::failed)
}

/// Summary table plus one line per error or inconsistent expectation.
pub fn suite_summary(outcomes: &[SuiteOutcome]) -> String {
    let reports: Vec<VerificationReport> = outcomes.iter().filter_map(|o| o.report.clone()).collect();
    let mut out = summary_table(&reports);
    for o in outcomes {
        if let Some(e) = &o.error {
            out.push_str(&format!("{}: error: {e}\n", o.case.ring));
        } else if !o.consistent {
            let got = o.report.as_ref().map(|r| r.predicted);
            out.push_str(&format!("{}: expected {} but the classifier predicts {}\n", o.case.ring, o.case.expected, got.map_or("?".into(), |g| g.to_string())));
        }
    }
    out
}
