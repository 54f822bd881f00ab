use serde::Serialize;
use serde_json::Value;
use spacecurve_core::invariants::CheckStatus;

/// One verified statement. Failures carry the offending values in `data`.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u8>,
    pub status: CheckStatus,
    pub summary: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, summary: impl Into<String>, data: Value) -> Self {
        Check {
            name: name.into(),
            criterion: None,
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            summary: summary.into(),
            data,
        }
    }

    pub fn skipped(name: impl Into<String>, summary: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            criterion: None,
            status: CheckStatus::Skipped,
            summary: summary.into(),
            data: Value::Null,
        }
    }

    /// A failure caused by an error inside the computation.
    pub fn error(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Check::new(name, false, format!("error: {err}"), Value::Null)
    }

    pub fn in_criterion(mut self, c: u8) -> Self {
        self.criterion = Some(c);
        self
    }
}

/// Aggregate status of one acceptance criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionSummary {
    pub criterion: u8,
    pub status: CheckStatus,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Names of the failed checks.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub status: CheckStatus,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub criteria: Vec<CriterionSummary>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub results: Value,
    pub checks: Vec<Check>,
    /// Human-readable rendering of `results`.
    #[serde(skip)]
    pub text: Option<String>,
}

fn count(checks: &[&Check]) -> (usize, usize, usize) {
    let by = |s: CheckStatus| checks.iter().filter(|c| c.status == s).count();
    (
        by(CheckStatus::Pass),
        by(CheckStatus::Fail),
        by(CheckStatus::Skipped),
    )
}

impl RunReport {
    pub fn new(
        command: String,
        seed: u64,
        results: Value,
        checks: Vec<Check>,
        text: Option<String>,
    ) -> Self {
        let all: Vec<&Check> = checks.iter().collect();
        let (passed, failed, skipped) = count(&all);
        let mut ids: Vec<u8> = checks.iter().filter_map(|c| c.criterion).collect();
        ids.sort_unstable();
        ids.dedup();
        let criteria = ids
            .into_iter()
            .map(|k| {
                let mine: Vec<&Check> = checks.iter().filter(|c| c.criterion == Some(k)).collect();
                let (p, f, s) = count(&mine);
                CriterionSummary {
                    criterion: k,
                    status: if f > 0 {
                        CheckStatus::Fail
                    } else {
                        CheckStatus::Pass
                    },
                    passed: p,
                    failed: f,
                    skipped: s,
                    failures: mine
                        .iter()
                        .filter(|c| c.status == CheckStatus::Fail)
                        .map(|c| c.name.clone())
                        .collect(),
                }
            })
            .collect();
        RunReport {
            command,
            seed,
            status: if failed > 0 {
                CheckStatus::Fail
            } else {
                CheckStatus::Pass
            },
            passed,
            failed,
            skipped,
            criteria,
            results,
            checks,
            text,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            1
        } else {
            0
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            return s;
        }
        let mut out = String::new();
        if let Some(t) = &self.text {
            out.push_str(t);
            if !t.ends_with('\n') {
                out.push('\n');
            }
        }
        for c in &self.checks {
            out.push_str(&format!(
                "{:<7} {}: {}\n",
                label(c.status),
                c.name,
                c.summary
            ));
        }
        for c in &self.criteria {
            out.push_str(&format!(
                "criterion {}: {} ({} passed, {} failed, {} skipped)\n",
                c.criterion,
                label(c.status),
                c.passed,
                c.failed,
                c.skipped
            ));
        }
        if !self.checks.is_empty() {
            out.push_str(&format!(
                "{}: {} passed, {} failed, {} skipped (seed {})\n",
                label(self.status),
                self.passed,
                self.failed,
                self.skipped,
                self.seed
            ));
        }
        out
    }
}

pub fn label(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Skipped => "SKIP",
    }
}
