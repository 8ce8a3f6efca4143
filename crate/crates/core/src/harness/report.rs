use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::json::{int_vec, JsonInt};
use crate::Int;

/// One checked instance: its class, the integers it was generated from, a
/// short description of what was computed, and whether it passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub class: String,
    #[serde(with = "int_vec")]
    pub input: Vec<Int>,
    pub verdict: String,
    pub ok: bool,
}

impl Case {
    pub fn new(class: &str, input: Vec<Int>, verdict: impl Into<String>, ok: bool) -> Self {
        Case {
            class: class.to_string(),
            input,
            verdict: verdict.into(),
            ok,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let input: Vec<String> = self.input.iter().map(Int::to_string).collect();
        let mark = if self.ok { "ok" } else { "FAIL" };
        write!(f, "{mark} {} [{}]: {}", self.class, input.join(", "), self.verdict)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub kind: String,
    pub parameters: BTreeMap<String, Vec<JsonInt>>,
    pub cases: Vec<Case>,
    pub counterexamples: Vec<Case>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub class: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
}

impl ScanReport {
    pub(crate) fn new(
        kind: &str,
        parameters: BTreeMap<String, Vec<JsonInt>>,
        cases: Vec<Case>,
        elapsed: Duration,
    ) -> Self {
        let counterexamples = cases.iter().filter(|c| !c.ok).cloned().collect();
        ScanReport {
            kind: kind.to_string(),
            parameters,
            cases,
            counterexamples,
            elapsed,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn parameter(&self, name: &str) -> Option<Vec<Int>> {
        self.parameters
            .get(name)
            .map(|v| v.iter().map(|x| x.0.clone()).collect())
    }

    /// Concatenates reports of one run under a combined kind.
    pub fn merge(kind: &str, reports: Vec<ScanReport>) -> ScanReport {
        let mut parameters = BTreeMap::new();
        let mut cases = vec![];
        let mut elapsed = Duration::ZERO;
        for r in reports {
            for (k, v) in r.parameters {
                parameters.insert(format!("{}.{k}", r.kind), v);
            }
            cases.extend(r.cases);
            elapsed += r.elapsed;
        }
        ScanReport::new(kind, parameters, cases, elapsed)
    }

    /// One row per case class, in order of first appearance.
    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut rows: Vec<SummaryRow> = vec![];
        for c in &self.cases {
            let row = match rows.iter_mut().position(|r| r.class == c.class) {
                Some(i) => &mut rows[i],
                None => {
                    rows.push(SummaryRow {
                        class: c.class.clone(),
                        cases: 0,
                        passed: 0,
                        failed: 0,
                    });
                    rows.last_mut().expect("just pushed")
                }
            };
            row.cases += 1;
            if c.ok {
                row.passed += 1;
            } else {
                row.failed += 1;
            }
        }
        rows
    }

    /// Recomputes every case from its class and input and checks that the
    /// stored verdicts and counterexample list are reproduced.
    pub fn revalidate(&self) -> bool {
        let cones = self.parameter("cones");
        let recomputed = super::scans::evaluate_all(&self.cases, cones.as_deref());
        recomputed == self.cases
            && self.counterexamples == self.cases.iter().filter(|c| !c.ok).cloned().collect::<Vec<_>>()
    }

    /// Plain-text table with a header line and one row per class.
    pub fn summary_table(&self) -> String {
        let rows = self.summary();
        let width = rows.iter().map(|r| r.class.len()).max().unwrap_or(5).max(5);
        let mut out = format!(
            "{}: {} cases, {} counterexamples ({:.2?})\n",
            self.kind,
            self.cases.len(),
            self.counterexamples.len(),
            self.elapsed
        );
        out += &format!("  {:<width$}  {:>7}  {:>7}  {:>7}\n", "class", "cases", "passed", "failed");
        for r in rows {
            out += &format!(
                "  {:<width$}  {:>7}  {:>7}  {:>7}\n",
                r.class, r.cases, r.passed, r.failed
            );
        }
        out
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summary_table())?;
        for c in &self.counterexamples {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}
