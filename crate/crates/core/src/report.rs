//! Check records shared by every verification routine.

use std::fmt;

use serde::Serialize;

use crate::symexpr::{Expr, ZeroTester, ZeroVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Zero certified only by the random-point tier.
    NumericPass,
    /// Differs from a printed value; never fails a run.
    Discrepancy,
}

impl Verdict {
    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NumericPass => "numeric-pass",
            Verdict::Discrepancy => "discrepancy",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub verdict: Verdict,
    pub detail: Vec<String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, verdict: Verdict, detail: Vec<String>) -> Self {
        CheckRecord { name: name.into(), verdict, detail }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        CheckRecord::new(name, Verdict::Pass, vec![])
    }

    pub fn fail(name: impl Into<String>, detail: Vec<String>) -> Self {
        CheckRecord::new(name, Verdict::Fail, detail)
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: Vec<String>) -> Self {
        CheckRecord::new(name, if ok { Verdict::Pass } else { Verdict::Fail }, if ok { vec![] } else { detail })
    }

    /// Record for "every expression vanishes". Labels are attached to the
    /// nonzero entries in the detail.
    pub fn all_zero<'a>(
        name: impl Into<String>,
        items: impl IntoIterator<Item = (String, &'a Expr)>,
        tester: &mut ZeroTester,
    ) -> Self {
        let mut verdict = Verdict::Pass;
        let mut detail = Vec::new();
        for (label, e) in items {
            match tester.test(e) {
                ZeroVerdict::ExactZero => {}
                ZeroVerdict::NumericZero => {
                    if verdict == Verdict::Pass {
                        verdict = Verdict::NumericPass;
                    }
                }
                v => {
                    verdict = Verdict::Fail;
                    detail.push(format!("{label} = {e} ({v})"));
                }
            }
        }
        CheckRecord::new(name, verdict, detail)
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.verdict, self.name)?;
        for d in &self.detail {
            write!(f, "\n    {d}")?;
        }
        Ok(())
    }
}

/// True when no record failed.
pub fn all_pass(records: &[CheckRecord]) -> bool {
    !records.iter().any(|r| r.verdict.is_fail())
}
