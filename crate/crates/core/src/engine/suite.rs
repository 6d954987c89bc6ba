use rayon::prelude::*;
use serde::Serialize;

use super::{list_identities, run_identity_on, Params, Target, TargetKind};
use crate::error::{Error, Result};
use crate::qhat::{qhat_gaussian_power, qhat_mutator};
use crate::report::{Expectation, IdentityReport, ReportBuilder};
use crate::scalar::{integer, Scalar};
use crate::sequence::AdmissibleSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(Error::InvalidParams(format!("unknown profile {text:?}"))),
        }
    }

    /// Default bound `n` for an identity; smaller when entries are
    /// rational functions of `q`.
    pub fn size(self, id: &str, symbolic: bool) -> usize {
        let (quick_num, quick_sym, full_num, full_sym) = match id {
            "exp-vs-closed" => (8, 6, 16, 10),
            "nilpotent" => (10, 8, 16, 16),
            "eq4" | "eq5" => (10, 8, 16, 12),
            "semigroup" => (8, 6, 12, 12),
            "odd-cancel" => (9, 7, 15, 11),
            "normality" => (24, 12, 24, 24),
            "eq6" => (8, 6, 12, 10),
            "eq9" => (8, 6, 12, 12),
            "eq10" => (6, 5, 6, 6),
            "eq8" => (6, 5, 8, 8),
            "qhat-coincide" => (8, 6, 12, 10),
            "eq11-basic" => (8, 6, 16, 12),
            "integrality" => (16, 10, 32, 16),
            _ => (6, 5, 10, 8),
        };
        match (self, symbolic) {
            (Profile::Quick, false) => quick_num,
            (Profile::Quick, true) => quick_sym,
            (Profile::Full, false) => full_num,
            (Profile::Full, true) => full_sym,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Failures whose expectation was `expected-fail`.
    pub expected_fail: usize,
    pub unhealthy: usize,
    pub healthy: bool,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<IdentityReport>,
    pub summary: Summary,
}

impl SuiteOutcome {
    /// One JSON object per report, then `{"summary":{...}}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&r.to_json_line());
            out.push('\n');
        }
        let summary = serde_json::json!({ "summary": self.summary });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// The built-in sequences every suite run covers.
pub fn builtin_sequences() -> Vec<AdmissibleSequence> {
    vec![
        AdmissibleSequence::classical(),
        AdmissibleSequence::q_symbolic(),
        AdmissibleSequence::q_numeric(integer(2)).expect("q=2 is admissible"),
        AdmissibleSequence::fibonomial(),
    ]
}

pub fn run_suite(profile: Profile) -> SuiteOutcome {
    run_suite_with(profile, &[])
}

/// Runs every registered identity over the built-in targets plus `extra`
/// sequences. Output order is fixed: registry order, then target order.
pub fn run_suite_with(profile: Profile, extra: &[AdmissibleSequence]) -> SuiteOutcome {
    let mut sequences = builtin_sequences();
    sequences.extend(extra.iter().cloned());
    let mut operators: Vec<Target> = sequences.iter().map(|s| qhat_mutator(s).into()).collect();
    operators.push(qhat_gaussian_power(Scalar::q()).into());
    operators.push(qhat_gaussian_power(2.into()).into());

    let mut cases: Vec<(&'static str, Target)> = Vec::new();
    for spec in list_identities() {
        match spec.target {
            TargetKind::Operator => {
                cases.extend(operators.iter().map(|op| (spec.id, op.clone())));
            }
            _ => cases.extend(
                sequences
                    .iter()
                    .filter(|s| spec.applies_to(s.family()))
                    .map(|s| (spec.id, Target::Sequence(s.clone()))),
            ),
        }
    }

    let reports: Vec<IdentityReport> = cases
        .par_iter()
        .map(|(id, target)| run_case(id, target, profile))
        .collect();
    let summary = summarize(&reports);
    SuiteOutcome { reports, summary }
}

fn run_case(id: &str, target: &Target, profile: Profile) -> IdentityReport {
    let symbolic = target.domain() == crate::scalar::Domain::RationalFunction;
    let params = Params::with_n(profile.size(id, symbolic));
    run_identity_on(id, target, &params).unwrap_or_else(|err| {
        // an evaluation error is reported as a failed instance
        let mut b = ReportBuilder::new(id).param("target", target.selector());
        b.compare(&[], &format!("error: {err}"), &String::new());
        let expected = match target {
            Target::Sequence(s) => {
                super::lookup(id).map_or(Expectation::MustPass, |spec| spec.expectation(s.family()))
            }
            Target::Operator(_) => Expectation::MustPass,
        };
        b.finish().with_expectation(expected)
    })
}

fn summarize(reports: &[IdentityReport]) -> Summary {
    let mut s = Summary { total: reports.len(), ..Summary::default() };
    for r in reports {
        if r.passed() {
            s.passed += 1;
        } else {
            s.failed += 1;
            if r.expected == Some(Expectation::ExpectedFail) {
                s.expected_fail += 1;
            }
        }
        if !r.is_healthy() {
            s.unhealthy += 1;
        }
    }
    s.healthy = s.unhealthy == 0;
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_parsing() {
        assert_eq!(Profile::parse("full").unwrap(), Profile::Full);
        assert!(Profile::parse("slow").is_err());
        assert!(Profile::Quick.size("eq4", true) <= Profile::Quick.size("eq4", false));
    }

    #[test]
    fn summary_counts() {
        let ok = ReportBuilder::new("a").finish().with_expectation(Expectation::MustPass);
        let mut b = ReportBuilder::new("b");
        b.compare(&[0], &1, &2);
        let expected = b.finish().with_expectation(Expectation::ExpectedFail);
        let mut b = ReportBuilder::new("c");
        b.compare(&[0], &1, &2);
        let broken = b.finish().with_expectation(Expectation::MustPass);
        let s = summarize(&[ok, expected, broken]);
        assert_eq!((s.total, s.passed, s.failed, s.expected_fail, s.unhealthy), (3, 1, 2, 1, 1));
        assert!(!s.healthy);
    }
}
