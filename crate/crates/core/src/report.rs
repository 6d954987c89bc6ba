use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::{Duration, Instant};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
}

/// What the suite asserts about an identity for a given sequence family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    MustPass,
    ExpectedFail,
    Informative,
}

/// An evaluated instance: index tuple plus canonical strings of both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub index: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expectation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub healthy: Option<bool>,
    /// Number of instances compared.
    pub checked: usize,
    /// First failing instance in lexicographic index order.
    pub counterexample: Option<Witness>,
    /// Both sides of a passing single-instance check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Witness>,
    /// Wall-clock time; kept out of serialized output so reports stay
    /// byte-identical across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Attaches an expectation and derives health from it.
    pub fn with_expectation(mut self, expected: Expectation) -> Self {
        self.healthy = Some(match expected {
            Expectation::MustPass => self.passed(),
            Expectation::ExpectedFail => !self.passed(),
            Expectation::Informative => true,
        });
        self.expected = Some(expected);
        self
    }

    pub fn is_healthy(&self) -> bool {
        self.healthy.unwrap_or_else(|| self.passed())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Accumulates comparisons for one identity check. Callers feed instances
/// in lexicographic index order; the first mismatch is kept.
pub struct ReportBuilder {
    id: String,
    params: BTreeMap<String, String>,
    checked: usize,
    last: Option<Witness>,
    counterexample: Option<Witness>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(id: impl Into<String>) -> Self {
        ReportBuilder {
            id: id.into(),
            params: BTreeMap::new(),
            checked: 0,
            last: None,
            counterexample: None,
            started: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn failed(&self) -> bool {
        self.counterexample.is_some()
    }

    /// Records one instance; returns `true` when both sides agree.
    pub fn compare<T: PartialEq + Display>(&mut self, index: &[i64], lhs: &T, rhs: &T) -> bool {
        self.checked += 1;
        let ok = lhs == rhs;
        let witness = || Witness { index: index.to_vec(), lhs: lhs.to_string(), rhs: rhs.to_string() };
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
        if ok && self.checked == 1 {
            self.last = Some(witness());
        }
        ok
    }

    pub fn finish(self) -> IdentityReport {
        let status = if self.counterexample.is_some() { Status::Fail } else { Status::Pass };
        let values = if status == Status::Pass && self.checked == 1 { self.last } else { None };
        IdentityReport {
            id: self.id,
            params: self.params,
            status,
            expected: None,
            healthy: None,
            checked: self.checked,
            counterexample: self.counterexample,
            values,
            elapsed: self.started.elapsed(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_first_counterexample() {
        let mut b = ReportBuilder::new("demo").param("n", 3);
        assert!(b.compare(&[0, 0], &1, &1));
        assert!(!b.compare(&[1, 0], &2, &3));
        assert!(!b.compare(&[1, 1], &4, &5));
        let r = b.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.checked, 3);
        let cx = r.counterexample.unwrap();
        assert_eq!((cx.index, cx.lhs, cx.rhs), (vec![1, 0], "2".into(), "3".into()));
    }

    #[test]
    fn health_follows_expectation() {
        let mut b = ReportBuilder::new("demo");
        b.compare(&[0], &1, &2);
        let r = b.finish();
        assert!(r.clone().with_expectation(Expectation::ExpectedFail).is_healthy());
        assert!(!r.clone().with_expectation(Expectation::MustPass).is_healthy());
        assert!(r.with_expectation(Expectation::Informative).is_healthy());
    }

    #[test]
    fn single_pass_keeps_values_and_json_is_stable() {
        let mut b = ReportBuilder::new("demo").param("b", 2).param("a", 1);
        b.compare(&[3], &27, &27);
        let line = b.finish().to_json_line();
        assert_eq!(
            line,
            r#"{"id":"demo","params":{"a":"1","b":"2"},"status":"pass","checked":1,"counterexample":null,"values":{"index":[3],"lhs":"27","rhs":"27"}}"#
        );
    }
}
