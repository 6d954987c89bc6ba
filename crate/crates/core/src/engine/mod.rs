//! Identity registry and runner.
//!
//! Each identity is addressed by a stable id (see [`list_identities`]). A
//! run either pins every sweep parameter or leaves some open; open ones are
//! swept from 0 up to the bound `n`, in lexicographic order, and the first
//! failing index tuple becomes the counterexample.

mod registry;
mod suite;

use std::collections::BTreeMap;
use std::time::Duration;

pub use registry::{list_identities, lookup, IdentitySpec, TargetKind};
pub use suite::{run_suite, run_suite_with, Profile, Summary, SuiteOutcome};

use crate::calculus::{check_sheffer_basic, psi_plus_power, Polynomial};
use crate::error::{Error, Result};
use crate::matrix::{
    check_exp_vs_closed, check_nilpotent, check_product_identity, check_semigroup,
    check_transpose_fermat, ProductVariant,
};
use crate::qhat::{binomial_rows, cauchy_sides, qhat_mutator, DiagOperator};
use crate::report::{Expectation, IdentityReport, ReportBuilder, Status, Witness};
use crate::scalar::{scalar_parse, Domain, Scalar};
use crate::sequence::AdmissibleSequence;

/// Optional knobs for a run. `None` means "use the default" for `n` and
/// `max_degree`, and "sweep" for the index parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    /// Matrix size, or the upper bound of swept indices.
    pub n: Option<usize>,
    /// A value for `x`; `"x"` keeps it symbolic where supported.
    pub x: Option<String>,
    pub y: Option<String>,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub max_degree: Option<usize>,
}

impl Params {
    pub fn with_n(n: usize) -> Self {
        Params { n: Some(n), ..Params::default() }
    }

    fn given(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let flags: [(&'static str, bool); 9] = [
            ("n", self.n.is_some()),
            ("x", self.x.is_some()),
            ("y", self.y.is_some()),
            ("i", self.i.is_some()),
            ("j", self.j.is_some()),
            ("m", self.m.is_some()),
            ("r", self.r.is_some()),
            ("s", self.s.is_some()),
            ("max-degree", self.max_degree.is_some()),
        ];
        for (name, set) in flags {
            if set {
                out.push(name);
            }
        }
        out
    }

    fn validate(&self, spec: &IdentitySpec) -> Result<()> {
        for name in self.given() {
            if !spec.accepts(name) {
                return Err(Error::InvalidParams(format!(
                    "{} does not take parameter {name} (accepted: {})",
                    spec.id,
                    spec.params.join(", ")
                )));
            }
        }
        Ok(())
    }
}

/// What an identity is evaluated on.
#[derive(Clone, Debug)]
pub enum Target {
    Sequence(AdmissibleSequence),
    Operator(DiagOperator),
}

impl Target {
    /// Parses a sequence selector, or an operator selector (`qhat-...`).
    pub fn parse(selector: &str) -> Result<Self> {
        if selector.starts_with("qhat-") {
            Ok(Target::Operator(DiagOperator::from_selector(selector)?))
        } else {
            Ok(Target::Sequence(AdmissibleSequence::from_selector(selector)?))
        }
    }

    pub fn selector(&self) -> String {
        match self {
            Target::Sequence(s) => s.selector(),
            Target::Operator(op) => op.selector(),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Target::Sequence(s) => s.domain(),
            Target::Operator(op) => op.domain(),
        }
    }

    fn expectation(&self, spec: &IdentitySpec) -> Expectation {
        match self {
            Target::Sequence(s) => spec.expectation(s.family()),
            Target::Operator(_) => Expectation::MustPass,
        }
    }
}

impl From<AdmissibleSequence> for Target {
    fn from(s: AdmissibleSequence) -> Self {
        Target::Sequence(s)
    }
}

impl From<DiagOperator> for Target {
    fn from(op: DiagOperator) -> Self {
        Target::Operator(op)
    }
}

/// Sample points used when `x` (or `x`, `y`) are not pinned.
pub const SAMPLE_X: [&str; 5] = ["1/2", "-3", "7/5", "2", "-1/3"];
pub const SAMPLE_PAIRS: [(&str, &str); 5] =
    [("1", "1"), ("1/2", "-2/3"), ("-3", "5/4"), ("2", "-1"), ("7/5", "1/3")];

/// Runs identity `id` on the target named by `selector`.
pub fn run_identity(id: &str, selector: &str, params: &Params) -> Result<IdentityReport> {
    run_identity_on(id, &Target::parse(selector)?, params)
}

/// Runs identity `id` on an already-built target. The report carries the
/// expectation for the target's family.
pub fn run_identity_on(id: &str, target: &Target, params: &Params) -> Result<IdentityReport> {
    let spec = lookup(id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    params.validate(spec)?;
    let target = match (spec.target, target) {
        (TargetKind::Operator, Target::Sequence(s)) => Target::Operator(qhat_mutator(s)),
        (TargetKind::Operator, t) => t.clone(),
        (_, Target::Operator(op)) => {
            return Err(Error::InvalidParams(format!(
                "{} runs on a sequence, got operator {}",
                spec.id,
                op.selector()
            )))
        }
        (_, t) => t.clone(),
    };
    if let Target::Sequence(seq) = &target {
        if !spec.applies_to(seq.family()) {
            return Err(Error::WrongSequenceKind(format!(
                "{} needs a classical or q-Gaussian sequence, got {}",
                spec.id,
                seq.selector()
            )));
        }
    }
    let symbolic = target.domain() == Domain::RationalFunction;
    let n = params.n.unwrap_or_else(|| Profile::Quick.size(spec.id, symbolic));
    let report = match &target {
        Target::Sequence(seq) => execute(spec.id, seq, n, params)?,
        Target::Operator(op) => operator_cauchy(op, n, params)?,
    };
    Ok(report.with_expectation(target.expectation(spec)))
}

fn execute(id: &str, seq: &AdmissibleSequence, n: usize, p: &Params) -> Result<IdentityReport> {
    match id {
        "exp-vs-closed" => exp_vs_closed(seq, n, p),
        "nilpotent" => check_nilpotent(seq, n),
        "eq4" => check_product_identity(seq, n, ProductVariant::Sum),
        "eq5" => check_product_identity(seq, n, ProductVariant::Difference),
        "eq6" => check_transpose_fermat(seq, n),
        "semigroup" => {
            let pairs = pairs(seq.domain(), p)?;
            let parts = pairs
                .iter()
                .map(|(x, y)| check_semigroup(seq, n, x, y))
                .collect::<Result<Vec<_>>>()?;
            Ok(merge("semigroup", base_params(seq, n, &describe_pairs(&pairs)), parts))
        }
        "odd-cancel" => odd_cancel(seq, n, p),
        "normality" => normality(seq, n),
        "integrality" => integrality(seq, n),
        "eq9" => q_vandermonde(seq, n, p),
        "eq10" => weighted_cauchy(seq, n, p),
        "qhat-coincide" => qhat_coincide(seq, n),
        "eq11-basic" => {
            let pairs = pairs(seq.domain(), p)?;
            let mut parts = Vec::new();
            for (x, y) in &pairs {
                for deg in 0..=n {
                    parts.push(check_sheffer_basic(seq, deg, x, y)?);
                }
            }
            let mut r = merge("eq11-basic", base_params(seq, n, &describe_pairs(&pairs)), parts);
            if let Some(cx) = r.counterexample.as_mut() {
                // sub-report number -> pair number; the degree follows
                cx.index[0] /= n as i64 + 1;
            }
            Ok(r)
        }
        other => Err(Error::UnknownIdentity(other.to_string())),
    }
}

fn base_params(seq: &AdmissibleSequence, n: usize, samples: &str) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("sequence".to_string(), seq.selector());
    m.insert("n".to_string(), n.to_string());
    if !samples.is_empty() {
        m.insert("samples".to_string(), samples.to_string());
    }
    m
}

/// Combines sub-reports; a counterexample index is prefixed with the
/// number of the sub-report it came from.
fn merge(id: &str, params: BTreeMap<String, String>, parts: Vec<IdentityReport>) -> IdentityReport {
    let single = parts.len() == 1;
    let checked = parts.iter().map(|r| r.checked).sum();
    let elapsed: Duration = parts.iter().map(|r| r.elapsed).sum();
    let counterexample = parts.iter().enumerate().find_map(|(k, r)| {
        r.counterexample.as_ref().map(|cx| {
            let mut index = vec![k as i64];
            index.extend(&cx.index);
            Witness { index, lhs: cx.lhs.clone(), rhs: cx.rhs.clone() }
        })
    });
    let values = if single { parts.into_iter().next().and_then(|r| r.values) } else { None };
    IdentityReport {
        id: id.to_string(),
        params,
        status: if counterexample.is_some() { Status::Fail } else { Status::Pass },
        expected: None,
        healthy: None,
        checked,
        values: if counterexample.is_some() { None } else { values },
        counterexample,
        elapsed,
    }
}

fn parse_value(text: &str, domain: Domain) -> Result<Scalar> {
    scalar_parse(text.trim(), domain)
}

fn samples(domain: Domain, p: &Params) -> Result<Vec<Scalar>> {
    match &p.x {
        Some(x) => Ok(vec![parse_value(x, domain)?]),
        None => SAMPLE_X.iter().map(|s| parse_value(s, domain)).collect(),
    }
}

fn pairs(domain: Domain, p: &Params) -> Result<Vec<(Scalar, Scalar)>> {
    match (&p.x, &p.y) {
        (Some(x), Some(y)) => Ok(vec![(parse_value(x, domain)?, parse_value(y, domain)?)]),
        (None, None) => SAMPLE_PAIRS
            .iter()
            .map(|(x, y)| Ok((parse_value(x, domain)?, parse_value(y, domain)?)))
            .collect(),
        _ => Err(Error::InvalidParams("pin both x and y, or neither".to_string())),
    }
}

fn describe(values: &[Scalar]) -> String {
    values.iter().map(Scalar::to_string).collect::<Vec<_>>().join(";")
}

fn describe_pairs(pairs: &[(Scalar, Scalar)]) -> String {
    pairs.iter().map(|(x, y)| format!("({x},{y})")).collect::<Vec<_>>().join(";")
}

fn exp_vs_closed(seq: &AdmissibleSequence, n: usize, p: &Params) -> Result<IdentityReport> {
    let d = seq.domain();
    let symbolic = Polynomial::x(d);
    match p.x.as_deref().map(str::trim) {
        Some("x") => check_exp_vs_closed(seq, n, &symbolic),
        Some(_) => check_exp_vs_closed(seq, n, &samples(d, p)?[0]),
        None => {
            let xs = samples(d, p)?;
            let mut parts = vec![check_exp_vs_closed(seq, n, &symbolic)?];
            for x in &xs {
                parts.push(check_exp_vs_closed(seq, n, x)?);
            }
            let label = format!("x;{}", describe(&xs));
            Ok(merge("exp-vs-closed", base_params(seq, n, &label), parts))
        }
    }
}

fn odd_cancel(seq: &AdmissibleSequence, n: usize, p: &Params) -> Result<IdentityReport> {
    let d = seq.domain();
    let xs = samples(d, p)?;
    let mut report = ReportBuilder::new("odd-cancel")
        .param("sequence", seq.selector())
        .param("n", n)
        .param("samples", describe(&xs));
    let zero = d.zero();
    'outer: for (a_no, a) in xs.iter().enumerate() {
        let neg = -a;
        for k in 0..=n.saturating_sub(1) / 2 {
            let value = psi_plus_power(seq, a, &neg, 2 * k + 1)?;
            if !report.compare(&[a_no as i64, k as i64], &value, &zero) {
                break 'outer;
            }
        }
    }
    Ok(report.finish())
}

fn normality(seq: &AdmissibleSequence, n: usize) -> Result<IdentityReport> {
    let mut report = ReportBuilder::new("normality").param("sequence", seq.selector()).param("n", n);
    let zero = seq.domain().zero();
    for m in 1..=n {
        if !report.compare(&[m as i64], &seq.alternating_sum(m)?, &zero) {
            break;
        }
    }
    Ok(report.finish())
}

fn integrality(seq: &AdmissibleSequence, n: usize) -> Result<IdentityReport> {
    let mut report = ReportBuilder::new("integrality").param("sequence", seq.selector()).param("n", n);
    let one = "1".to_string();
    'outer: for m in 0..=n {
        for k in 0..=m {
            let b = seq.binomial(m, k as i64)?;
            let den = match &b {
                Scalar::Rat(r) => r.denom().to_string(),
                Scalar::Fun(f) => f.denom().to_string(),
            };
            if !report.compare(&[m as i64, k as i64], &den, &one) {
                break 'outer;
            }
        }
    }
    Ok(report.finish())
}

fn pinned(value: Option<usize>, upto: usize) -> std::ops::RangeInclusive<usize> {
    match value {
        Some(v) => v..=v,
        None => 0..=upto,
    }
}

fn q_base(seq: &AdmissibleSequence) -> Result<Scalar> {
    seq.q_base()
        .ok_or_else(|| Error::WrongSequenceKind(format!("no Gaussian base for {}", seq.selector())))
}

fn q_vandermonde(seq: &AdmissibleSequence, n: usize, p: &Params) -> Result<IdentityReport> {
    let q = q_base(seq)?;
    let mut report = ReportBuilder::new("eq9").param("sequence", seq.selector()).param("n", n);
    for (key, v) in [("r", p.r), ("s", p.s), ("j", p.j)] {
        if let Some(v) = v {
            report = report.param(key, v);
        }
    }
    'outer: for r in pinned(p.r, n) {
        for s in pinned(p.s, n.saturating_sub(r)) {
            for j in pinned(p.j, r + s) {
                let (lhs, rhs) = crate::matrix::q_vandermonde_sides(seq, &q, r, s, j)?;
                if !report.compare(&[r as i64, s as i64, j as i64], &lhs, &rhs) {
                    break 'outer;
                }
            }
        }
    }
    Ok(report.finish())
}

fn weighted_cauchy(seq: &AdmissibleSequence, n: usize, p: &Params) -> Result<IdentityReport> {
    let q = q_base(seq)?;
    let mut report = ReportBuilder::new("eq10").param("sequence", seq.selector()).param("n", n);
    for (key, v) in [("i", p.i), ("j", p.j)] {
        if let Some(v) = v {
            report = report.param(key, v);
        }
    }
    'outer: for i in pinned(p.i, n) {
        for j in pinned(p.j, n) {
            let (lhs, rhs) = crate::matrix::weighted_cauchy_sides(seq, &q, i, j)?;
            if !report.compare(&[i as i64, j as i64], &lhs, &rhs) {
                break 'outer;
            }
        }
    }
    Ok(report.finish())
}

fn operator_cauchy(op: &DiagOperator, n: usize, p: &Params) -> Result<IdentityReport> {
    let max_degree = p.max_degree.unwrap_or(n + 2);
    let mut report = ReportBuilder::new("eq8")
        .param("operator", op.selector())
        .param("n", n)
        .param("max-degree", max_degree);
    for (key, v) in [("i", p.i), ("j", p.j), ("m", p.m)] {
        if let Some(v) = v {
            report = report.param(key, v);
        }
    }
    let (is, js, ms) = (pinned(p.i, n), pinned(p.j, n), pinned(p.m, max_degree));
    let top = is.end() + js.end();
    let tables = ms
        .clone()
        .map(|m| {
            let b = op.eigenvalue(m)?;
            let rows = binomial_rows(&b, top);
            Ok((m, b, rows))
        })
        .collect::<Result<Vec<_>>>()?;
    'outer: for i in is {
        for j in js.clone() {
            for (m, b, rows) in &tables {
                let (lhs, rhs) = cauchy_sides(rows, b, i, j);
                if !report.compare(&[i as i64, j as i64, *m as i64], &lhs, &rhs) {
                    break 'outer;
                }
            }
        }
    }
    Ok(report.finish())
}

fn qhat_coincide(seq: &AdmissibleSequence, n: usize) -> Result<IdentityReport> {
    let op = qhat_mutator(seq);
    let mut report = ReportBuilder::new("qhat-coincide").param("sequence", seq.selector()).param("n", n);
    // degree 0 carries the fixed eigenvalue 1, not the sequence formula
    'outer: for m in 1..=n {
        let rows = binomial_rows(&op.eigenvalue(m)?, n);
        for (row_no, row) in rows.iter().enumerate() {
            for (k, value) in row.iter().enumerate() {
                let expected = seq.binomial(row_no, k as i64)?;
                if !report.compare(&[m as i64, row_no as i64, k as i64], value, &expected) {
                    break 'outer;
                }
            }
        }
    }
    Ok(report.finish())
}
