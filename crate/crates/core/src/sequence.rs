//! Admissible sequences, described by their ψ-integers `n_ψ`.
//!
//! Every derived quantity (factorials, binomials, falling factorials) is
//! computed from `n_ψ` and memoized per sequence. The memo tables sit
//! behind a lock and act as a pure cache: readers on any thread see the
//! same values.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{integer, parse_rational, scalar_parse, Domain, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum SequenceKind {
    /// `n_ψ = n`.
    Classical,
    /// `n_ψ = 1 + q + … + q^(n-1)` with `q` symbolic.
    QGaussianSymbolic,
    /// Gaussian integers at a fixed rational `q0`.
    QGaussianNumeric(Rational),
    /// `n_ψ = F_n`, with `F_1 = F_2 = 1`.
    Fibonomial,
    /// Explicit `1_ψ, 2_ψ, …`; only indices up to the list length exist.
    Custom(Vec<Scalar>),
}

/// Coarse grouping used for expected identity outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Classical,
    QSymbolic,
    QNumeric,
    Fibonomial,
    Custom,
}

#[derive(Default)]
struct Memo {
    /// `ints[n] = n_ψ`; `ints[0]` is zero.
    ints: Vec<Scalar>,
    facts: Vec<Scalar>,
    binoms: HashMap<(usize, usize), Scalar>,
}

pub struct AdmissibleSequence {
    kind: SequenceKind,
    domain: Domain,
    factorial_overrides: BTreeMap<usize, Scalar>,
    memo: RwLock<Memo>,
}

impl Clone for AdmissibleSequence {
    fn clone(&self) -> Self {
        AdmissibleSequence {
            kind: self.kind.clone(),
            domain: self.domain,
            factorial_overrides: self.factorial_overrides.clone(),
            memo: RwLock::default(),
        }
    }
}

impl fmt::Debug for AdmissibleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdmissibleSequence")
            .field("selector", &self.selector())
            .field("domain", &self.domain)
            .finish()
    }
}

impl AdmissibleSequence {
    pub fn new(kind: SequenceKind) -> Result<Self> {
        let (kind, domain) = match kind {
            SequenceKind::Classical | SequenceKind::Fibonomial => (kind, Domain::Rational),
            SequenceKind::QGaussianSymbolic => (kind, Domain::RationalFunction),
            SequenceKind::QGaussianNumeric(q0) => {
                if q0.is_one() {
                    (SequenceKind::Classical, Domain::Rational)
                } else if q0 == -Rational::one() {
                    // 2_q = 1 + q
                    return Err(Error::NotAdmissible { index: 2 });
                } else {
                    (SequenceKind::QGaussianNumeric(q0), Domain::Rational)
                }
            }
            SequenceKind::Custom(entries) => {
                if let Some(pos) = entries.iter().position(Scalar::is_zero) {
                    return Err(Error::NotAdmissible { index: pos + 1 });
                }
                let domain = entries
                    .iter()
                    .fold(Domain::Rational, |d, s| d.join(s.domain()));
                let entries = entries
                    .iter()
                    .map(|s| domain.lift(s))
                    .collect::<Result<Vec<_>>>()?;
                (SequenceKind::Custom(entries), domain)
            }
        };
        Ok(AdmissibleSequence {
            kind,
            domain,
            factorial_overrides: BTreeMap::new(),
            memo: RwLock::default(),
        })
    }

    pub fn classical() -> Self {
        Self::new(SequenceKind::Classical).expect("classical is admissible")
    }

    pub fn q_symbolic() -> Self {
        Self::new(SequenceKind::QGaussianSymbolic).expect("q-Gaussian is admissible")
    }

    pub fn q_numeric(q0: Rational) -> Result<Self> {
        Self::new(SequenceKind::QGaussianNumeric(q0))
    }

    pub fn fibonomial() -> Self {
        Self::new(SequenceKind::Fibonomial).expect("Fibonomial is admissible")
    }

    pub fn custom(entries: Vec<Scalar>) -> Result<Self> {
        Self::new(SequenceKind::Custom(entries))
    }

    /// Parses a selector: `classical`, `q`, `q=<rational>`, `fibonomial`,
    /// or `custom:<comma-separated scalars>`.
    pub fn from_selector(text: &str) -> Result<Self> {
        let bad = || Error::BadSelector(text.to_string());
        match text {
            "classical" => return Ok(Self::classical()),
            "q" => return Ok(Self::q_symbolic()),
            "fibonomial" => return Ok(Self::fibonomial()),
            _ => {}
        }
        if let Some(q0) = text.strip_prefix("q=") {
            return Self::q_numeric(parse_rational(q0).map_err(|_| bad())?);
        }
        if let Some(list) = text.strip_prefix("custom:") {
            let entries = list
                .split(',')
                .map(|item| {
                    let item = item.trim();
                    scalar_parse(item, Domain::Rational)
                        .or_else(|_| scalar_parse(item, Domain::RationalFunction))
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|_| bad())?;
            return Self::custom(entries);
        }
        Err(bad())
    }

    /// Mutation hook: pins `n_ψ!` to `value`, as if the factorial table had
    /// been computed wrongly. Used to confirm the identity suite notices.
    pub fn with_corrupted_factorial(mut self, n: usize, value: Scalar) -> Result<Self> {
        let value = self.domain.lift(&value)?;
        self.factorial_overrides.insert(n, value);
        self.memo = RwLock::default();
        Ok(self)
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn family(&self) -> Family {
        match self.kind {
            SequenceKind::Classical => Family::Classical,
            SequenceKind::QGaussianSymbolic => Family::QSymbolic,
            SequenceKind::QGaussianNumeric(_) => Family::QNumeric,
            SequenceKind::Fibonomial => Family::Fibonomial,
            SequenceKind::Custom(_) => Family::Custom,
        }
    }

    pub fn is_corrupted(&self) -> bool {
        !self.factorial_overrides.is_empty()
    }

    /// Canonical selector string; parses back to an equal sequence.
    pub fn selector(&self) -> String {
        let base = match &self.kind {
            SequenceKind::Classical => "classical".to_string(),
            SequenceKind::QGaussianSymbolic => "q".to_string(),
            SequenceKind::QGaussianNumeric(q0) => format!("q={}", q0),
            SequenceKind::Fibonomial => "fibonomial".to_string(),
            SequenceKind::Custom(entries) => {
                let items: Vec<String> = entries.iter().map(Scalar::to_string).collect();
                format!("custom:{}", items.join(","))
            }
        };
        if self.is_corrupted() {
            let marks: Vec<String> = self
                .factorial_overrides
                .iter()
                .map(|(n, v)| format!("{}!={}", n, v))
                .collect();
            format!("{}[corrupted {}]", base, marks.join(" "))
        } else {
            base
        }
    }

    /// The Gaussian base for q-type sequences: 1 for classical, `q` or `q0`
    /// for the q-Gaussian kinds, `None` otherwise.
    pub fn q_base(&self) -> Option<Scalar> {
        match &self.kind {
            SequenceKind::Classical => Some(Scalar::from(1)),
            SequenceKind::QGaussianSymbolic => Some(Scalar::q()),
            SequenceKind::QGaussianNumeric(q0) => Some(Scalar::Rat(q0.clone())),
            _ => None,
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Custom(entries) => Some(entries.len()),
            _ => None,
        }
    }

    fn compute_int(&self, n: usize, previous: &[Scalar]) -> Result<Scalar> {
        Ok(match &self.kind {
            SequenceKind::Classical => Scalar::Rat(integer(n as i64)),
            SequenceKind::QGaussianSymbolic => {
                // n_q = (n-1)_q + q^(n-1)
                &previous[n - 1] + &Scalar::q().pow(n as u32 - 1)
            }
            SequenceKind::QGaussianNumeric(q0) => {
                &previous[n - 1] + &Scalar::Rat(num_traits::pow(q0.clone(), n - 1))
            }
            SequenceKind::Fibonomial => {
                if n <= 2 {
                    Scalar::from(1)
                } else {
                    &previous[n - 1] + &previous[n - 2]
                }
            }
            SequenceKind::Custom(entries) => entries
                .get(n - 1)
                .cloned()
                .ok_or(Error::OutOfRange { index: n, len: entries.len() })?,
        })
    }

    fn fill_ints(&self, n: usize) -> Result<()> {
        if self.memo.read().unwrap().ints.len() > n {
            return Ok(());
        }
        let mut memo = self.memo.write().unwrap();
        if memo.ints.is_empty() {
            memo.ints.push(self.domain.zero());
        }
        while memo.ints.len() <= n {
            let next = memo.ints.len();
            let value = self.compute_int(next, &memo.ints)?;
            if value.is_zero() {
                return Err(Error::NotAdmissible { index: next });
            }
            memo.ints.push(value);
        }
        Ok(())
    }

    /// `n_ψ`. `0_ψ` is zero for every sequence.
    pub fn psi_int(&self, n: usize) -> Result<Scalar> {
        self.fill_ints(n)?;
        Ok(self.memo.read().unwrap().ints[n].clone())
    }

    /// `n_ψ! = n_ψ (n-1)_ψ!`, with `0_ψ! = 1`.
    pub fn factorial(&self, n: usize) -> Result<Scalar> {
        if let Some(f) = self.memo.read().unwrap().facts.get(n) {
            return Ok(f.clone());
        }
        self.fill_ints(n)?;
        let mut memo = self.memo.write().unwrap();
        while memo.facts.len() <= n {
            let m = memo.facts.len();
            let value = match self.factorial_overrides.get(&m) {
                Some(v) => v.clone(),
                None if m == 0 => self.domain.one(),
                None => &memo.ints[m] * &memo.facts[m - 1],
            };
            memo.facts.push(value);
        }
        Ok(memo.facts[n].clone())
    }

    /// `n_ψ! / (k_ψ! (n-k)_ψ!)`, zero outside `0 <= k <= n`.
    pub fn binomial(&self, n: usize, k: i64) -> Result<Scalar> {
        if k < 0 || k as usize > n {
            return Ok(self.domain.zero());
        }
        let k = k as usize;
        let key = (n, k.min(n - k));
        if let Some(b) = self.memo.read().unwrap().binoms.get(&key) {
            return Ok(b.clone());
        }
        let den = &self.factorial(k)? * &self.factorial(n - k)?;
        let value = self.factorial(n)?.checked_div(&den)?;
        self.memo.write().unwrap().binoms.insert(key, value.clone());
        Ok(value)
    }

    /// `n_ψ (n-1)_ψ … (n-k+1)_ψ`; needs `k <= n`.
    pub fn falling(&self, n: usize, k: usize) -> Result<Scalar> {
        if k > n {
            return Err(Error::FallingDomain { n, k });
        }
        self.fill_ints(n)?;
        let memo = self.memo.read().unwrap();
        Ok(((n - k + 1)..=n).fold(self.domain.one(), |acc, m| &acc * &memo.ints[m]))
    }

    /// `(1 -_ψ 1)^n = Σ_k (-1)^k binom(n, k)`.
    pub fn alternating_sum(&self, n: usize) -> Result<Scalar> {
        let mut total = self.domain.zero();
        for k in 0..=n {
            total = &total + &self.binomial(n, k as i64)?.signed(k);
        }
        Ok(total)
    }

    /// Checks that `(1 -_ψ 1)^n` vanishes for `1 <= n <= up_to`.
    pub fn normality(&self, up_to: usize) -> Result<Normality> {
        for n in 1..=up_to {
            let value = self.alternating_sum(n)?;
            if !value.is_zero() {
                return Ok(Normality { up_to, first_failure: Some((n, value)) });
            }
        }
        Ok(Normality { up_to, first_failure: None })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Normality {
    pub up_to: usize,
    /// Smallest `n` with `(1 -_ψ 1)^n ≠ 0`, and that value.
    pub first_failure: Option<(usize, Scalar)>,
}

impl Normality {
    pub fn is_normal(&self) -> bool {
        self.first_failure.is_none()
    }
}
