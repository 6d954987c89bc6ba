//! Polynomials in `x` over a scalar field, the ψ-derivative, the ψ-shift
//! `exp_ψ(y ∂_ψ)`, and ψ-addition powers `(x +_ψ y)^n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::report::{IdentityReport, ReportBuilder};
use crate::scalar::{scalar_parse, Domain, Scalar};
use crate::sequence::AdmissibleSequence;

/// Dense polynomial in `x`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    domain: Domain,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn zero(domain: Domain) -> Self {
        Polynomial { domain, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(c.domain(), vec![c]).expect("single domain")
    }

    /// The indeterminate `x`.
    pub fn x(domain: Domain) -> Self {
        Self::monomial(domain.one(), 1)
    }

    pub fn monomial(c: Scalar, degree: usize) -> Self {
        let domain = c.domain();
        let mut coeffs = vec![domain.zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(domain, coeffs).expect("single domain")
    }

    /// Builds a polynomial, lifting every coefficient into `domain`.
    pub fn from_coeffs(domain: Domain, coeffs: Vec<Scalar>) -> Result<Self> {
        let mut coeffs = coeffs
            .iter()
            .map(|c| domain.lift(c))
            .collect::<Result<Vec<_>>>()?;
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Ok(Polynomial { domain, coeffs })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lift(&self, domain: Domain) -> Result<Self> {
        Self::from_coeffs(domain, self.coeffs.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Self::trimmed(self.domain, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        Self::trimmed(self.domain, coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.domain);
        }
        let mut coeffs = vec![self.domain.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self::trimmed(self.domain, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::trimmed(self.domain, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(self.domain.one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.domain.zero(), |acc, c| &(&acc * at) + c)
    }

    fn trimmed(domain: Domain, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { domain, coeffs }
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(text: &str, domain: Domain) -> Result<Self> {
        let err = |offset: usize, message: &str| Error::Parse { offset, message: message.into() };
        let mut coeffs: Vec<Scalar> = Vec::new();
        for (start, negative, term) in split_terms(text) {
            let (coef_text, degree) = match term.find('x') {
                Some(at) => {
                    let degree = match &term[at + 1..] {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .and_then(|d| d.parse::<usize>().ok())
                            .ok_or_else(|| err(start + at + 1, "bad exponent"))?,
                    };
                    let coef = match &term[..at] {
                        "" => None,
                        c => Some(
                            c.strip_suffix('*').ok_or_else(|| err(start + at, "expected '*'"))?,
                        ),
                    };
                    (coef, degree)
                }
                None => (Some(term), 0),
            };
            let mut c = match coef_text {
                None => domain.one(),
                Some("-") => -domain.one(),
                Some(t) => scalar_parse(t, domain).map_err(|e| match e {
                    Error::Parse { offset, message } => Error::Parse { offset: start + offset, message },
                    other => other,
                })?,
            };
            if negative {
                c = -c;
            }
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, domain.zero());
            }
            coeffs[degree] = &coeffs[degree] + &c;
        }
        Self::from_coeffs(domain, coeffs)
    }
}

/// Splits on top-level `" + "` / `" - "`; yields (offset, negated, term).
fn split_terms(text: &str) -> Vec<(usize, bool, &str)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let (mut start, mut negative) = (0, false);
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b' ' if depth == 0 && i + 2 < bytes.len() && matches!(bytes[i + 1], b'+' | b'-') && bytes[i + 2] == b' ' => {
                out.push((start, negative, &text[start..i]));
                negative = bytes[i + 1] == b'-';
                start = i + 3;
                i += 3;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    out.push((start, negative, &text[start..]));
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative_rational();
            let abs = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", abs)?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}*", abs)?;
            }
            f.write_str("x")?;
            if k > 1 {
                write!(f, "^{}", k)?;
            }
        }
        Ok(())
    }
}

/// `∂_ψ x^n = n_ψ x^(n-1)`, extended linearly.
pub fn psi_derivative(seq: &AdmissibleSequence, p: &Polynomial) -> Result<Polynomial> {
    let d = seq.domain().join(p.domain());
    let mut coeffs = Vec::with_capacity(p.coeffs().len().saturating_sub(1));
    for (n, c) in p.coeffs().iter().enumerate().skip(1) {
        coeffs.push(&d.lift(c)? * &d.lift(&seq.psi_int(n)?)?);
    }
    Polynomial::from_coeffs(d, coeffs)
}

/// `(x +_ψ y)^n = Σ_k binom_ψ(n, k) x^k y^(n-k)`.
pub fn psi_plus_power(seq: &AdmissibleSequence, x: &Scalar, y: &Scalar, n: usize) -> Result<Scalar> {
    let d = seq.domain();
    let (x, y) = (d.lift(x)?, d.lift(y)?);
    let mut total = d.zero();
    for k in 0..=n {
        let term = &(&seq.binomial(n, k as i64)? * &x.pow(k as u32)) * &y.pow((n - k) as u32);
        total = &total + &term;
    }
    Ok(total)
}

/// `exp_ψ(y ∂_ψ) p = Σ_k (y^k / k_ψ!) ∂_ψ^k p`, a finite sum on polynomials.
pub fn psi_shift(seq: &AdmissibleSequence, p: &Polynomial, y: &Scalar) -> Result<Polynomial> {
    let d = seq.domain();
    let y = d.lift(y)?;
    let mut derivative = p.lift(d)?;
    let mut total = Polynomial::zero(d);
    let mut k = 0usize;
    while !derivative.is_zero() {
        let weight = y.pow(k as u32).checked_div(&seq.factorial(k)?)?;
        total = total.add(&derivative.scale(&weight));
        derivative = psi_derivative(seq, &derivative)?;
        k += 1;
    }
    Ok(total)
}

/// Checks `A_n(x +_ψ y) = Σ_k binom_ψ(n,k) A_k(y) x^(n-k)` for the basic
/// sequence `A_n = x^n`.
///
/// The left side is computed by shifting `x^n` with [`psi_shift`] and
/// evaluating at `x`; the right side is the binomial sum. The closed
/// [`psi_plus_power`] value is compared against the sum as a second
/// instance.
pub fn check_sheffer_basic(
    seq: &AdmissibleSequence,
    n: usize,
    x: &Scalar,
    y: &Scalar,
) -> Result<IdentityReport> {
    let d = seq.domain();
    let (x, y) = (d.lift(x)?, d.lift(y)?);
    let mut report = ReportBuilder::new("eq11-basic")
        .param("sequence", seq.selector())
        .param("n", n)
        .param("x", &x)
        .param("y", &y);
    let rhs = sheffer_rhs(seq, n, &x, &y)?;
    let shifted = psi_shift(seq, &Polynomial::monomial(d.one(), n), &y)?.eval(&x);
    report.compare(&[n as i64, 0], &shifted, &rhs);
    let closed = psi_plus_power(seq, &x, &y, n)?;
    report.compare(&[n as i64, 1], &closed, &rhs);
    let mut r = report.finish();
    if r.passed() {
        r.values = Some(crate::report::Witness {
            index: vec![n as i64],
            lhs: shifted.to_string(),
            rhs: rhs.to_string(),
        });
    }
    Ok(r)
}

fn sheffer_rhs(seq: &AdmissibleSequence, n: usize, x: &Scalar, y: &Scalar) -> Result<Scalar> {
    let mut total = seq.domain().zero();
    for k in 0..=n {
        let term = &(&seq.binomial(n, k as i64)? * &y.pow(k as u32)) * &x.pow((n - k) as u32);
        total = &total + &term;
    }
    Ok(total)
}
