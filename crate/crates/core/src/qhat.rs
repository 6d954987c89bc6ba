//! Diagonal operators on `F[x]` and their operator-valued integers and
//! binomials.
//!
//! Every operator here acts on `x^m` as multiplication by an eigenvalue
//! `λ_m`, so an operator identity is checked degree by degree as a scalar
//! identity in `λ_m`.

use std::fmt;
use std::sync::RwLock;

use crate::calculus::Polynomial;
use crate::error::{Error, Result};
use crate::report::{IdentityReport, ReportBuilder};
use crate::scalar::{parse_rational, Domain, Scalar};
use crate::sequence::AdmissibleSequence;

#[derive(Clone, Debug)]
pub enum Provenance {
    /// `λ_0 = 1`, `λ_n = ((n+1)_ψ - 1) / n_ψ`.
    Mutator(AdmissibleSequence),
    /// `λ_m = q^m`.
    GaussianPower(Scalar),
}

pub struct DiagOperator {
    provenance: Provenance,
    domain: Domain,
    eigen: RwLock<Vec<Scalar>>,
}

impl fmt::Debug for DiagOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiagOperator").field("selector", &self.selector()).finish()
    }
}

impl Clone for DiagOperator {
    fn clone(&self) -> Self {
        DiagOperator {
            provenance: self.provenance.clone(),
            domain: self.domain,
            eigen: RwLock::default(),
        }
    }
}

/// The mutator built from a sequence's ψ-integers.
pub fn qhat_mutator(seq: &AdmissibleSequence) -> DiagOperator {
    DiagOperator {
        domain: seq.domain(),
        provenance: Provenance::Mutator(seq.clone()),
        eigen: RwLock::default(),
    }
}

/// `x^m ↦ q^m x^m`.
pub fn qhat_gaussian_power(q: Scalar) -> DiagOperator {
    DiagOperator { domain: q.domain(), provenance: Provenance::GaussianPower(q), eigen: RwLock::default() }
}

impl DiagOperator {
    /// Parses `qhat-paper:<sequence>`, `qhat-power:q`, or
    /// `qhat-power:q=<rational>`.
    pub fn from_selector(text: &str) -> Result<Self> {
        if let Some(seq) = text.strip_prefix("qhat-paper:") {
            return Ok(qhat_mutator(&AdmissibleSequence::from_selector(seq)?));
        }
        match text.strip_prefix("qhat-power:") {
            Some("q") => Ok(qhat_gaussian_power(Scalar::q())),
            Some(rest) => {
                let q0 = rest
                    .strip_prefix("q=")
                    .and_then(|r| parse_rational(r).ok())
                    .ok_or_else(|| Error::BadSelector(text.to_string()))?;
                Ok(qhat_gaussian_power(Scalar::Rat(q0)))
            }
            None => Err(Error::BadSelector(text.to_string())),
        }
    }

    pub fn selector(&self) -> String {
        match &self.provenance {
            Provenance::Mutator(seq) => format!("qhat-paper:{}", seq.selector()),
            Provenance::GaussianPower(Scalar::Fun(_)) => "qhat-power:q".to_string(),
            Provenance::GaussianPower(q) => format!("qhat-power:q={}", q),
        }
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    fn compute(&self, m: usize) -> Result<Scalar> {
        match &self.provenance {
            Provenance::Mutator(_) if m == 0 => Ok(self.domain.one()),
            Provenance::Mutator(seq) => {
                let shifted = &seq.psi_int(m + 1)? - &self.domain.one();
                shifted.checked_div(&seq.psi_int(m)?)
            }
            Provenance::GaussianPower(q) => Ok(q.pow(m as u32)),
        }
    }

    /// `λ_m`, the eigenvalue on `x^m`.
    pub fn eigenvalue(&self, m: usize) -> Result<Scalar> {
        if let Some(v) = self.eigen.read().unwrap().get(m) {
            return Ok(v.clone());
        }
        let mut memo = self.eigen.write().unwrap();
        while memo.len() <= m {
            let next = self.compute(memo.len())?;
            memo.push(next);
        }
        Ok(memo[m].clone())
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let d = self.domain.join(p.domain());
        let coeffs = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(m, c)| Ok(&d.lift(c)? * &d.lift(&self.eigenvalue(m)?)?))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_coeffs(d, coeffs)
    }

    /// Eigenvalue of `n_q̂` on `x^m`: `1 + λ + … + λ^(n-1)`.
    pub fn int_eigen(&self, n: usize, m: usize) -> Result<Scalar> {
        let lambda = self.eigenvalue(m)?;
        Ok(geometric_sum(&lambda, n))
    }

    /// Eigenvalue of `n_q̂!` on `x^m`.
    pub fn factorial_eigen(&self, n: usize, m: usize) -> Result<Scalar> {
        let lambda = self.eigenvalue(m)?;
        Ok((1..=n).fold(self.domain.one(), |acc, k| &acc * &geometric_sum(&lambda, k)))
    }

    /// Eigenvalue of the operator binomial on `x^m`, zero outside
    /// `0 <= k <= n`.
    pub fn binomial_eigen(&self, n: usize, k: i64, m: usize) -> Result<Scalar> {
        if k < 0 || k as usize > n {
            return Ok(self.domain.zero());
        }
        Ok(binomial_rows(&self.eigenvalue(m)?, n).swap_remove(n).swap_remove(k as usize))
    }
}

fn geometric_sum(lambda: &Scalar, n: usize) -> Scalar {
    let d = lambda.domain();
    let mut total = d.zero();
    let mut power = d.one();
    for _ in 0..n {
        total = &total + &power;
        power = &power * lambda;
    }
    total
}

/// Rows `0..=n_max` of the base-`b` Pascal triangle
/// `B(n,k) = B(n-1,k-1) + b^k B(n-1,k)`.
pub fn binomial_rows(b: &Scalar, n_max: usize) -> Vec<Vec<Scalar>> {
    let d = b.domain();
    let powers: Vec<Scalar> = (0..=n_max).map(|k| b.pow(k as u32)).collect();
    let mut rows: Vec<Vec<Scalar>> = vec![vec![d.one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| match k {
                0 => d.one(),
                k if k == n => d.one(),
                k => &prev[k - 1] + &(&powers[k] * &prev[k]),
            })
            .collect();
        rows.push(row);
    }
    rows
}

pub(crate) fn cauchy_sides(rows: &[Vec<Scalar>], b: &Scalar, i: usize, j: usize) -> (Scalar, Scalar) {
    let mut lhs = b.domain().zero();
    for (k, (bi, bj)) in rows[i].iter().zip(&rows[j]).enumerate() {
        let w = b.pow(((i - k) * (j - k)) as u32);
        lhs = &lhs + &(&(&w * bi) * bj);
    }
    (lhs, rows[i + j][j].clone())
}

/// Checks `Σ_k q̂^((i-k)(j-k)) binom_q̂(i,k) binom_q̂(j,k) = binom_q̂(i+j, j)` on
/// `x^m`.
pub fn check_operator_cauchy(op: &DiagOperator, i: usize, j: usize, m: usize) -> Result<IdentityReport> {
    let mut report = ReportBuilder::new("eq8")
        .param("operator", op.selector())
        .param("i", i)
        .param("j", j)
        .param("m", m);
    let b = op.eigenvalue(m)?;
    let rows = binomial_rows(&b, i + j);
    let (lhs, rhs) = cauchy_sides(&rows, &b, i, j);
    report.compare(&[i as i64, j as i64, m as i64], &lhs, &rhs);
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, QPoly, RationalFunction};

    fn qp(cs: &[i64]) -> Scalar {
        Scalar::Fun(RationalFunction::from_poly(QPoly::from_i64s(cs)))
    }

    #[test]
    fn mutator_eigenvalues() {
        let classical = qhat_mutator(&AdmissibleSequence::classical());
        for m in 0..8 {
            assert_eq!(classical.eigenvalue(m).unwrap(), 1.into());
        }
        let q = qhat_mutator(&AdmissibleSequence::q_symbolic());
        for m in 1..8 {
            assert_eq!(q.eigenvalue(m).unwrap(), Scalar::q());
        }
        let f = qhat_mutator(&AdmissibleSequence::fibonomial());
        assert_eq!(f.eigenvalue(4).unwrap(), Scalar::Rat(rational(4, 3)));
        assert_eq!(f.eigenvalue(0).unwrap(), 1.into());
    }

    #[test]
    fn gaussian_power_eigenvalues() {
        let q = qhat_gaussian_power(Scalar::q());
        assert_eq!(q.eigenvalue(3).unwrap(), qp(&[0, 0, 0, 1]));
        let one = qhat_gaussian_power(1.into());
        assert_eq!(one.eigenvalue(9).unwrap(), 1.into());
        let two = qhat_gaussian_power(2.into());
        assert_eq!(two.eigenvalue(4).unwrap(), 16.into());
    }

    #[test]
    fn operator_integers_and_binomials() {
        let classical = qhat_mutator(&AdmissibleSequence::classical());
        assert_eq!(classical.int_eigen(5, 3).unwrap(), 5.into());
        assert_eq!(classical.binomial_eigen(4, 2, 7).unwrap(), 6.into());
        let q = qhat_gaussian_power(Scalar::q());
        assert_eq!(q.int_eigen(2, 1).unwrap(), qp(&[1, 1]));
        assert_eq!(q.binomial_eigen(2, 1, 1).unwrap(), qp(&[1, 1]));
        assert_eq!(q.int_eigen(1, 4).unwrap(), qp(&[1]));
        assert_eq!(q.int_eigen(0, 4).unwrap(), qp(&[]));
        assert_eq!(q.binomial_eigen(6, 6, 2).unwrap(), qp(&[1]));
        assert_eq!(q.binomial_eigen(6, 7, 2).unwrap(), qp(&[]));
    }

    #[test]
    fn applies_diagonally() {
        let op = qhat_gaussian_power(2.into());
        let p = Polynomial::from_coeffs(Domain::Rational, vec![1.into(), 1.into(), 1.into()]).unwrap();
        let got = op.apply(&p).unwrap();
        assert_eq!(got.coeffs(), &[1.into(), 2.into(), 4.into()]);
    }

    #[test]
    fn cauchy_examples() {
        let f = qhat_mutator(&AdmissibleSequence::fibonomial());
        let r = check_operator_cauchy(&f, 1, 1, 4).unwrap();
        let v = r.values.unwrap();
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("7/3", "7/3"));
        assert!(check_operator_cauchy(&f, 0, 5, 3).unwrap().passed());
        let q = qhat_gaussian_power(Scalar::q());
        assert!(check_operator_cauchy(&q, 3, 3, 2).unwrap().passed());
    }

    #[test]
    fn selectors() {
        for s in ["qhat-paper:fibonomial", "qhat-paper:q=3", "qhat-power:q", "qhat-power:q=1/2"] {
            assert_eq!(DiagOperator::from_selector(s).unwrap().selector(), s);
        }
        assert!(DiagOperator::from_selector("qhat-power:x").is_err());
        assert!(DiagOperator::from_selector("qhat").is_err());
    }
}
