//! `K_ψ`, `P_ψ[x]` by series and closed form, Fermat matrices, moment
//! (generalized Pascal) matrices, and the checks built on them.

use super::{Entry, LowerTriMatrix, SquareMatrix};
use crate::calculus::psi_plus_power;
use crate::error::{Error, Result};
use crate::report::{IdentityReport, ReportBuilder};
use crate::scalar::Scalar;
use crate::sequence::AdmissibleSequence;

fn require_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("matrix size must be at least 1".into()));
    }
    Ok(())
}

/// Strictly lower-triangular generator with subdiagonal `(j+1)_ψ`.
pub fn k_matrix(seq: &AdmissibleSequence, n: usize) -> Result<LowerTriMatrix> {
    require_size(n)?;
    LowerTriMatrix::try_from_fn(n, seq.domain(), |i, j| {
        if i == j + 1 {
            seq.psi_int(i)
        } else {
            Ok(seq.domain().zero())
        }
    })
}

/// `exp_ψ(x M) = Σ_{k<n} x^k M^k / k_ψ!` for strictly lower-triangular `M`.
pub fn psi_exp_nilpotent<E: Entry>(
    seq: &AdmissibleSequence,
    m: &LowerTriMatrix,
    x: &E,
) -> Result<LowerTriMatrix<E>> {
    if !m.is_strictly_lower() {
        return Err(Error::NotStrictlyLower);
    }
    let n = m.size();
    let d = seq.domain().join(m.domain()).join(x.domain());
    let x = x.lift_into(d)?;
    let mut power = LowerTriMatrix::<Scalar>::identity(n, d);
    let m = LowerTriMatrix::try_from_fn(n, d, |i, j| Ok(m.get(i, j).clone()))?;
    let mut out = LowerTriMatrix::<E>::zeros(n, d);
    let mut x_k = E::one_in(d);
    for k in 0..n {
        let inv_fact = d.lift(&seq.factorial(k)?)?.recip()?;
        let weight = x_k.scale(&inv_fact);
        for i in 0..n {
            for j in 0..=i {
                let c = power.get(i, j);
                if !c.is_zero() {
                    let updated = out.get(i, j).plus(&weight.scale(c));
                    out.set(i, j, updated);
                }
            }
        }
        power = power.matmul(&m)?;
        x_k = x_k.times(&x);
    }
    Ok(out)
}

/// `P_ψ[x]` from its entries `x^(i-j) binom_ψ(i, j)`.
pub fn pascal_closed<E: Entry>(seq: &AdmissibleSequence, n: usize, x: &E) -> Result<LowerTriMatrix<E>> {
    require_size(n)?;
    let d = seq.domain().join(x.domain());
    let x = x.lift_into(d)?;
    LowerTriMatrix::try_from_fn(n, d, |i, j| {
        let b = d.lift(&seq.binomial(i, j as i64)?)?;
        Ok(x.power((i - j) as u32).scale(&b))
    })
}

/// Symmetric Pascal matrix with entries `binom_ψ(i + j, i)`.
pub fn fermat(seq: &AdmissibleSequence, n: usize) -> Result<SquareMatrix> {
    require_size(n)?;
    SquareMatrix::try_from_fn(n, seq.domain(), |i, j| seq.binomial(i + j, i as i64))
}

/// `c_m = Σ_t binom_ψ(m, t) a_t b_(m-t)`.
pub fn binom_convolve(seq: &AdmissibleSequence, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { left: a.len(), right: b.len() });
    }
    let d = seq.domain();
    let a = a.iter().map(|s| d.lift(s)).collect::<Result<Vec<_>>>()?;
    let b = b.iter().map(|s| d.lift(s)).collect::<Result<Vec<_>>>()?;
    (0..a.len())
        .map(|m| {
            (0..=m).try_fold(d.zero(), |acc, t| {
                Ok(&acc + &(&(&seq.binomial(m, t as i64)? * &a[t]) * &b[m - t]))
            })
        })
        .collect()
}

/// Lower-triangular matrix `binom_ψ(i, j) a_(i-j)` with `a_0 = 1`.
///
/// `P_ψ[x]` is the case `a_k = x^k`. Products of such matrices stay in the
/// family even when `{P_ψ[x]}` itself does not close.
#[derive(Clone, Debug)]
pub struct GeneralizedPascal {
    seq: AdmissibleSequence,
    moments: Vec<Scalar>,
}

impl GeneralizedPascal {
    pub fn new(seq: &AdmissibleSequence, moments: Vec<Scalar>) -> Result<Self> {
        require_size(moments.len())?;
        let moments = moments
            .iter()
            .map(|s| seq.domain().lift(s))
            .collect::<Result<Vec<_>>>()?;
        if !moments[0].is_one() {
            return Err(Error::InvalidParams("moment a_0 must be 1".into()));
        }
        Ok(GeneralizedPascal { seq: seq.clone(), moments })
    }

    /// Moments `1, x, x^2, …`: the matrix `P_ψ[x]`.
    pub fn powers(seq: &AdmissibleSequence, x: &Scalar, n: usize) -> Result<Self> {
        let x = seq.domain().lift(x)?;
        Self::new(seq, (0..n).map(|k| x.pow(k as u32)).collect())
    }

    pub fn identity(seq: &AdmissibleSequence, n: usize) -> Result<Self> {
        let d = seq.domain();
        Self::new(seq, (0..n).map(|k| if k == 0 { d.one() } else { d.zero() }).collect())
    }

    pub fn moments(&self) -> &[Scalar] {
        &self.moments
    }

    pub fn size(&self) -> usize {
        self.moments.len()
    }

    pub fn to_matrix(&self) -> Result<LowerTriMatrix> {
        LowerTriMatrix::try_from_fn(self.size(), self.seq.domain(), |i, j| {
            Ok(&self.seq.binomial(i, j as i64)? * &self.moments[i - j])
        })
    }

    pub fn product(&self, rhs: &Self) -> Result<Self> {
        if self.seq.selector() != rhs.seq.selector() {
            return Err(Error::WrongSequenceKind(format!(
                "moment matrices over different sequences: {} and {}",
                self.seq.selector(),
                rhs.seq.selector()
            )));
        }
        let moments = binom_convolve(&self.seq, &self.moments, &rhs.moments)?;
        Self::new(&self.seq, moments)
    }

    /// Moments of the inverse, by forward substitution on the convolution.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.seq.domain();
        let mut inv: Vec<Scalar> = Vec::with_capacity(self.size());
        inv.push(d.one());
        for m in 1..self.size() {
            let mut acc = d.zero();
            for t in 1..=m {
                acc = &acc + &(&(&self.seq.binomial(m, t as i64)? * &self.moments[t]) * &inv[m - t]);
            }
            inv.push(-acc);
        }
        Self::new(&self.seq, inv)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductVariant {
    /// `P[1] P[1] = P[1 +_ψ 1]`.
    Sum,
    /// `P[1] P[-1] = P[1 -_ψ 1]`.
    Difference,
}

/// Compares `P[1] P[±1]` entrywise with `binom_ψ(i,j) (1 ±_ψ 1)^(i-j)`.
///
/// The product carries the sign `(-1)^(k-j)` inside the sum over `k`; the
/// closed side uses that convention.
pub fn check_product_identity(
    seq: &AdmissibleSequence,
    n: usize,
    variant: ProductVariant,
) -> Result<IdentityReport> {
    let d = seq.domain();
    let one = d.one();
    let y = match variant {
        ProductVariant::Sum => one.clone(),
        ProductVariant::Difference => -&one,
    };
    let id = match variant {
        ProductVariant::Sum => "eq4",
        ProductVariant::Difference => "eq5",
    };
    let mut report = ReportBuilder::new(id).param("sequence", seq.selector()).param("n", n);
    let product = pascal_closed(seq, n, &one)?.matmul(&pascal_closed(seq, n, &y)?)?;
    let sums: Vec<Scalar> = (0..n)
        .map(|m| psi_plus_power(seq, &one, &y, m))
        .collect::<Result<_>>()?;
    'cells: for i in 0..n {
        for j in 0..=i {
            let rhs = &seq.binomial(i, j as i64)? * &sums[i - j];
            if !report.compare(&[i as i64, j as i64], product.get(i, j), &rhs) {
                break 'cells;
            }
        }
    }
    Ok(report.finish())
}

/// Compares `P[1] P[1]^T` with the Fermat matrix. Holds for the classical
/// sequence; other sequences fail at `(1, 1)`.
pub fn check_transpose_fermat(seq: &AdmissibleSequence, n: usize) -> Result<IdentityReport> {
    let mut report = ReportBuilder::new("eq6").param("sequence", seq.selector()).param("n", n);
    let p = pascal_closed(seq, n, &seq.domain().one())?;
    let lhs = p.to_square().matmul(&p.transpose())?;
    let rhs = fermat(seq, n)?;
    'cells: for i in 0..n {
        for j in 0..n {
            if !report.compare(&[i as i64, j as i64], lhs.get(i, j), rhs.get(i, j)) {
                break 'cells;
            }
        }
    }
    Ok(report.finish())
}

fn q_base(seq: &AdmissibleSequence) -> Result<Scalar> {
    seq.q_base().ok_or_else(|| {
        Error::WrongSequenceKind(format!(
            "q-Cauchy identities need a q-Gaussian or classical sequence, got {}",
            seq.selector()
        ))
    })
}

/// `Σ_k q^((i-k)(j-k)) binom_q(i,k) binom_q(j,k) = binom_q(i+j, j)`.
pub fn check_weighted_cauchy(seq: &AdmissibleSequence, i: usize, j: usize) -> Result<IdentityReport> {
    let q = q_base(seq)?;
    let mut report = ReportBuilder::new("eq10")
        .param("sequence", seq.selector())
        .param("i", i)
        .param("j", j);
    let (lhs, rhs) = weighted_cauchy_sides(seq, &q, i, j)?;
    report.compare(&[i as i64, j as i64], &lhs, &rhs);
    Ok(report.finish())
}

pub(crate) fn weighted_cauchy_sides(
    seq: &AdmissibleSequence,
    q: &Scalar,
    i: usize,
    j: usize,
) -> Result<(Scalar, Scalar)> {
    let mut lhs = seq.domain().zero();
    for k in 0..=i.min(j) {
        let w = q.pow(((i - k) * (j - k)) as u32);
        lhs = &lhs + &(&(&w * &seq.binomial(i, k as i64)?) * &seq.binomial(j, k as i64)?);
    }
    Ok((lhs, seq.binomial(i + j, j as i64)?))
}

/// q-Vandermonde: `Σ_k q^((r-k)(j-k)) binom_q(r,k) binom_q(s,j-k) = binom_q(r+s, j)`.
pub fn check_q_vandermonde(
    seq: &AdmissibleSequence,
    r: usize,
    s: usize,
    j: usize,
) -> Result<IdentityReport> {
    let q = q_base(seq)?;
    let mut report = ReportBuilder::new("eq9")
        .param("sequence", seq.selector())
        .param("r", r)
        .param("s", s)
        .param("j", j);
    let (lhs, rhs) = q_vandermonde_sides(seq, &q, r, s, j)?;
    report.compare(&[r as i64, s as i64, j as i64], &lhs, &rhs);
    Ok(report.finish())
}

pub(crate) fn q_vandermonde_sides(
    seq: &AdmissibleSequence,
    q: &Scalar,
    r: usize,
    s: usize,
    j: usize,
) -> Result<(Scalar, Scalar)> {
    let mut lhs = seq.domain().zero();
    for k in 0..=r.min(j) {
        let w = q.pow(((r - k) * (j - k)) as u32);
        let term = &(&w * &seq.binomial(r, k as i64)?) * &seq.binomial(s, j as i64 - k as i64)?;
        lhs = &lhs + &term;
    }
    Ok((lhs, seq.binomial(r + s, j as i64)?))
}

/// Compares `P[x] P[y]` with `binom_ψ(i,j) (x +_ψ y)^(i-j)`.
pub fn check_semigroup(
    seq: &AdmissibleSequence,
    n: usize,
    x: &Scalar,
    y: &Scalar,
) -> Result<IdentityReport> {
    let d = seq.domain();
    let (x, y) = (d.lift(x)?, d.lift(y)?);
    let mut report = ReportBuilder::new("semigroup")
        .param("sequence", seq.selector())
        .param("n", n)
        .param("x", &x)
        .param("y", &y);
    let product = pascal_closed(seq, n, &x)?.matmul(&pascal_closed(seq, n, &y)?)?;
    let sums: Vec<Scalar> = (0..n)
        .map(|m| psi_plus_power(seq, &x, &y, m))
        .collect::<Result<_>>()?;
    'cells: for i in 0..n {
        for j in 0..=i {
            let rhs = &seq.binomial(i, j as i64)? * &sums[i - j];
            if !report.compare(&[i as i64, j as i64], product.get(i, j), &rhs) {
                break 'cells;
            }
        }
    }
    Ok(report.finish())
}

/// Compares the series `exp_ψ(x K_ψ)` with the closed form of `P_ψ[x]`.
pub fn check_exp_vs_closed<E: Entry>(
    seq: &AdmissibleSequence,
    n: usize,
    x: &E,
) -> Result<IdentityReport> {
    let mut report = ReportBuilder::new("exp-vs-closed")
        .param("sequence", seq.selector())
        .param("n", n)
        .param("x", x);
    let series = psi_exp_nilpotent(seq, &k_matrix(seq, n)?, x)?;
    let closed = pascal_closed(seq, n, x)?;
    'cells: for i in 0..n {
        for j in 0..=i {
            if !report.compare(&[i as i64, j as i64], series.get(i, j), closed.get(i, j)) {
                break 'cells;
            }
        }
    }
    Ok(report.finish())
}

/// `K_ψ^n = 0` and `K_ψ^(n-1) ≠ 0` for every size `1..=n`.
pub fn check_nilpotent(seq: &AdmissibleSequence, n: usize) -> Result<IdentityReport> {
    let mut report = ReportBuilder::new("nilpotent").param("sequence", seq.selector()).param("n", n);
    for size in 1..=n {
        let k = k_matrix(seq, size)?;
        let below = k.pow(size as u32 - 1);
        let at = below.matmul(&k)?;
        let holds = at.is_zero() && !below.is_zero();
        let describe = |m: &LowerTriMatrix| if m.is_zero() { "zero" } else { "nonzero" };
        let lhs = format!("K^{}={} K^{}={}", size - 1, describe(&below), size, describe(&at));
        let rhs = format!("K^{}=nonzero K^{}=zero", size - 1, size);
        if !report.compare(&[size as i64], &holds, &true) {
            // keep the readable description on the counterexample
            let mut r = report.finish();
            if let Some(cx) = r.counterexample.as_mut() {
                cx.lhs = lhs;
                cx.rhs = rhs;
            }
            return Ok(r);
        }
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Polynomial;
    use crate::scalar::Domain;
    use crate::scalar::{rational, QPoly, RationalFunction};

    fn ints(row: &[Scalar]) -> Vec<String> {
        row.iter().map(Scalar::to_string).collect()
    }

    #[test]
    fn k_matrices() {
        let k = k_matrix(&AdmissibleSequence::classical(), 3).unwrap();
        assert_eq!((k.get(1, 0), k.get(2, 1)), (&1.into(), &2.into()));
        let kf = k_matrix(&AdmissibleSequence::fibonomial(), 4).unwrap();
        let sub: Vec<Scalar> = (1..4).map(|i| kf.get(i, i - 1).clone()).collect();
        assert_eq!(sub, vec![1.into(), 1.into(), 2.into()]);
        assert!(k_matrix(&AdmissibleSequence::classical(), 1).unwrap().is_zero());
        assert!(k_matrix(&AdmissibleSequence::classical(), 0).is_err());
    }

    #[test]
    fn exp_series_examples() {
        let c = AdmissibleSequence::classical();
        let p = psi_exp_nilpotent(&c, &k_matrix(&c, 3).unwrap(), &Scalar::from(1)).unwrap();
        assert_eq!(ints(p.row(2)), ["1", "2", "1"]);
        let p0 = psi_exp_nilpotent(&c, &k_matrix(&c, 4).unwrap(), &Scalar::from(0)).unwrap();
        assert_eq!(p0, LowerTriMatrix::identity(4, Domain::Rational));
        let one = psi_exp_nilpotent(&c, &k_matrix(&c, 1).unwrap(), &Scalar::from(5)).unwrap();
        assert_eq!(one.get(0, 0), &Scalar::from(1));
        let not_strict = LowerTriMatrix::<Scalar>::identity(2, Domain::Rational);
        assert_eq!(psi_exp_nilpotent(&c, &not_strict, &Scalar::from(1)), Err(Error::NotStrictlyLower));
    }

    #[test]
    fn closed_form_rows() {
        let x = Polynomial::x(Domain::Rational);
        let p = pascal_closed(&AdmissibleSequence::classical(), 3, &x).unwrap();
        let row: Vec<String> = p.row(2).iter().map(|e| e.to_string()).collect();
        assert_eq!(row, ["x^2", "2*x", "1"]);
        let f = pascal_closed(&AdmissibleSequence::fibonomial(), 5, &Scalar::from(1)).unwrap();
        assert_eq!(ints(f.row(4)), ["1", "3", "6", "3", "1"]);
        let z = pascal_closed(&AdmissibleSequence::fibonomial(), 3, &Scalar::from(0)).unwrap();
        assert_eq!(z, LowerTriMatrix::identity(3, Domain::Rational));
    }

    #[test]
    fn fermat_matrices() {
        let f = fermat(&AdmissibleSequence::classical(), 3).unwrap();
        assert_eq!(ints(f.row(2)), ["1", "3", "6"]);
        assert_eq!(ints(f.row(1)), ["1", "2", "3"]);
        let fq = fermat(&AdmissibleSequence::q_symbolic(), 2).unwrap();
        let one_plus_q = Scalar::Fun(RationalFunction::from_poly(QPoly::from_i64s(&[1, 1])));
        assert_eq!(fq.get(1, 1), &one_plus_q);
        assert!(fq.get(0, 0).is_one());
    }

    #[test]
    fn moment_products() {
        let f = AdmissibleSequence::fibonomial();
        let x = Scalar::Rat(rational(2, 5));
        let y = Scalar::Rat(rational(-3, 4));
        let a = GeneralizedPascal::powers(&f, &x, 6).unwrap();
        let b = GeneralizedPascal::powers(&f, &y, 6).unwrap();
        let ab = a.product(&b).unwrap();
        for m in 0..6 {
            assert_eq!(ab.moments()[m], psi_plus_power(&f, &x, &y, m).unwrap());
        }
        assert_eq!(ab.to_matrix().unwrap(), a.to_matrix().unwrap().matmul(&b.to_matrix().unwrap()).unwrap());
        let id = GeneralizedPascal::identity(&f, 6).unwrap();
        assert_eq!(a.product(&id).unwrap().moments(), a.moments());
        let inv = a.inverse().unwrap();
        assert_eq!(a.product(&inv).unwrap().moments(), id.moments());

        let one = GeneralizedPascal::powers(&f, &1.into(), 5).unwrap();
        let minus = GeneralizedPascal::powers(&f, &(-1).into(), 5).unwrap();
        let c = one.product(&minus).unwrap();
        assert_eq!(ints(c.moments()), ["1", "0", "1", "0", "2"]);
    }

    #[test]
    fn product_identity_examples() {
        let c = AdmissibleSequence::classical();
        let p1 = pascal_closed(&c, 4, &Scalar::from(1)).unwrap();
        assert_eq!(p1.matmul(&p1).unwrap().get(3, 1), &Scalar::from(12));
        assert!(check_product_identity(&c, 8, ProductVariant::Sum).unwrap().passed());
        assert!(check_product_identity(&c, 8, ProductVariant::Difference).unwrap().passed());
        let p_minus = pascal_closed(&c, 6, &Scalar::from(-1)).unwrap();
        let prod = pascal_closed(&c, 6, &Scalar::from(1)).unwrap().matmul(&p_minus).unwrap();
        assert_eq!(prod, LowerTriMatrix::identity(6, Domain::Rational));

        let f = AdmissibleSequence::fibonomial();
        assert!(check_product_identity(&f, 8, ProductVariant::Difference).unwrap().passed());
        let pf = pascal_closed(&f, 3, &Scalar::from(1)).unwrap();
        let prod = pf.matmul(&pascal_closed(&f, 3, &Scalar::from(-1)).unwrap()).unwrap();
        assert_eq!(prod.get(2, 0), &Scalar::from(1));
    }

    #[test]
    fn transpose_fermat_findings() {
        assert!(check_transpose_fermat(&AdmissibleSequence::classical(), 5).unwrap().passed());
        let q = check_transpose_fermat(&AdmissibleSequence::q_symbolic(), 2).unwrap();
        let cx = q.counterexample.unwrap();
        assert_eq!((cx.index, cx.lhs.as_str(), cx.rhs.as_str()), (vec![1, 1], "(2)/(1)", "(1 + q)/(1)"));
        let f = check_transpose_fermat(&AdmissibleSequence::fibonomial(), 2).unwrap();
        let cx = f.counterexample.unwrap();
        assert_eq!((cx.index, cx.lhs.as_str(), cx.rhs.as_str()), (vec![1, 1], "2", "1"));
    }

    #[test]
    fn cauchy_examples() {
        let q = AdmissibleSequence::q_symbolic();
        let r = check_weighted_cauchy(&q, 1, 1).unwrap();
        assert_eq!(r.values.unwrap().lhs, "(1 + q)/(1)");
        assert!(check_weighted_cauchy(&q, 0, 5).unwrap().passed());
        assert!(check_weighted_cauchy(&AdmissibleSequence::classical(), 4, 3).unwrap().passed());
        assert!(check_q_vandermonde(&q, 3, 2, 2).unwrap().passed());
        assert!(matches!(
            check_weighted_cauchy(&AdmissibleSequence::fibonomial(), 1, 1),
            Err(Error::WrongSequenceKind(_))
        ));
    }

    #[test]
    fn nilpotency() {
        let r = check_nilpotent(&AdmissibleSequence::fibonomial(), 8).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 8);
    }
}
