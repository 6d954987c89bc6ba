//! Exact matrices over scalars or over polynomials in `x`.
//!
//! Entries are generic so that the same code builds `P_ψ[x]` at a
//! numeric `x` (entries are [`Scalar`]) and at a symbolic `x` (entries are
//! [`Polynomial`]).

mod format;
mod pascal;

use std::fmt;

pub use format::{MatrixDocument, MatrixKind};
pub use pascal::{
    binom_convolve, check_exp_vs_closed, check_nilpotent, check_product_identity,
    check_q_vandermonde, check_semigroup, check_transpose_fermat, check_weighted_cauchy, fermat,
    k_matrix, pascal_closed, psi_exp_nilpotent, GeneralizedPascal, ProductVariant,
};
pub(crate) use pascal::{q_vandermonde_sides, weighted_cauchy_sides};

use crate::calculus::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar};

/// Ring operations a matrix entry needs, plus scaling by field scalars.
pub trait Entry: Clone + PartialEq + fmt::Display + Send + Sync {
    fn zero_in(domain: Domain) -> Self;
    fn one_in(domain: Domain) -> Self;
    fn domain(&self) -> Domain;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn lift_into(&self, domain: Domain) -> Result<Self>;
    fn latex(&self) -> String;

    fn power(&self, e: u32) -> Self {
        (0..e).fold(Self::one_in(self.domain()), |acc, _| acc.times(self))
    }
}

impl Entry for Scalar {
    fn zero_in(domain: Domain) -> Self {
        domain.zero()
    }
    fn one_in(domain: Domain) -> Self {
        domain.one()
    }
    fn domain(&self) -> Domain {
        Scalar::domain(self)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Scalar) -> Self {
        self * c
    }
    fn lift_into(&self, domain: Domain) -> Result<Self> {
        domain.lift(self)
    }
    fn latex(&self) -> String {
        format::scalar_latex(self)
    }
    fn power(&self, e: u32) -> Self {
        self.pow(e)
    }
}

impl Entry for Polynomial {
    fn zero_in(domain: Domain) -> Self {
        Polynomial::zero(domain)
    }
    fn one_in(domain: Domain) -> Self {
        Polynomial::constant(domain.one())
    }
    fn domain(&self) -> Domain {
        Polynomial::domain(self)
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, c: &Scalar) -> Self {
        Polynomial::scale(self, c)
    }
    fn lift_into(&self, domain: Domain) -> Result<Self> {
        self.lift(domain)
    }
    fn latex(&self) -> String {
        format::polynomial_latex(self)
    }
    fn power(&self, e: u32) -> Self {
        self.pow(e)
    }
}

/// `n × n` lower-triangular matrix; only `j <= i` is stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerTriMatrix<E: Entry = Scalar> {
    n: usize,
    domain: Domain,
    data: Vec<E>,
    zero: E,
}

fn packed(i: usize, j: usize) -> usize {
    i * (i + 1) / 2 + j
}

impl<E: Entry> LowerTriMatrix<E> {
    pub fn zeros(n: usize, domain: Domain) -> Self {
        LowerTriMatrix {
            n,
            domain,
            data: vec![E::zero_in(domain); n * (n + 1) / 2],
            zero: E::zero_in(domain),
        }
    }

    pub fn identity(n: usize, domain: Domain) -> Self {
        let mut m = Self::zeros(n, domain);
        for i in 0..n {
            m.data[packed(i, i)] = E::one_in(domain);
        }
        m
    }

    /// Fills `(i, j)` for `j <= i` in row-major order.
    pub fn try_from_fn(
        n: usize,
        domain: Domain,
        mut f: impl FnMut(usize, usize) -> Result<E>,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in 0..=i {
                data.push(f(i, j)?.lift_into(domain)?);
            }
        }
        Ok(LowerTriMatrix { n, domain, data, zero: E::zero_in(domain) })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of bounds for size {}", self.n);
        if j > i {
            &self.zero
        } else {
            &self.data[packed(i, j)]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        assert!(j <= i && i < self.n, "({i}, {j}) is not a lower-triangular cell");
        self.data[packed(i, j)] = value;
    }

    /// Stored part of row `i`: columns `0..=i`.
    pub fn row(&self, i: usize) -> &[E] {
        &self.data[packed(i, 0)..=packed(i, i)]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Entry::is_zero)
    }

    pub fn is_strictly_lower(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_zero())
    }

    fn check_compatible<F: Entry>(&self, rhs: &LowerTriMatrix<F>) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch { left: self.n, right: rhs.n });
        }
        if self.domain != rhs.domain {
            return Err(Error::DomainMismatch { expected: self.domain, found: rhs.domain });
        }
        Ok(())
    }

    /// Product of two lower-triangular matrices, again lower-triangular.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let mut out = Self::zeros(self.n, self.domain);
        for i in 0..self.n {
            for j in 0..=i {
                let mut acc = E::zero_in(self.domain);
                for k in j..=i {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                out.data[packed(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::identity(self.n, self.domain);
        for _ in 0..e {
            out = out.matmul(self).expect("same shape");
        }
        out
    }

    pub fn to_square(&self) -> SquareMatrix<E> {
        SquareMatrix::from_fn(self.n, self.domain, |i, j| self.get(i, j).clone())
    }

    /// The transpose, which is upper-triangular and so stored densely.
    pub fn transpose(&self) -> SquareMatrix<E> {
        SquareMatrix::from_fn(self.n, self.domain, |i, j| self.get(j, i).clone())
    }
}

/// Dense `n × n` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<E: Entry = Scalar> {
    n: usize,
    domain: Domain,
    data: Vec<E>,
}

impl<E: Entry> SquareMatrix<E> {
    pub fn from_fn(n: usize, domain: Domain, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        SquareMatrix { n, domain, data }
    }

    pub fn try_from_fn(
        n: usize,
        domain: Domain,
        mut f: impl FnMut(usize, usize) -> Result<E>,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j)?.lift_into(domain)?);
            }
        }
        Ok(SquareMatrix { n, domain, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch { left: self.n, right: rhs.n });
        }
        if self.domain != rhs.domain {
            return Err(Error::DomainMismatch { expected: self.domain, found: rhs.domain });
        }
        Ok(Self::from_fn(self.n, self.domain, |i, j| {
            (0..self.n).fold(E::zero_in(self.domain), |acc, k| {
                let (a, b) = (self.get(i, k), rhs.get(k, j));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc.plus(&a.times(b))
                }
            })
        }))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.domain, |i, j| self.get(j, i).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lower(rows: &[&[i64]]) -> LowerTriMatrix {
        LowerTriMatrix::try_from_fn(rows.len(), Domain::Rational, |i, j| Ok(rows[i][j].into()))
            .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = lower(&[&[1], &[2, 3], &[4, 5, 6]]);
        let id = LowerTriMatrix::identity(3, Domain::Rational);
        assert_eq!(id.matmul(&a).unwrap(), a);
        assert_eq!(a.matmul(&id).unwrap(), a);
    }

    #[test]
    fn product_and_transpose() {
        let a = lower(&[&[1], &[1, 1], &[1, 2, 1]]);
        let sq = a.matmul(&a).unwrap();
        assert_eq!(sq.row(2), &[4.into(), 4.into(), 1.into()]);
        let t = a.transpose();
        assert_eq!(t.transpose(), a.to_square());
        assert_eq!(t.get(0, 2), &Scalar::from(1));
        assert_eq!(t.get(2, 0), &Scalar::from(0));
    }

    #[test]
    fn mismatches_rejected() {
        let a = lower(&[&[1], &[1, 1]]);
        let b = LowerTriMatrix::<Scalar>::identity(3, Domain::Rational);
        assert_eq!(a.matmul(&b), Err(Error::SizeMismatch { left: 2, right: 3 }));
        let c = LowerTriMatrix::<Scalar>::identity(2, Domain::RationalFunction);
        assert!(matches!(a.matmul(&c), Err(Error::DomainMismatch { .. })));
    }
}
