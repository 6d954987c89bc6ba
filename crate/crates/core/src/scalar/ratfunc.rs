use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// Element of Q(q) kept in lowest terms with a monic denominator.
///
/// Because the representation is canonical, structural equality is field
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: QPoly,
    den: QPoly,
}

impl RationalFunction {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn zero() -> Self {
        RationalFunction { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn q() -> Self {
        Self::from_poly(QPoly::q())
    }

    pub fn from_poly(num: QPoly) -> Self {
        RationalFunction { num, den: QPoly::one() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, when this is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.constant_term())
    }

    fn normalized(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.constant_term().recip();
            return Self::from_poly(num.scale(&inv));
        }
        if let Some(quot) = num.exact_div(&den) {
            return Self::from_poly(quot);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc_inv = den.leading().expect("nonzero denominator").recip();
        RationalFunction { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    /// Re-runs normalization; the identity on canonical values.
    pub fn renormalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::normalized(num, &self.den * &rhs.den)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        Self::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn eval(&self, at: &BigRational) -> Result<BigRational> {
        let den = self.den.eval(at);
        if den.is_zero() {
            return Err(Error::Pole { at: at.to_string() });
        }
        Ok(self.num.eval(at) / den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        self.num.write_in("q", f)?;
        f.write_str(")/(")?;
        self.den.write_in("q", f)?;
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_i64s(cs)
    }

    #[test]
    fn q_integer_quotient_collapses_to_polynomial() {
        let r = RationalFunction::new(p(&[1, 0, -1]), p(&[1, -1])).unwrap();
        assert_eq!(r, RationalFunction::from_poly(p(&[1, 1])));
        assert_eq!(r.to_string(), "(1 + q)/(1)");
    }

    #[test]
    fn reduces_common_factor_and_makes_denominator_monic() {
        // (2 + 2q) / (2 - 2q^2) = 1 / (1 - q) = -1 / (q - 1)
        let r = RationalFunction::new(p(&[2, 2]), p(&[2, 0, -2])).unwrap();
        assert_eq!(r.numer(), &p(&[-1]));
        assert_eq!(r.denom(), &p(&[-1, 1]));
        assert_eq!(r.renormalize(), r);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RationalFunction::new(p(&[1]), QPoly::zero()), Err(Error::DivisionByZero));
        assert_eq!(RationalFunction::zero().recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn pole_reported() {
        let r = RationalFunction::new(p(&[1]), p(&[1, -1])).unwrap();
        let one = BigRational::one();
        assert_eq!(r.eval(&one), Err(Error::Pole { at: "1".into() }));
    }
}
