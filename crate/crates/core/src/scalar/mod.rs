//! Exact scalars: arbitrary-precision rationals and rational functions in a
//! single indeterminate `q`.
//!
//! Values of the two domains never mix implicitly. The std operator impls
//! panic on a domain mismatch; [`field_arith`] is the checked entry point.
//! A rational lifts into the rational-function domain through
//! [`Domain::lift`].

mod parse;
mod qpoly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use parse::{parse_rational, scalar_parse};
pub use qpoly::QPoly;
pub use ratfunc::RationalFunction;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    Rational,
    RationalFunction,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Rational => "rational",
            Domain::RationalFunction => "rational-function",
        })
    }
}

impl Domain {
    pub fn zero(self) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rat(Rational::zero()),
            Domain::RationalFunction => Scalar::Fun(RationalFunction::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, n: i64) -> Scalar {
        self.from_rational(integer(n))
    }

    pub fn from_rational(self, r: Rational) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rat(r),
            Domain::RationalFunction => Scalar::Fun(RationalFunction::constant(r)),
        }
    }

    /// Moves `s` into this domain. Rationals embed as constants; a
    /// rational function only lifts into the rational domain when it is
    /// constant.
    pub fn lift(self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (Domain::Rational, Scalar::Rat(_)) | (Domain::RationalFunction, Scalar::Fun(_)) => {
                Ok(s.clone())
            }
            (Domain::RationalFunction, Scalar::Rat(r)) => {
                Ok(Scalar::Fun(RationalFunction::constant(r.clone())))
            }
            (Domain::Rational, Scalar::Fun(f)) => f.as_constant().map(Scalar::Rat).ok_or(
                Error::DomainMismatch { expected: Domain::Rational, found: Domain::RationalFunction },
            ),
        }
    }

    /// Wider of two domains.
    pub fn join(self, other: Domain) -> Domain {
        if self == Domain::RationalFunction || other == Domain::RationalFunction {
            Domain::RationalFunction
        } else {
            Domain::Rational
        }
    }
}

/// An element of one of the two exact fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Fun(RationalFunction),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic: rejects domain mismatches and division by
/// zero.
pub fn field_arith(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar> {
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch { expected: a.domain(), found: b.domain() });
    }
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

impl Scalar {
    pub fn q() -> Self {
        Scalar::Fun(RationalFunction::q())
    }

    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rat(_) => Domain::Rational,
            Scalar::Fun(_) => Domain::RationalFunction,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fun(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fun(f) => f.is_one(),
        }
    }

    /// True for integers and for polynomials in `q`: the value has
    /// denominator 1 after normalization.
    pub fn has_unit_denominator(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_integer(),
            Scalar::Fun(f) => f.is_polynomial(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Fun(_) => None,
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a / b)),
            (Scalar::Fun(a), Scalar::Fun(b)) => Ok(Scalar::Fun(a.div(b)?)),
            _ => Err(Error::DomainMismatch { expected: self.domain(), found: rhs.domain() }),
        }
    }

    pub fn recip(&self) -> Result<Scalar> {
        self.domain().one().checked_div(self)
    }

    /// `self^e`, with `0^0 = 1`.
    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(num_traits::pow(r.clone(), e as usize)),
            Scalar::Fun(f) => Scalar::Fun(f.pow(e)),
        }
    }

    /// `(-1)^e * self`.
    pub fn signed(&self, e: usize) -> Scalar {
        if e.is_multiple_of(2) {
            self.clone()
        } else {
            -self
        }
    }

    /// Substitutes `q := at`. Rationals are returned unchanged.
    pub fn eval_at(&self, at: &Rational) -> Result<Rational> {
        match self {
            Scalar::Rat(r) => Ok(r.clone()),
            Scalar::Fun(f) => f.eval(at),
        }
    }

    /// Canonical text form, the inverse of [`scalar_parse`].
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", r),
            Scalar::Fun(r) => write!(f, "{}", r),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Rat(integer(n))
    }
}

impl From<RationalFunction> for Scalar {
    fn from(f: RationalFunction) -> Self {
        Scalar::Fun(f)
    }
}

fn mismatch(op: &str, a: &Scalar, b: &Scalar) -> ! {
    panic!("{op} across field domains: {} and {}", a.domain(), b.domain())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fun(a), Scalar::Fun(b)) => Scalar::Fun(a.add(b)),
            _ => mismatch("add", self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Fun(a), Scalar::Fun(b)) => Scalar::Fun(a.sub(b)),
            _ => mismatch("sub", self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fun(a), Scalar::Fun(b)) => Scalar::Fun(a.mul(b)),
            _ => mismatch("mul", self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fun(a) => Scalar::Fun(a.neg()),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
