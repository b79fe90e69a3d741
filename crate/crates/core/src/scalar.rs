//! The field-like values the Ricci formulas are evaluated over.
//!
//! The closed forms are written once, generically, and evaluated over exact
//! rationals, doubles (Newton solver), rational intervals (certificates) and
//! rational functions (symbolic derivation of the Einstein system).

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::rational::{rat, Rational};
use num_traits::Signed;

pub trait Scalar:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    /// `Some(true)` when the value is known to be strictly positive,
    /// `Some(false)` when it is known not to be, `None` for symbolic values.
    fn certainly_positive(&self) -> Option<bool> {
        None
    }

    fn recip(self) -> Self {
        Self::from_int(1) / self
    }

    fn square(self) -> Self {
        self.clone() * self
    }
}

impl Scalar for Rational {
    fn from_ratio(num: i64, den: i64) -> Self {
        rat(num, den)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn certainly_positive(&self) -> Option<bool> {
        Some(self.is_positive())
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &Rational) -> Self {
        crate::rational::to_f64(r)
    }

    fn certainly_positive(&self) -> Option<bool> {
        Some(self.is_finite() && *self > 0.0)
    }
}
