//! Closed intervals with exact rational endpoints.
//!
//! Every operation returns an enclosure of the exact image, so a property
//! shown for the interval holds for every point inside it. Division requires
//! a divisor interval that excludes zero; callers establish positivity first.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::rational::{dyadic_ceil, dyadic_floor, int, Rational};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        RatInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    /// Largest absolute value attained on the interval.
    pub fn magnitude(&self) -> Rational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn is_disjoint(&self, other: &RatInterval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    pub fn hull(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Widens the endpoints outward to multiples of `2^-bits`, bounding
    /// the size of the endpoint numbers in long computations.
    pub fn outward(&self, bits: u32) -> RatInterval {
        RatInterval {
            lo: dyadic_floor(&self.lo, bits),
            hi: dyadic_ceil(&self.hi, bits),
        }
    }

    pub fn powi(&self, e: u32) -> RatInterval {
        let mut acc = RatInterval::point(int(1));
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for RatInterval {
    type Output = RatInterval;
    fn add(self, o: RatInterval) -> RatInterval {
        RatInterval {
            lo: self.lo + o.lo,
            hi: self.hi + o.hi,
        }
    }
}

impl Sub for RatInterval {
    type Output = RatInterval;
    fn sub(self, o: RatInterval) -> RatInterval {
        RatInterval {
            lo: self.lo - o.hi,
            hi: self.hi - o.lo,
        }
    }
}

impl Neg for RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        RatInterval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for RatInterval {
    type Output = RatInterval;
    fn mul(self, o: RatInterval) -> RatInterval {
        if self.is_point() && o.is_point() {
            return RatInterval::point(self.lo * o.lo);
        }
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }
}

impl Div for RatInterval {
    type Output = RatInterval;
    fn div(self, o: RatInterval) -> RatInterval {
        assert!(
            !o.contains_zero(),
            "interval division by an interval containing zero: {o}"
        );
        let inv = RatInterval {
            lo: o.hi.recip(),
            hi: o.lo.recip(),
        };
        self * inv
    }
}

impl Scalar for RatInterval {
    fn from_ratio(num: i64, den: i64) -> Self {
        RatInterval::point(crate::rational::rat(num, den))
    }

    fn from_rational(r: &Rational) -> Self {
        RatInterval::point(r.clone())
    }

    fn certainly_positive(&self) -> Option<bool> {
        Some(self.is_positive())
    }
}
