use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{PolyError, TermJson};
use crate::interval::RatInterval;
use crate::rational::{int, sign_of, Rational};

/// Dense univariate polynomial, coefficients in ascending degree, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Highest-degree coefficient first, as polynomials are usually written.
    pub fn from_ints_descending(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().rev().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), int(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign_of(&self.eval(x))
    }

    /// Horner enclosure of the range over an interval.
    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        self.coeffs
            .iter()
            .rev()
            .fold(RatInterval::point(Rational::zero()), |acc, c| {
                acc * x.clone() + RatInterval::point(c.clone())
            })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::rational::to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn neg(&self) -> UniPoly {
        self.scale(&int(-1))
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        (0..k).fold(UniPoly::constant(int(1)), |acc, _| acc.mul(self))
    }

    /// `self(x) -> self(q(x))`.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        self.coeffs.iter().rev().fold(UniPoly::zero(), |acc, c| {
            acc.mul(q).add(&UniPoly::constant(c.clone()))
        })
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading_coefficient();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(q), UniPoly::new(rem))
    }

    pub fn divide_exact(&self, d: &UniPoly) -> Result<UniPoly, PolyError> {
        if d.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// Positive rational making the coefficients coprime integers.
    pub fn content(&self) -> Rational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in &self.coeffs {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            Rational::zero()
        } else {
            Rational::new(g, l)
        }
    }

    /// `self / content()`; sign unchanged.
    pub fn primitive_part(&self) -> UniPoly {
        let c = self.content();
        if c.is_zero() {
            self.clone()
        } else {
            self.scale(&c.recip())
        }
    }

    /// Integer coefficients, when all coefficients are integers.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divide_exact(&g).expect("gcd divides").monic()
    }

    /// Yun's algorithm: `self = lc * prod f_i^{m_i}` with the `f_i` monic,
    /// squarefree and pairwise coprime. Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.divide_exact(&a0).expect("gcd divides");
        let mut c = fp.divide_exact(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut m = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), m));
            }
            b = b.divide_exact(&a).expect("gcd divides");
            c = d.divide_exact(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            m += 1;
        }
        out
    }

    /// Every real root has absolute value strictly below this bound.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.leading_coefficient().abs();
        let n = self.coeffs.len().saturating_sub(1);
        let m = self.coeffs[..n]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + int(1)
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| TermJson {
                exponents: vec![d as u32],
                coeff: c.into(),
            })
            .collect()
    }

    pub fn from_json(terms: &[TermJson]) -> Result<UniPoly, PolyError> {
        let mut coeffs = Vec::new();
        for t in terms {
            let [d] = t.exponents[..] else {
                return Err(PolyError::Json("univariate term needs one exponent".into()));
            };
            let d = d as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Rational::zero());
            }
            coeffs[d] += t.coeff.to_rational().map_err(PolyError::Json)?;
        }
        Ok(UniPoly::new(coeffs))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if d == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn division() {
        let p = UniPoly::from_ints(&[-1, 0, 0, 1]);
        let (q, r) = p.div_rem(&UniPoly::from_ints(&[-1, 1]));
        assert_eq!(q, UniPoly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
        let (_, r) = p.div_rem(&UniPoly::from_ints(&[0, 0, 2]));
        assert_eq!(r, UniPoly::from_ints(&[-1]));
    }

    #[test]
    fn yun_decomposition() {
        // (x - 1)^2 (x + 3)
        let p = UniPoly::from_ints(&[-1, 1])
            .pow(2)
            .mul(&UniPoly::from_ints(&[3, 1]));
        let d = p.squarefree_decomposition();
        assert_eq!(
            d,
            vec![
                (UniPoly::from_ints(&[3, 1]), 1),
                (UniPoly::from_ints(&[-1, 1]), 2)
            ]
        );
        assert_eq!(p.squarefree_part(), UniPoly::from_ints(&[-3, 2, 1]));
    }

    #[test]
    fn gcd_monic() {
        let a = UniPoly::from_ints(&[-2, 0, 2]);
        let b = UniPoly::from_ints(&[2, 2]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn interval_enclosure_contains_values() {
        let p = UniPoly::from_ints(&[1, -3, 0, 2]);
        let x = RatInterval::new(rat(-1, 2), rat(3, 4));
        let e = p.eval_interval(&x);
        for i in 0..=20 {
            let t = rat(-1, 2) + rat(5 * i, 80);
            assert!(e.contains(&p.eval(&t)));
        }
    }

    #[test]
    fn cauchy_bound_holds() {
        let p = UniPoly::from_ints(&[-6, 11, -6, 1]);
        assert!(p.cauchy_bound() > int(3));
    }

    #[test]
    fn json_round_trip() {
        let p = UniPoly::new(vec![rat(1, 3), int(0), rat(-5, 2)]);
        assert_eq!(UniPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn display_descending() {
        assert_eq!(UniPoly::from_ints(&[-2, 0, 1]).to_string(), "x^2 - 2");
    }
}
