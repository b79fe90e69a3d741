use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{PolyError, UniPoly};
use crate::rational::{int, Rational, RationalJson};
use crate::scalar::Scalar;

/// Polynomial in named variables with exact rational coefficients. Zero
/// coefficients are never stored.
///
/// A polynomial over an empty variable list is a plain constant and
/// combines with polynomials over any variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    #[serde(flatten)]
    pub coeff: RationalJson,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    /// Constant over the empty variable list.
    pub fn scalar(c: Rational) -> Self {
        Self::constant(&[], c)
    }

    /// The variable `name` as a polynomial over `vars`.
    pub fn var(vars: &[&str], name: &str) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        let i = p.index_of(name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        p.terms.insert(e, int(1));
        Ok(p)
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms(
        vars: &[&str],
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(PolyError::Json(format!(
                    "exponent vector {e:?} does not match {} variables",
                    vars.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, name: &str) -> Result<Option<u32>, PolyError> {
        let i = self.index_of(name)?;
        Ok(self.terms.keys().map(|e| e[i]).max())
    }

    /// Coefficient of `name^d`, as a polynomial over the same variables.
    pub fn coefficient_in(&self, name: &str, d: u32) -> Result<MultiPoly, PolyError> {
        let i = self.index_of(name)?;
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[i] == d {
                let mut e2 = e.clone();
                e2[i] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        Ok(out)
    }

    /// Leading term in lexicographic order of exponent vectors.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    fn aligned(&self, other: &MultiPoly) -> Result<(MultiPoly, MultiPoly), PolyError> {
        if self.vars == other.vars {
            return Ok((self.clone(), other.clone()));
        }
        if self.vars.is_empty() {
            return Ok((self.lift(&other.vars), other.clone()));
        }
        if other.vars.is_empty() {
            return Ok((self.clone(), other.lift(&self.vars)));
        }
        Err(PolyError::VariableMismatch(
            self.vars.clone(),
            other.vars.clone(),
        ))
    }

    fn lift(&self, vars: &[String]) -> MultiPoly {
        debug_assert!(self.vars.is_empty());
        MultiPoly {
            vars: vars.to_vec(),
            terms: self
                .terms
                .values()
                .map(|c| (vec![0; vars.len()], c.clone()))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let (mut a, b) = self.aligned(other)?;
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        Ok(a)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let (a, b) = self.aligned(other)?;
        let mut out = MultiPoly {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(
            &self.vars.iter().map(String::as_str).collect::<Vec<_>>(),
            int(1),
        );
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Replaces `name` by `value`, a polynomial over the same variables.
    pub fn compose(&self, name: &str, value: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let i = self.index_of(name)?;
        let (_, value) = self.aligned(value)?;
        let deg = self.degree_in(name)?.unwrap_or(0);
        let powers: Vec<MultiPoly> =
            std::iter::successors(Some(value.pow(0)), |p| Some(p * &value))
                .take(deg as usize + 1)
                .collect();
        let mut out = self.scale(&Rational::zero());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = e2[i] as usize;
            e2[i] = 0;
            let mono = MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(e2, c.clone())]),
            };
            out = out.try_add(&(&mono * &powers[d]))?;
        }
        Ok(out)
    }

    /// `den^d * self(name -> num/den)` where `d` is the degree in `name`.
    /// The result is a polynomial; nothing is divided out.
    pub fn substitute_clearing(
        &self,
        name: &str,
        num: &MultiPoly,
        den: &MultiPoly,
    ) -> Result<MultiPoly, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        let i = self.index_of(name)?;
        let (_, num) = self.aligned(num)?;
        let (_, den) = self.aligned(den)?;
        let deg = self.degree_in(name)?.unwrap_or(0) as usize;
        let num_pows: Vec<MultiPoly> = std::iter::successors(Some(num.pow(0)), |p| Some(p * &num))
            .take(deg + 1)
            .collect();
        let den_pows: Vec<MultiPoly> = std::iter::successors(Some(den.pow(0)), |p| Some(p * &den))
            .take(deg + 1)
            .collect();
        let mut out = self.scale(&Rational::zero());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = e2[i] as usize;
            e2[i] = 0;
            let mono = MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(e2, c.clone())]),
            };
            out = out.try_add(&(&(&mono * &num_pows[d]) * &den_pows[deg - d]))?;
        }
        Ok(out)
    }

    /// [`substitute_clearing`](Self::substitute_clearing) followed by content
    /// removal; returns `(primitive, content)`.
    pub fn substitute_rational(
        &self,
        name: &str,
        num: &MultiPoly,
        den: &MultiPoly,
    ) -> Result<(MultiPoly, Rational), PolyError> {
        let cleared = self.substitute_clearing(name, num, den)?;
        let c = cleared.content();
        Ok((cleared.primitive(), c))
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Rational::zero();
        }
        Rational::new(g, l)
    }

    pub fn primitive(&self) -> MultiPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// Largest monomial dividing every term, as an exponent vector.
    pub fn monomial_gcd(&self) -> Vec<u32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.vars.len()];
        };
        it.fold(first.clone(), |acc, e| {
            acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()
        })
    }

    /// Divides out [`monomial_gcd`](Self::monomial_gcd).
    pub fn remove_monomial_factor(&self) -> MultiPoly {
        let g = self.monomial_gcd();
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(&g).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// `self / divisor` when the division is exact in the polynomial ring.
    pub fn divide_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let (mut rem, d) = self.aligned(divisor)?;
        let Some((de, dc)) = d.leading_term().map(|(e, c)| (e.clone(), c.clone())) else {
            return Err(PolyError::ZeroDenominator);
        };
        let mut q = MultiPoly {
            vars: rem.vars.clone(),
            terms: BTreeMap::new(),
        };
        while let Some((re, rc)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return Err(PolyError::NotDivisible);
            }
            let e: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let c = rc / &dc;
            let mono = MultiPoly {
                vars: rem.vars.clone(),
                terms: BTreeMap::from([(e.clone(), c.clone())]),
            };
            rem = rem.try_sub(&(&mono * &d))?;
            q.add_term(e, c);
        }
        Ok(q)
    }

    /// True when `self = c * other` for a nonzero rational `c`.
    pub fn proportional_to(&self, other: &MultiPoly) -> bool {
        let (Some((ea, ca)), Some((eb, cb))) = (self.leading_term(), other.leading_term()) else {
            return self.is_zero() && other.is_zero();
        };
        if ea != eb || self.terms.len() != other.terms.len() {
            return false;
        }
        let ratio = ca / cb;
        match other.aligned(self) {
            Ok((o, s)) => o.scale(&ratio) == s,
            Err(_) => false,
        }
    }

    pub fn eval(&self, values: &[Rational]) -> Result<Rational, PolyError> {
        self.eval_with(values)
    }

    /// Evaluation over any [`Scalar`], e.g. intervals or doubles.
    pub fn eval_with<T: Scalar>(&self, values: &[T]) -> Result<T, PolyError> {
        if values.len() != self.vars.len() {
            return Err(PolyError::VariableMismatch(
                self.vars.clone(),
                vec![format!("<{} values>", values.len())],
            ));
        }
        let mut acc = T::from_int(0);
        for (e, c) in &self.terms {
            let mut t = T::from_rational(c);
            for (v, &k) in values.iter().zip(e) {
                for _ in 0..k {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// View as a univariate polynomial in `name`; fails if another
    /// variable occurs.
    pub fn to_univariate(&self, name: &str) -> Result<UniPoly, PolyError> {
        let i = self.index_of(name)?;
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k != 0) {
                return Err(PolyError::NotUnivariate(name.to_string()));
            }
            let d = e[i] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Rational::zero());
            }
            coeffs[d] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn from_univariate(vars: &[&str], name: &str, p: &UniPoly) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero(vars);
        let i = out.index_of(name)?;
        for (d, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = d as u32;
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(e, c)| TermJson {
                exponents: e.clone(),
                coeff: c.into(),
            })
            .collect()
    }

    pub fn from_json(vars: &[&str], terms: &[TermJson]) -> Result<MultiPoly, PolyError> {
        let parsed = terms
            .iter()
            .map(|t| {
                Ok((
                    t.exponents.clone(),
                    t.coeff.to_rational().map_err(PolyError::Json)?,
                ))
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        MultiPoly::from_terms(vars, parsed)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| {
                    if *k == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.try_add(o).expect("variable lists must match")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.try_sub(o).expect("variable lists must match")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.try_mul(o).expect("variable lists must match")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&int(-1))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    const V: &[&str] = &["x"];

    fn x() -> MultiPoly {
        MultiPoly::var(V, "x").unwrap()
    }

    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(V, int(v))
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&(&x() - &c(1)) * &(&x() + &c(1)), &x().pow(2) - &c(1));
        let composed = (&x() + &c(1)).compose("x", &x().pow(2)).unwrap();
        assert_eq!(composed, &x().pow(2) + &c(1));
        let sq = (&x() + &c(1)).pow(2);
        assert_eq!(sq, &(&x().pow(2) + &x().scale(&int(2))) + &c(1));
        let third = x().scale(&rat(1, 3));
        let sixth = x().scale(&rat(1, 6));
        assert_eq!(&third + &sixth, x().scale(&rat(1, 2)));
    }

    #[test]
    fn mismatched_variables() {
        let y = MultiPoly::var(&["y"], "y").unwrap();
        assert!(matches!(
            x().try_add(&y),
            Err(PolyError::VariableMismatch(..))
        ));
        // bare constants adapt to any variable list
        assert_eq!(
            x().try_add(&MultiPoly::scalar(int(2))).unwrap(),
            &x() + &c(2)
        );
    }

    #[test]
    fn content_and_substitution() {
        let p = &x().scale(&int(2)) + &c(2);
        assert_eq!(p.content(), int(2));
        assert_eq!(p.primitive(), &x() + &c(1));
        let (prim, content) = c(5).substitute_rational("x", &x(), &c(3)).unwrap();
        assert_eq!((prim, content), (c(1), int(5)));
        assert!(matches!(
            x().substitute_rational("x", &c(1), &c(0)),
            Err(PolyError::ZeroDenominator)
        ));
    }

    #[test]
    fn branch_substitution_nonzero_at_one() {
        // x -> (k-2) t / (k p - 2 + k1 t^2) into x - t for k = k1 = p = 3
        let vars = ["x", "t"];
        let xv = MultiPoly::var(&vars, "x").unwrap();
        let t = MultiPoly::var(&vars, "t").unwrap();
        let num = t.clone();
        let den = &MultiPoly::constant(&vars, int(7)) + &t.pow(2).scale(&int(3));
        let (prim, _) = (&xv - &t).substitute_rational("x", &num, &den).unwrap();
        // t - t(7 + 3 t^2) = -6t - 3t^3
        let want = &t.scale(&int(2)) + &t.pow(3);
        assert!(prim.proportional_to(&want));
        assert!(!prim.eval(&[int(0), int(1)]).unwrap().is_zero());
    }

    #[test]
    fn exact_division() {
        let vars = ["a", "b"];
        let a = MultiPoly::var(&vars, "a").unwrap();
        let b = MultiPoly::var(&vars, "b").unwrap();
        let f = &(&a + &b) * &(&a - &b.scale(&rat(1, 2)));
        assert_eq!(
            f.divide_exact(&(&a + &b)).unwrap(),
            &a - &b.scale(&rat(1, 2))
        );
        assert_eq!(f.divide_exact(&a), Err(PolyError::NotDivisible));
        assert_eq!((&a.pow(2) * &b).monomial_gcd(), vec![2, 1]);
    }

    #[test]
    fn json_round_trip() {
        let vars = ["a", "b"];
        let a = MultiPoly::var(&vars, "a").unwrap();
        let b = MultiPoly::var(&vars, "b").unwrap();
        let f = &(&a.pow(3).scale(&rat(-7, 3)) + &b) + &MultiPoly::constant(&vars, rat(1, 9));
        let s = serde_json::to_string(&f.to_json()).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&s).unwrap();
        assert_eq!(MultiPoly::from_json(&vars, &back).unwrap(), f);
    }

    #[test]
    fn display() {
        let p = &(&x().pow(2).scale(&int(3)) - &x()) + &c(2);
        assert_eq!(p.to_string(), "3*x^2 - x + 2");
    }
}
