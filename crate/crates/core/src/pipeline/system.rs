//! The polynomial Einstein system `g1 = g2 = g3 = 0` of the symmetric
//! ansatz in the gauge `x12 = 1`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::One;

use super::AnsatzParams;
use crate::poly::MultiPoly;
use crate::rational::{int, Rational};
use crate::ricci::{ricci_symmetric, SymmetricAnsatz};
use crate::scalar::Scalar;

pub const VARS: [&str; 3] = ["x1", "x2", "x23"];

#[derive(Debug, Clone, PartialEq)]
pub struct EinsteinSystem {
    pub params: AnsatzParams,
    pub g1: MultiPoly,
    pub g2: MultiPoly,
    pub g3: MultiPoly,
}

impl EinsteinSystem {
    pub fn params(&self) -> &AnsatzParams {
        &self.params
    }

    pub fn polys(&self) -> [&MultiPoly; 3] {
        [&self.g1, &self.g2, &self.g3]
    }

    /// Values of `(g1, g2, g3)` at `(x1, x2, x23)`.
    pub fn eval(&self, x1: &Rational, x2: &Rational, x23: &Rational) -> [Rational; 3] {
        let v = [x1.clone(), x2.clone(), x23.clone()];
        self.polys().map(|g| g.eval(&v).expect("three variables"))
    }
}

fn poly(terms: &[(i64, [u32; 3])]) -> MultiPoly {
    MultiPoly::from_terms(&VARS, terms.iter().map(|(c, e)| (e.to_vec(), int(*c))))
        .expect("three exponents per term")
}

fn g1_poly(k1: i64, k: i64, p: i64) -> MultiPoly {
    poly(&[
        (k * (p - 1), [2, 1, 2]),
        (-k * (p - 2), [1, 2, 0]),
        (-(k - 2), [1, 0, 2]),
        (-k1, [1, 2, 2]),
        (k1 - 2, [0, 1, 2]),
    ])
}

fn g2_poly(k1: i64, k: i64, p: i64) -> MultiPoly {
    poly(&[
        (-2 * (k * p - k + k1 - 2), [0, 1, 2]),
        (k + k1 - 1, [0, 2, 2]),
        (k * (p - 2), [0, 2, 0]),
        (k * (p - 2), [0, 1, 3]),
        (k - 2, [0, 0, 2]),
        (k1 - 1, [1, 1, 2]),
    ])
}

fn g3_poly(k1: i64, k: i64, p: i64) -> MultiPoly {
    let left = poly(&[(1, [0, 1, 0]), (-1, [0, 0, 1])]);
    let right = poly(&[
        (k * p - 2, [0, 1, 0]),
        (-(k - 2), [0, 0, 1]),
        (k1, [0, 1, 2]),
    ]);
    &left * &right
}

/// The Einstein system with `g1, g2, g3` proportional to `r1 - r2`,
/// `r2 - r12` and `r2 - r23` after clearing monomial denominators.
pub fn build_system(params: &AnsatzParams) -> EinsteinSystem {
    let (k1, k, p) = params.as_i64();
    EinsteinSystem {
        params: *params,
        g1: g1_poly(k1, k, p),
        g2: g2_poly(k1, k, p),
        g3: g3_poly(k1, k, p),
    }
}

/// `g2` exactly as it is usually printed, carrying an extra
/// `-x2^2 x23^2` term. It does not follow from the Ricci components; kept
/// so the discrepancy stays checkable.
pub fn printed_g2(params: &AnsatzParams) -> MultiPoly {
    let (k1, k, p) = params.as_i64();
    &g2_poly(k1, k, p) - &poly(&[(1, [0, 2, 2])])
}

/// The system with the printed `g2` in place of the derived one.
pub fn printed_system(params: &AnsatzParams) -> EinsteinSystem {
    let mut s = build_system(params);
    s.g2 = printed_g2(params);
    s
}

/// Quotient of multivariate polynomials, used to run the Ricci formulas
/// symbolically. Only monomial denominators are simplified, which covers
/// everything the closed forms produce.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFn {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RatFn {
    pub fn var(name: &str) -> RatFn {
        RatFn {
            num: MultiPoly::var(&VARS, name).expect("known variable"),
            den: MultiPoly::constant(&VARS, int(1)),
        }
    }

    fn reduce(self) -> RatFn {
        let RatFn { mut num, mut den } = self;
        if num.is_zero() {
            return RatFn {
                num,
                den: MultiPoly::scalar(int(1)),
            };
        }
        if den.num_terms() == 1 {
            if !den.vars().is_empty() && !num.vars().is_empty() {
                let g: Vec<u32> = den
                    .monomial_gcd()
                    .iter()
                    .zip(num.monomial_gcd())
                    .map(|(a, b)| *a.min(&b))
                    .collect();
                if g.iter().any(|e| *e > 0) {
                    let m = MultiPoly::from_terms(&VARS, [(g, int(1))]).expect("three exponents");
                    num = num.divide_exact(&m).expect("monomial divides");
                    den = den.divide_exact(&m).expect("monomial divides");
                }
            }
            let c = den
                .leading_term()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rational::one);
            let inv = c.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFn { num, den }
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, o: RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn {
                num: &self.num + &o.num,
                den: self.den,
            }
            .reduce();
        }
        RatFn {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .reduce()
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, o: RatFn) -> RatFn {
        self + (-o)
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, o: RatFn) -> RatFn {
        RatFn {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
        .reduce()
    }
}

impl Div for RatFn {
    type Output = RatFn;
    fn div(self, o: RatFn) -> RatFn {
        assert!(!o.num.is_zero(), "division by the zero rational function");
        RatFn {
            num: &self.num * &o.den,
            den: &self.den * &o.num,
        }
        .reduce()
    }
}

impl Scalar for RatFn {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&crate::rational::rat(num, den))
    }

    fn from_rational(r: &Rational) -> Self {
        RatFn {
            num: MultiPoly::scalar(r.clone()),
            den: MultiPoly::scalar(int(1)),
        }
    }
}

/// Clears the (monomial) denominator of `f` and strips any monomial factor.
fn cleared(f: &RatFn) -> MultiPoly {
    f.num.remove_monomial_factor()
}

/// The system obtained directly from the Ricci closed form: numerators of
/// `r1 - r2`, `r2 - r12`, `r2 - r23` at `x12 = 1`, monomial factors removed.
pub fn derive_system_from_ricci(params: &AnsatzParams) -> EinsteinSystem {
    let a = SymmetricAnsatz {
        k1: params.k1,
        k: params.k,
        p: params.p,
        x1: RatFn::var("x1"),
        x2: RatFn::var("x2"),
        x12: RatFn::from_int(1),
        x23: RatFn::var("x23"),
    };
    let r = ricci_symmetric(&a);
    let lift = |m: MultiPoly| m.try_add(&MultiPoly::zero(&VARS)).expect("constants lift");
    EinsteinSystem {
        params: *params,
        g1: lift(cleared(&(r.r1 - r.r2.clone()))),
        g2: lift(cleared(&(r.r2.clone() - r.r12))),
        g3: lift(cleared(&(r.r2 - r.r23))),
    }
}

/// Equal up to a nonzero rational factor.
pub fn same_up_to_content(a: &MultiPoly, b: &MultiPoly) -> bool {
    !a.is_zero() && a.proportional_to(b)
}

/// Per-polynomial agreement of two systems up to content.
pub fn systems_agree(a: &EinsteinSystem, b: &EinsteinSystem) -> [bool; 3] {
    let (pa, pb) = (a.polys(), b.polys());
    [0, 1, 2].map(|i| same_up_to_content(pa[i], pb[i]))
}

/// Ensures `(x1, x2, x23)` makes the Ricci differences vanish exactly,
/// i.e. the point is Einstein.
pub fn is_einstein_point(
    params: &AnsatzParams,
    x1: &Rational,
    x2: &Rational,
    x23: &Rational,
) -> bool {
    let a = SymmetricAnsatz {
        k1: params.k1,
        k: params.k,
        p: params.p,
        x1: x1.clone(),
        x2: x2.clone(),
        x12: int(1),
        x23: x23.clone(),
    };
    let r = ricci_symmetric(&a);
    r.r1 == r.r2 && r.r2 == r.r12 && r.r2 == r.r23
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::PipelineError;
    use num_traits::Zero;

    fn params(k1: usize, k: usize, p: usize) -> AnsatzParams {
        AnsatzParams::new(k1, k, p).unwrap()
    }

    #[test]
    fn g3_vanishes_on_diagonal_branch() {
        let s = build_system(&params(4, 3, 3));
        let on_branch =
            s.g3.compose("x2", &MultiPoly::var(&VARS, "x23").unwrap())
                .unwrap();
        assert!(on_branch.is_zero());
    }

    #[test]
    fn bi_invariant_point_solves_system() {
        for (k1, k, p) in [(4, 3, 3), (3, 4, 4), (7, 5, 3)] {
            let s = build_system(&params(k1, k, p));
            assert!(s
                .eval(&int(1), &int(1), &int(1))
                .iter()
                .all(|v| v.is_zero()));
            assert!(is_einstein_point(s.params(), &int(1), &int(1), &int(1)));
        }
    }

    #[test]
    fn derived_system_matches_corrected_transcription() {
        for (k1, k, p) in [(4, 3, 3), (3, 4, 4), (8, 6, 5)] {
            let pr = params(k1, k, p);
            assert_eq!(
                systems_agree(&build_system(&pr), &derive_system_from_ricci(&pr)),
                [true; 3]
            );
            let printed = printed_system(&pr);
            assert_eq!(
                systems_agree(&printed, &derive_system_from_ricci(&pr)),
                [true, false, true]
            );
        }
    }

    #[test]
    fn rejects_small_parameters() {
        assert!(matches!(
            AnsatzParams::new(2, 3, 3),
            Err(PipelineError::InvalidParameters { .. })
        ));
        assert!(AnsatzParams::new(3, 3, 2).is_err());
    }
}
