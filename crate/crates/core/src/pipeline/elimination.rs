//! Elimination of `x2` and `x1`, leaving a univariate polynomial `H1` in
//! `x23` whose positive roots carry the non-diagonal Einstein metrics.

use super::system::{EinsteinSystem, VARS};
use super::{AnsatzParams, PipelineError};
use crate::poly::{MultiPoly, UniPoly};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct Elimination {
    pub params: AnsatzParams,
    /// `g1`, `g2` after `x2 -> num/den`, denominators cleared and monomial
    /// factors divided out.
    pub f1: MultiPoly,
    pub f2: MultiPoly,
    /// `x2 = x2_num / x2_den` on the branch `x2 != x23` of `g3 = 0`.
    pub x2_num: UniPoly,
    pub x2_den: UniPoly,
    /// `x1 = x1_num / x1_den` from the linear equation `f2 = 0`.
    pub x1_num: UniPoly,
    pub x1_den: UniPoly,
    pub h1: UniPoly,
    /// `H1 / (x23 - 1)` when `k1 = k`.
    pub g1_cofactor: Option<UniPoly>,
}

impl Elimination {
    /// The polynomial whose positive roots give the non-bi-invariant
    /// solutions: `G1` when `k1 = k`, otherwise `H1`.
    pub fn target(&self) -> (&'static str, &UniPoly) {
        match &self.g1_cofactor {
            Some(g) => ("G1", g),
            None => ("H1", &self.h1),
        }
    }

    /// `x2(x23)` as an exact rational.
    pub fn x2_at(&self, x23: &Rational) -> Rational {
        self.x2_num.eval(x23) / self.x2_den.eval(x23)
    }

    /// `x1(x23)`; `None` where the denominator vanishes.
    pub fn x1_at(&self, x23: &Rational) -> Option<Rational> {
        let d = self.x1_den.eval(x23);
        (!num_traits::Zero::is_zero(&d)).then(|| self.x1_num.eval(x23) / d)
    }
}

fn degenerate(step: &str) -> PipelineError {
    PipelineError::DegenerateElimination(step.to_string())
}

/// Runs both substitutions. `H1` keeps the integer normalization
/// `a^2 f1(-b/a) / (x23 (kp - 2 + k1 x23^2))`, where `f2 = a x1 + b`.
pub fn eliminate_to_h1(sys: &EinsteinSystem) -> Result<Elimination, PipelineError> {
    let (k1, k, p) = sys.params.as_i64();
    let c = |v: i64| MultiPoly::constant(&VARS, int(v));
    let x23 = MultiPoly::var(&VARS, "x23").expect("known variable");
    let num = &c(k - 2) * &x23;
    let den = &c(k * p - 2) + &(&c(k1) * &x23.pow(2));
    let monomial = &c(k - 2) * &x23.pow(2);

    let sub = |g: &MultiPoly, name: &str| -> Result<MultiPoly, PipelineError> {
        g.substitute_clearing("x2", &num, &den)
            .and_then(|s| s.divide_exact(&monomial))
            .map_err(|_| degenerate(name))
    };
    let f1 = sub(&sys.g1, "f1 = g1(x2 -> num/den)")?;
    let f2 = sub(&sys.g2, "f2 = g2(x2 -> num/den)")?;

    if f2.degree_in("x1").expect("known variable") != Some(1) {
        return Err(degenerate("f2 is not linear in x1"));
    }
    let a = f2.coefficient_in("x1", 1).expect("known variable");
    let b = f2.coefficient_in("x1", 0).expect("known variable");
    let minus_b = -&b;
    let h = f1
        .substitute_clearing("x1", &minus_b, &a)
        .map_err(|_| degenerate("x1 substitution"))?
        .divide_exact(&(&x23 * &den))
        .map_err(|_| degenerate("H1 normalization"))?;
    let uni = |m: &MultiPoly, what: &str| m.to_univariate("x23").map_err(|_| degenerate(what));
    let h1 = uni(&h, "H1 still involves x1 or x2")?;
    let g1_cofactor = if k1 == k {
        let lin = UniPoly::linear_root(&int(1));
        Some(
            h1.divide_exact(&lin)
                .map_err(|_| degenerate("x23 - 1 does not divide H1"))?,
        )
    } else {
        None
    };
    Ok(Elimination {
        params: sys.params,
        x2_num: uni(&num, "x2 numerator")?,
        x2_den: uni(&den, "x2 denominator")?,
        x1_num: uni(&minus_b, "x1 numerator")?,
        x1_den: uni(&a, "x1 denominator")?,
        f1,
        f2,
        h1,
        g1_cofactor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::system::build_system;
    use num_traits::Zero;

    fn elim(k1: usize, k: usize, p: usize) -> Elimination {
        eliminate_to_h1(&build_system(&AnsatzParams::new(k1, k, p).unwrap())).unwrap()
    }

    #[test]
    fn three_four_four_coefficients() {
        let e = elim(3, 4, 4);
        let want = UniPoly::from_ints_descending(&[
            13662, -63180, 247464, -698256, 1424064, -2312544, 2775392, -2006368, 629216,
        ]);
        assert_eq!(e.h1, want);
        assert!(e.g1_cofactor.is_none());
    }

    #[test]
    fn f2_matches_printed_form() {
        let (k1, k, p) = (5i64, 4i64, 3i64);
        let e = elim(5, 4, 3);
        let c = |v: i64| MultiPoly::constant(&VARS, int(v));
        let x1 = MultiPoly::var(&VARS, "x1").unwrap();
        let t = MultiPoly::var(&VARS, "x23").unwrap();
        let printed = [
            &t.pow(2)
                * &c(
                    k * k * (p - 1) * (p - 1) + 2 * k * k1 * p + k * k1 - 2 * k * p + k - 6 * k1
                        + 2,
                ),
            c(k * k * (p - 1) * (p + 2)),
            &(&x1 * &t) * &c((k1 - 1) * (k * p - 2)),
            &t.pow(4) * &c(k1 * (k * p - 2 * k + k1)),
            &t.pow(3) * &c(-2 * k1 * (k * p - k + k1 - 2)),
            &t * &c(-2 * (k * p - 2) * (k * p - k + k1 - 2)),
            &(&x1 * &t.pow(3)) * &c((k1 - 1) * k1),
            c(-6 * k * p + 4 * k + 4),
        ]
        .iter()
        .fold(MultiPoly::zero(&VARS), |acc, m| &acc + m);
        assert_eq!(e.f2, printed);
    }

    #[test]
    fn x1_solves_f2_and_h1_is_degree_eight() {
        let e = elim(4, 3, 3);
        assert_eq!(e.h1.degree(), Some(8));
        let t = Rational::new(3.into(), 7.into());
        let x1 = e.x1_at(&t).unwrap();
        let v = e.f2.eval(&[x1, int(0), t]).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn equal_blocks_split_off_x23_minus_one() {
        let e = elim(3, 3, 3);
        assert!(e.h1.eval(&int(1)).is_zero());
        let g = e.g1_cofactor.as_ref().unwrap();
        assert_eq!(g.degree(), Some(7));
        assert_eq!(e.target().0, "G1");
    }
}
