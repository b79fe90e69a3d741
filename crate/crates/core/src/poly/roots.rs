use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{PolyError, UniPoly};
use crate::interval::RatInterval;
use crate::rational::{int, pow2, Rational, RationalJson};

/// Exact endpoint nudge used when a bisection point lands on a root.
pub const ENDPOINT_SHIFT_BITS: i64 = 64;

/// Sturm sequence `p, p', -rem(p, p'), ...`, each term rescaled by a
/// positive constant to keep coefficients small.
pub fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.primitive_part(), p.derivative().primitive_part()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        if chain[n - 1].degree() == Some(0) {
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(r.neg().primitive_part());
    }
    chain
}

pub fn sign_changes(chain: &[UniPoly], x: &Rational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|q| q.sign_at(x))
        .filter(|s| *s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`.
pub fn sturm_count(p: &UniPoly, a: &Rational, b: &Rational) -> Result<usize, PolyError> {
    if a >= b {
        return Err(PolyError::EmptyInterval(a.to_string(), b.to_string()));
    }
    for e in [a, b] {
        if p.eval(e).is_zero() {
            return Err(PolyError::EndpointIsRoot(e.to_string()));
        }
    }
    if p.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(&p.squarefree_part());
    Ok(sign_changes(&chain, a) - sign_changes(&chain, b))
}

/// A real root of `poly` certified to be the only root in `[lo, hi]`.
///
/// `poly` is squarefree, so the root is simple for it and
/// `sign_lo * sign_hi < 0` whenever `lo < hi`. When bisection lands exactly
/// on the root, the interval collapses to a point and both signs are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub label: String,
    pub poly: UniPoly,
    lo: Rational,
    hi: Rational,
    sign_lo: i8,
    sign_hi: i8,
    /// Multiplicity in the polynomial originally passed for isolation.
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsolatedRootJson {
    pub label: String,
    pub lo: RationalJson,
    pub hi: RationalJson,
    pub sign_lo: i8,
    pub sign_hi: i8,
    pub multiplicity: u32,
}

impl IsolatedRoot {
    /// Checks the sign change and the Sturm count before accepting.
    pub fn new(
        label: &str,
        poly: &UniPoly,
        lo: Rational,
        hi: Rational,
        multiplicity: u32,
    ) -> Result<IsolatedRoot, PolyError> {
        let poly = poly.squarefree_part();
        if lo == hi {
            if !poly.eval(&lo).is_zero() {
                return Err(PolyError::NotDivisible);
            }
            return Ok(IsolatedRoot {
                label: label.into(),
                poly,
                lo,
                hi,
                sign_lo: 0,
                sign_hi: 0,
                multiplicity,
            });
        }
        let n = sturm_count(&poly, &lo, &hi)?;
        if n != 1 {
            return Err(PolyError::NotDivisible);
        }
        let (sign_lo, sign_hi) = (poly.sign_at(&lo), poly.sign_at(&hi));
        Ok(IsolatedRoot {
            label: label.into(),
            poly,
            lo,
            hi,
            sign_lo,
            sign_hi,
            multiplicity,
        })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn signs(&self) -> (i8, i8) {
        (self.sign_lo, self.sign_hi)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Midpoint, within [`error_bound`](Self::error_bound) of the root.
    pub fn value(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn error_bound(&self) -> Rational {
        self.width() / int(2)
    }

    /// One bisection step; the width halves or the root is hit exactly.
    pub fn bisect(&self) -> IsolatedRoot {
        if self.is_exact() {
            return self.clone();
        }
        let mid = self.value();
        let s = self.poly.sign_at(&mid);
        let mut r = self.clone();
        if s == 0 {
            r.lo = mid.clone();
            r.hi = mid;
            r.sign_lo = 0;
            r.sign_hi = 0;
        } else if s == self.sign_lo {
            r.lo = mid;
        } else {
            r.hi = mid;
        }
        r
    }

    /// Bisects until the width is at most `2^-bits`.
    pub fn refine(&self, bits: u32) -> IsolatedRoot {
        let target = pow2(-(bits as i64));
        let mut r = self.clone();
        while r.width() > target {
            r = r.bisect();
        }
        r
    }

    /// Splits at `x` so that `x` is not an interior point. If `x` is the
    /// root itself the interval collapses to it.
    pub fn separate_from(&self, x: &Rational) -> IsolatedRoot {
        if !(&self.lo < x && x < &self.hi) {
            return self.clone();
        }
        let s = self.poly.sign_at(x);
        let mut r = self.clone();
        if s == 0 {
            r.lo = x.clone();
            r.hi = x.clone();
            r.sign_lo = 0;
            r.sign_hi = 0;
        } else if s == self.sign_lo {
            r.lo = x.clone();
        } else {
            r.hi = x.clone();
        }
        r
    }

    /// `Some(true)` if the root is certainly below `x`, `Some(false)` if
    /// certainly at or above, `None` if `x` is interior to the interval.
    pub fn below(&self, x: &Rational) -> Option<bool> {
        if &self.hi < x {
            Some(true)
        } else if &self.lo >= x {
            Some(false)
        } else if self.is_exact() {
            Some(&self.lo < x)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> IsolatedRootJson {
        IsolatedRootJson {
            label: self.label.clone(),
            lo: (&self.lo).into(),
            hi: (&self.hi).into(),
            sign_lo: self.sign_lo,
            sign_hi: self.sign_hi,
            multiplicity: self.multiplicity,
        }
    }
}

fn split_point(lo: &Rational, hi: &Rational, q: &UniPoly) -> Rational {
    let mid = (lo + hi) / int(2);
    if !q.eval(&mid).is_zero() {
        return mid;
    }
    let w = hi - lo;
    let mut eps = pow2(-ENDPOINT_SHIFT_BITS);
    while eps.clone() * int(4) >= w {
        eps /= int(2);
    }
    let mut k = 1;
    loop {
        for cand in [&mid + &eps * int(k), &mid - &eps * int(k)] {
            if !q.eval(&cand).is_zero() {
                return cand;
            }
        }
        k += 1;
    }
}

/// All real roots, sorted, with disjoint isolating intervals with dyadic
/// endpoints. Multiplicities come from the squarefree decomposition.
pub fn isolate_roots(p: &UniPoly) -> Vec<IsolatedRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let q = p.squarefree_part();
    let factors = p.squarefree_decomposition();
    let chain = sturm_chain(&q);
    let bound = q.cauchy_bound();
    let mut m = int(1);
    while m <= bound {
        m *= int(2);
    }
    let count = |a: &Rational, b: &Rational| sign_changes(&chain, a) - sign_changes(&chain, b);

    let mut found: Vec<(Rational, Rational)> = Vec::new();
    let mut stack = vec![(-m.clone(), m.clone(), count(&-m.clone(), &m))];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => found.push((lo, hi)),
            _ => {
                let mid = split_point(&lo, &hi, &q);
                let left = count(&lo, &mid);
                stack.push((mid.clone(), hi, n - left));
                stack.push((lo, mid, left));
            }
        }
    }
    found.sort();
    found
        .into_iter()
        .enumerate()
        .map(|(i, (lo, hi))| {
            let mult = factors
                .iter()
                .find(|(f, _)| f.sign_at(&lo) * f.sign_at(&hi) < 0)
                .map(|(_, m)| *m)
                .unwrap_or(1);
            let (sign_lo, sign_hi) = (q.sign_at(&lo), q.sign_at(&hi));
            IsolatedRoot {
                label: format!("root{}", i + 1),
                poly: q.clone(),
                lo,
                hi,
                sign_lo,
                sign_hi,
                multiplicity: mult,
            }
        })
        .collect()
}

/// Roots in `(0, inf)`, with intervals inside `[0, inf)`.
pub fn positive_roots(p: &UniPoly) -> Vec<IsolatedRoot> {
    let zero = Rational::zero();
    let mut out: Vec<IsolatedRoot> = isolate_roots(p)
        .into_iter()
        .map(|r| r.separate_from(&zero))
        .filter(|r| r.lo().is_positive() || (r.lo().is_zero() && !r.is_exact()))
        .collect();
    for (i, r) in out.iter_mut().enumerate() {
        r.label = format!("root{}", i + 1);
    }
    out
}

/// Number of distinct real roots by bracketing every root inside the
/// Cauchy bound, used to cross-check isolation.
pub fn real_root_count(p: &UniPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let m = p.cauchy_bound();
    sturm_count(p, &-m.clone(), &m).expect("Cauchy bound is not a root")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn sturm_examples() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &int(0), &int(2)).unwrap(), 1);
        let q = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(sturm_count(&q, &int(-10), &int(10)).unwrap(), 0);
        assert!(matches!(
            sturm_count(&UniPoly::from_ints(&[-1, 1]), &int(1), &int(2)),
            Err(PolyError::EndpointIsRoot(_))
        ));
        assert!(matches!(
            sturm_count(&p, &int(2), &int(2)),
            Err(PolyError::EmptyInterval(..))
        ));
    }

    #[test]
    fn sqrt_two_to_128_bits() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let roots = isolate_roots(&p);
        assert_eq!(roots.len(), 2);
        let r = roots[1].refine(128);
        assert!(r.width() <= pow2(-128));
        let v = crate::rational::to_f64(&r.value());
        assert!((v - std::f64::consts::SQRT_2).abs() < 1e-15);
        let (a, b) = r.signs();
        assert!(a * b < 0);
    }

    #[test]
    fn multiplicities() {
        let p = UniPoly::from_ints(&[-1, 1])
            .pow(2)
            .mul(&UniPoly::from_ints(&[3, 1]));
        let roots = isolate_roots(&p);
        assert_eq!(roots.len(), 2);
        assert!(roots[0].interval().contains(&int(-3)) && roots[0].multiplicity == 1);
        assert!(roots[1].interval().contains(&int(1)) && roots[1].multiplicity == 2);
    }

    #[test]
    fn dyadic_roots_hit_exactly() {
        // roots at 0, 1/2, 1: bisection points land on them
        let p = UniPoly::from_ints(&[0, 1])
            .mul(&UniPoly::from_ints(&[-1, 2]))
            .mul(&UniPoly::from_ints(&[-1, 1]));
        let roots = isolate_roots(&p);
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([int(0), rat(1, 2), int(1)]) {
            assert!(r.interval().contains(&want));
        }
        let pos = positive_roots(&p);
        assert_eq!(pos.len(), 2);
    }

    #[test]
    fn refinement_halves_width() {
        let p = UniPoly::from_ints(&[-3, 0, 1]);
        let r = isolate_roots(&p)[1].clone();
        let w = r.width();
        assert_eq!(r.bisect().width(), w / int(2));
    }

    fn roots_strategy() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-30i64..30, 1..6)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn counts_match_constructed_roots(rs in roots_strategy(), extra in 0u32..2) {
            let mut p = UniPoly::from_ints(&[1]);
            for r in &rs {
                p = p.mul(&UniPoly::new(vec![rat(-*r, 3), int(1)]));
            }
            if extra == 1 {
                p = p.mul(&UniPoly::from_ints(&[5, 0, 1]));
            }
            let mut distinct = rs.clone();
            distinct.sort();
            distinct.dedup();
            let isolated = isolate_roots(&p);
            prop_assert_eq!(isolated.len(), distinct.len());
            prop_assert_eq!(real_root_count(&p), distinct.len());
            for (iso, r) in isolated.iter().zip(&distinct) {
                prop_assert!(iso.interval().contains(&rat(*r, 3)));
            }
            for w in isolated.windows(2) {
                prop_assert!(w[0].hi() <= w[1].lo());
            }
        }
    }
}
