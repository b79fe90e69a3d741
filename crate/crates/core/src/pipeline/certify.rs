//! Turning isolated roots of `H1` (or `G1`) into certified Einstein metrics.

use serde::Serialize;

use super::closed_forms::rho;
use super::elimination::{eliminate_to_h1, Elimination};
use super::system::build_system;
use super::{AnsatzParams, PipelineError};
use crate::interval::RatInterval;
use crate::poly::{positive_roots, IsolatedRoot};
use crate::rational::{decimal, int, pow2, rat, Rational};
use crate::ricci::{ricci_symmetric, SymmetricAnsatz};

/// Which naturally reductive condition holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NrReason {
    BiInvariant,
    X2EqualsX23,
    X12EqualsX23,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NaturallyReductive(NrReason),
    NonNaturallyReductive,
    Undecided,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::NaturallyReductive(_) => "naturally-reductive",
            Verdict::NonNaturallyReductive => "non-naturally-reductive",
            Verdict::Undecided => "undecided",
        }
    }
}

fn certainly_equal(a: &RatInterval, b: &RatInterval) -> bool {
    a.is_point() && a == b
}

/// Decides the three naturally reductive conditions from enclosures.
/// Equality is only certified for degenerate (point) intervals; inequality
/// needs disjoint intervals.
pub fn classify_natural_reductivity(
    x1: &RatInterval,
    x2: &RatInterval,
    x12: &RatInterval,
    x23: &RatInterval,
) -> Verdict {
    if certainly_equal(x1, x2) && certainly_equal(x2, x12) && certainly_equal(x12, x23) {
        return Verdict::NaturallyReductive(NrReason::BiInvariant);
    }
    if certainly_equal(x2, x23) {
        return Verdict::NaturallyReductive(NrReason::X2EqualsX23);
    }
    if certainly_equal(x12, x23) {
        return Verdict::NaturallyReductive(NrReason::X12EqualsX23);
    }
    // x2 != x23 already rules out the bi-invariant case.
    if x2.is_disjoint(x23) && x12.is_disjoint(x23) {
        Verdict::NonNaturallyReductive
    } else {
        Verdict::Undecided
    }
}

/// Exact sign facts behind the positivity of the metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Positivity {
    pub x1: bool,
    pub x2: bool,
    pub x23: bool,
    /// `g1 = A x1^2 + B x1 + C` with `A > 0`, `B < 0`, `C > 0` on the
    /// enclosure, so every real root in `x1` is positive.
    pub x1_quadratic: bool,
}

impl Positivity {
    pub fn all(&self) -> bool {
        self.x1 && self.x2 && self.x23 && self.x1_quadratic
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EinsteinCertificate {
    pub params: AnsatzParams,
    /// `"H1"` or `"G1"`.
    pub source: String,
    pub root: IsolatedRoot,
    pub bits: u32,
    pub x1: RatInterval,
    pub x2: RatInterval,
    pub x12: RatInterval,
    pub x23: RatInterval,
    /// Enclosure of `r1`, the Einstein constant.
    pub lambda: RatInterval,
    /// Upper bound on `max |r_a - lambda|` over the four components.
    pub residual_bound: Rational,
    pub tolerance: Rational,
    pub positivity: Positivity,
    pub verdict: Verdict,
}

impl EinsteinCertificate {
    /// One-line summary in the style of the CLI text output.
    pub fn summary(&self, sig: usize) -> String {
        let status = match self.verdict {
            Verdict::Undecided => "undecided".to_string(),
            v => format!("{}: certified", v.label()),
        };
        format!(
            "x23 = {}, x2 = {}, x1 = {}, lambda = {}, {}",
            decimal(&self.x23.midpoint(), sig),
            decimal(&self.x2.midpoint(), sig),
            decimal(&self.x1.midpoint(), sig),
            decimal(&self.lambda.midpoint(), sig),
            status
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub bits: u32,
    /// Precision is raised up to this multiple of `bits` while the verdict
    /// is undecided or the residual is above tolerance.
    pub max_precision_factor: u32,
}

impl SolveOptions {
    pub fn new(bits: u32) -> Self {
        SolveOptions {
            bits,
            max_precision_factor: 4,
        }
    }
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions::new(128)
    }
}

fn quadratic_in_x1(params: &AnsatzParams, x2: &RatInterval, x23: &RatInterval) -> bool {
    let (k1, k, p) = params.as_i64();
    let c = |v: i64| RatInterval::point(int(v));
    let x2s = x2.powi(2);
    let x23s = x23.powi(2);
    let a = c(k * (p - 1)) * x2.clone() * x23s.clone();
    let b = -(c(k * (p - 2)) * x2s.clone() + c(k - 2) * x23s.clone() + c(k1) * x2s * x23s.clone());
    let cc = c(k1 - 2) * x2.clone() * x23s;
    a.is_positive() && b.is_negative() && cc.is_positive()
}

struct Attempt {
    root: IsolatedRoot,
    bits: u32,
    x1: RatInterval,
    x2: RatInterval,
    x23: RatInterval,
    lambda: RatInterval,
    residual: Rational,
    positivity: Positivity,
    verdict: Verdict,
}

fn attempt(elim: &Elimination, root: &IsolatedRoot, bits: u32) -> Attempt {
    let params = elim.params;
    let root = root.refine(bits);
    let x23 = root.interval();
    let guard = bits + 32;
    let x2 = (elim.x2_num.eval_interval(&x23) / elim.x2_den.eval_interval(&x23)).outward(guard);
    let den = elim.x1_den.eval_interval(&x23);
    let x1_ok = den.is_positive() || den.is_negative();
    let x1 = if x1_ok {
        (elim.x1_num.eval_interval(&x23) / den).outward(guard)
    } else {
        RatInterval::new(int(-1), int(1))
    };
    let x12 = RatInterval::point(int(1));
    let positivity = Positivity {
        x1: x1_ok && x1.is_positive(),
        x2: x2.is_positive(),
        x23: x23.is_positive(),
        x1_quadratic: x2.is_positive() && x23.is_positive() && quadratic_in_x1(&params, &x2, &x23),
    };
    let verdict = classify_natural_reductivity(&x1, &x2, &x12, &x23);
    let safe = x1_ok && !x1.contains_zero() && !x2.contains_zero() && !x23.contains_zero();
    let (lambda, residual) = if safe {
        let a = SymmetricAnsatz {
            k1: params.k1,
            k: params.k,
            p: params.p,
            x1: x1.clone(),
            x2: x2.clone(),
            x12,
            x23: x23.clone(),
        };
        let r = ricci_symmetric(&a);
        let lambda = r.r1.clone();
        let residual = r
            .as_array()
            .into_iter()
            .map(|v| (v - lambda.clone()).magnitude())
            .max()
            .expect("four components");
        (lambda, residual)
    } else {
        (RatInterval::point(int(0)), int(1))
    };
    Attempt {
        root,
        bits,
        x1,
        x2,
        x23,
        lambda,
        residual,
        positivity,
        verdict,
    }
}

/// Certifies one root: back-substitution, positivity, residual and
/// verdict. The residual tolerance is `2^(28 - bits)`.
pub fn certify_root(
    elim: &Elimination,
    root: &IsolatedRoot,
    options: &SolveOptions,
) -> Result<EinsteinCertificate, PipelineError> {
    if options.bits < 53 {
        return Err(PipelineError::PrecisionTooLow(options.bits));
    }
    let tolerance = pow2(28 - options.bits as i64);
    let factor = options.max_precision_factor.max(1);
    let mut best = attempt(elim, root, options.bits);
    let mut m = 2;
    while (best.residual >= tolerance || best.verdict == Verdict::Undecided) && m <= factor {
        best = attempt(elim, root, options.bits * m);
        m += 1;
    }
    if best.residual >= tolerance {
        return Err(PipelineError::ResidualTooLarge {
            root: decimal(&best.root.value(), 20),
            bound: decimal(&best.residual, 6),
            tolerance: decimal(&tolerance, 6),
        });
    }
    let (source, _) = elim.target();
    Ok(EinsteinCertificate {
        params: elim.params,
        source: source.to_string(),
        root: best.root,
        bits: best.bits,
        x1: best.x1,
        x2: best.x2,
        x12: RatInterval::point(int(1)),
        x23: best.x23,
        lambda: best.lambda,
        residual_bound: best.residual,
        tolerance,
        positivity: best.positivity,
        verdict: best.verdict,
    })
}

/// Certified solutions at `bits` of precision.
pub fn solve(params: &AnsatzParams, bits: u32) -> Result<Vec<EinsteinCertificate>, PipelineError> {
    solve_with_options(params, &SolveOptions::new(bits))
}

/// Isolates the positive roots of the target polynomial (`G1` when
/// `k1 = k`, so the bi-invariant root `x23 = 1` is excluded) and certifies
/// each. An empty target root set is reported as
/// [`PipelineError::NoPositiveRoots`].
pub fn solve_with_options(
    params: &AnsatzParams,
    options: &SolveOptions,
) -> Result<Vec<EinsteinCertificate>, PipelineError> {
    if options.bits < 53 {
        return Err(PipelineError::PrecisionTooLow(options.bits));
    }
    let elim = eliminate_to_h1(&build_system(params))?;
    let (label, target) = elim.target();
    let roots = positive_roots(target);
    if roots.is_empty() {
        return Err(PipelineError::NoPositiveRoots(label.to_string()));
    }
    roots
        .iter()
        .map(|r| certify_root(&elim, r, options))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingReport {
    /// `0, rho, 2/3, 1, 2` as decimal strings.
    pub separators: Vec<String>,
    /// For each of the first four roots, whether it lies strictly inside
    /// its window.
    pub windows: Vec<bool>,
    pub holds: bool,
}

/// Checks `0 < a1 < rho < a2 < 2/3 < a3 < 1 < a4 < 2` for the first four
/// sorted roots, refining each against the separators as needed.
pub fn check_ordering(params: &AnsatzParams, roots: &[IsolatedRoot]) -> OrderingReport {
    let seps = [int(0), rho(params), rat(2, 3), int(1), int(2)];
    let mut windows = Vec::new();
    for (i, root) in roots.iter().take(4).enumerate() {
        let (lo, hi) = (&seps[i], &seps[i + 1]);
        let r = root.separate_from(lo).separate_from(hi);
        let above_lo = r.below(lo) == Some(false) && !(r.is_exact() && r.lo() == lo);
        let below_hi = r.below(hi) == Some(true);
        windows.push(lo < hi && above_lo && below_hi);
    }
    let holds = windows.len() == 4 && windows.iter().all(|w| *w);
    OrderingReport {
        separators: seps.iter().map(|s| decimal(s, 12)).collect(),
        windows,
        holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: Rational, hi: Rational) -> RatInterval {
        RatInterval::new(lo, hi)
    }

    fn pt(v: i64) -> RatInterval {
        RatInterval::point(int(v))
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_natural_reductivity(&pt(1), &pt(1), &pt(1), &pt(1)),
            Verdict::NaturallyReductive(NrReason::BiInvariant)
        );
        assert_eq!(
            classify_natural_reductivity(&pt(2), &pt(3), &pt(5), &pt(3)),
            Verdict::NaturallyReductive(NrReason::X2EqualsX23)
        );
        let v = classify_natural_reductivity(
            &pt(1),
            &iv(rat(1, 10), rat(8, 10)),
            &pt(1),
            &iv(rat(102, 100), rat(198, 100)),
        );
        assert_eq!(v, Verdict::NonNaturallyReductive);
        let v = classify_natural_reductivity(
            &pt(1),
            &iv(rat(1, 2), int(2)),
            &pt(1),
            &iv(int(1), int(2)),
        );
        assert_eq!(v, Verdict::Undecided);
    }

    #[test]
    fn certifies_two_roots() {
        let certs = solve(&AnsatzParams::new(4, 3, 3).unwrap(), 128).unwrap();
        assert_eq!(certs.len(), 2);
        for c in &certs {
            assert!(c.positivity.all());
            assert_eq!(c.verdict, Verdict::NonNaturallyReductive);
            assert!(c.residual_bound < pow2(-100));
        }
        assert!(certs[0].root.below(&int(1)) == Some(true));
        assert!(certs[1].root.below(&int(1)) == Some(false));
    }

    #[test]
    fn three_four_four_has_no_roots() {
        let e = solve(&AnsatzParams::new(3, 4, 4).unwrap(), 128).unwrap_err();
        assert_eq!(e, PipelineError::NoPositiveRoots("H1".into()));
        assert_eq!(e.to_string(), "no positive real roots of H1");
    }

    #[test]
    fn low_precision_rejected() {
        assert!(matches!(
            solve(&AnsatzParams::new(4, 3, 3).unwrap(), 40),
            Err(PipelineError::PrecisionTooLow(40))
        ));
    }
}
