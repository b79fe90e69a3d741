//! Uncertified damped Newton search for Einstein metrics on any partition.
//!
//! Unknowns are the logarithms of the module parameters, which keeps every
//! iterate positive. The first off-diagonal parameter is held at 1 and the
//! equations are `r_m - r_{m0} = 0` for every module `m` other than the
//! first one `m0`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::partition::{FlagPartition, ModuleIndex};
use crate::rational::{from_f64, to_f64, Rational};
use crate::ricci::{ricci_general, MetricParams};

#[derive(Debug, Clone, PartialEq)]
pub enum StartSpec {
    /// Every combination `(a, b, c)` from `values` with `a` on `m_1`, `b`
    /// on the other diagonal modules, `1` on `m_1j` and `c` on `m_ij`.
    Symmetric {
        values: Vec<f64>,
    },
    /// `count` starts with parameters uniform in `[lo, hi]`.
    Random {
        count: usize,
        seed: u64,
        lo: f64,
        hi: f64,
    },
    Explicit(Vec<BTreeMap<ModuleIndex, f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    pub tolerance: f64,
    pub dedup_tolerance: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            max_iterations: 100,
            tolerance: 1e-12,
            dedup_tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericSolution {
    pub metric: BTreeMap<String, f64>,
    pub lambda: f64,
    pub residual: f64,
    pub iterations: usize,
    /// Always false: these points carry no certificate.
    pub certified: bool,
}

impl NumericSolution {
    pub fn get(&self, m: ModuleIndex) -> f64 {
        self.metric[&m.label()]
    }

    /// `max |r_m - r_{m0}|` recomputed in exact arithmetic at the binary
    /// values of the parameters.
    pub fn exact_residual(&self, part: &FlagPartition) -> Option<Rational> {
        let metric = MetricParams::from_fn(part, |m| {
            from_f64(self.get(m)).unwrap_or_else(num_traits::Zero::zero)
        })
        .ok()?;
        let r = ricci_general(part, &metric).ok()?;
        let first = r.get(part.modules()[0]).clone();
        r.iter()
            .map(|(_, v)| num_traits::Signed::abs(&(v - &first)))
            .max()
    }
}

struct Problem<'a> {
    part: &'a FlagPartition,
    modules: Vec<ModuleIndex>,
    gauge: usize,
}

impl Problem<'_> {
    fn free(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.modules.len()).filter(move |i| *i != self.gauge)
    }

    fn metric(&self, y: &DVector<f64>) -> BTreeMap<ModuleIndex, f64> {
        let mut x = BTreeMap::new();
        x.insert(self.modules[self.gauge], 1.0);
        for (slot, i) in self.free().enumerate() {
            x.insert(self.modules[i], y[slot].exp());
        }
        x
    }

    fn ricci(&self, y: &DVector<f64>) -> Option<Vec<f64>> {
        let metric = MetricParams::new(self.part, self.metric(y)).ok()?;
        let r = ricci_general(self.part, &metric).ok()?;
        Some(self.modules.iter().map(|m| *r.get(*m)).collect())
    }

    fn residual(&self, y: &DVector<f64>) -> Option<DVector<f64>> {
        let r = self.ricci(y)?;
        let f: Vec<f64> = r[1..].iter().map(|v| v - r[0]).collect();
        f.iter()
            .all(|v| v.is_finite())
            .then(|| DVector::from_vec(f))
    }

    fn jacobian(&self, y: &DVector<f64>) -> Option<DMatrix<f64>> {
        let n = y.len();
        let mut j = DMatrix::zeros(n, n);
        for c in 0..n {
            let h = 1e-6 * y[c].abs().max(1.0);
            let mut yp = y.clone();
            let mut ym = y.clone();
            yp[c] += h;
            ym[c] -= h;
            let d = (self.residual(&yp)? - self.residual(&ym)?) / (2.0 * h);
            j.set_column(c, &d);
        }
        Some(j)
    }
}

fn norm_inf(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn newton(
    problem: &Problem,
    start: &BTreeMap<ModuleIndex, f64>,
    opts: &NewtonOptions,
) -> Option<(DVector<f64>, usize)> {
    let scale = start
        .get(&problem.modules[problem.gauge])
        .copied()
        .unwrap_or(1.0);
    let mut y = DVector::from_iterator(
        problem.modules.len() - 1,
        problem
            .free()
            .map(|i| (start.get(&problem.modules[i]).copied().unwrap_or(1.0) / scale).ln()),
    );
    let mut f = problem.residual(&y)?;
    for it in 0..opts.max_iterations {
        if norm_inf(&f) < opts.tolerance * 1e-2 {
            return Some((y, it));
        }
        let j = problem.jacobian(&y)?;
        let step = j.lu().solve(&(-&f))?;
        let mut t = 1.0;
        let current = f.norm();
        loop {
            let cand = &y + &step * t;
            if let Some(fc) = problem.residual(&cand) {
                if fc.norm() < current || t < 1e-3 {
                    y = cand;
                    f = fc;
                    break;
                }
            }
            t *= 0.5;
            if t < 1e-6 {
                return None;
            }
        }
        if norm_inf(&y) > 40.0 {
            return None;
        }
    }
    (norm_inf(&f) < opts.tolerance).then_some((y, opts.max_iterations))
}

fn starts(part: &FlagPartition, spec: &StartSpec) -> Vec<BTreeMap<ModuleIndex, f64>> {
    let modules = part.modules();
    match spec {
        StartSpec::Symmetric { values } => {
            let mut out = Vec::new();
            for a in values {
                for b in values {
                    for c in values {
                        out.push(
                            modules
                                .iter()
                                .map(|m| {
                                    let v = match m {
                                        ModuleIndex::Diag(1) => *a,
                                        ModuleIndex::Diag(_) => *b,
                                        ModuleIndex::OffDiag(1, _) => 1.0,
                                        ModuleIndex::OffDiag(_, _) => *c,
                                    };
                                    (*m, v)
                                })
                                .collect(),
                        );
                    }
                }
            }
            out
        }
        StartSpec::Random {
            count,
            seed,
            lo,
            hi,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..*count)
                .map(|_| {
                    modules
                        .iter()
                        .map(|m| (*m, rng.gen_range(*lo..=*hi)))
                        .collect()
                })
                .collect()
        }
        StartSpec::Explicit(v) => v.clone(),
    }
}

/// Converged, deduplicated solutions in start order. Empty is a legal
/// outcome.
pub fn numeric_solve_general(
    part: &FlagPartition,
    spec: &StartSpec,
    opts: &NewtonOptions,
) -> Vec<NumericSolution> {
    let modules = part.modules();
    let Some(gauge) = modules.iter().position(|m| !m.is_diag()) else {
        return Vec::new();
    };
    let problem = Problem {
        part,
        modules: modules.clone(),
        gauge,
    };
    let mut found: Vec<(BTreeMap<ModuleIndex, f64>, NumericSolution)> = Vec::new();
    for s in starts(part, spec) {
        let Some((y, iterations)) = newton(&problem, &s, opts) else {
            continue;
        };
        let Some(r) = problem.ricci(&y) else { continue };
        let residual = r.iter().fold(0.0f64, |m, v| m.max((v - r[0]).abs()));
        if !(residual < opts.tolerance) {
            continue;
        }
        let metric = problem.metric(&y);
        let dup = found.iter().any(|(other, _)| {
            metric
                .iter()
                .all(|(m, v)| (v - other[m]).abs() < opts.dedup_tolerance)
        });
        if dup {
            continue;
        }
        let sol = NumericSolution {
            metric: metric.iter().map(|(m, v)| (m.label(), *v)).collect(),
            lambda: r[0],
            residual,
            iterations,
            certified: false,
        };
        found.push((metric, sol));
    }
    found.into_iter().map(|(_, s)| s).collect()
}

/// Distance between a numeric solution and a point given on the symmetric
/// ansatz, over every module.
pub fn symmetric_distance(
    sol: &NumericSolution,
    part: &FlagPartition,
    x1: &Rational,
    x2: &Rational,
    x23: &Rational,
) -> f64 {
    part.modules()
        .iter()
        .map(|m| {
            let want = match m {
                ModuleIndex::Diag(1) => to_f64(x1),
                ModuleIndex::Diag(_) => to_f64(x2),
                ModuleIndex::OffDiag(1, _) => 1.0,
                ModuleIndex::OffDiag(_, _) => to_f64(x23),
            };
            (sol.get(*m) - want).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bi_invariant_start_stays_put() {
        let part: FlagPartition = "4,3,3".parse().unwrap();
        let start = part.modules().into_iter().map(|m| (m, 1.0)).collect();
        let sols = numeric_solve_general(
            &part,
            &StartSpec::Explicit(vec![start]),
            &NewtonOptions::default(),
        );
        assert_eq!(sols.len(), 1);
        assert!((sols[0].lambda - 0.25).abs() < 1e-14);
        assert!(!sols[0].certified);
    }

    #[test]
    fn random_starts_are_reproducible() {
        let part: FlagPartition = "3,3,3,3".parse().unwrap();
        let spec = StartSpec::Random {
            count: 6,
            seed: 7,
            lo: 0.3,
            hi: 2.0,
        };
        let a = numeric_solve_general(&part, &spec, &NewtonOptions::default());
        let b = numeric_solve_general(&part, &spec, &NewtonOptions::default());
        assert_eq!(a, b);
        for s in &a {
            assert!(s.residual < 1e-12);
        }
    }
}
