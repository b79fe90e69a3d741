//! Comparison of the closed forms against the matrix oracle over many
//! partitions and seeded random metrics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::oracle::{
    build_basis, max_off_block, milnor_ricci_from_constants, module_components, numeric_triples,
};
use crate::partition::{partitions_up_to, FlagPartition};
use crate::rational::to_f64;
use crate::ricci::{ricci_general, MetricParams};
use crate::triples::full_triple_table;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOptions {
    pub max_n: usize,
    /// Random metrics per partition for the Ricci comparison.
    pub samples: usize,
    pub seed: u64,
    pub triple_tolerance: f64,
    pub ricci_tolerance: f64,
    pub block_tolerance: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_n: 12,
            samples: 100,
            seed: 0,
            triple_tolerance: 1e-12,
            ricci_tolerance: 1e-10,
            block_tolerance: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub partitions: Vec<String>,
    pub triples_worst: f64,
    pub ricci_worst: f64,
    pub block_worst: f64,
    pub triples_pass: bool,
    pub ricci_pass: bool,
    pub block_pass: bool,
    pub failures: Vec<String>,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.triples_pass && self.ricci_pass && self.block_pass
    }

    pub fn summary(&self) -> String {
        format!(
            "triples: {}, ricci: {}, block-diagonality: {}",
            verdict(self.triples_pass),
            verdict(self.ricci_pass),
            verdict(self.block_pass)
        )
    }
}

/// Seeded metric with every parameter uniform in `[0.3, 3]`.
pub fn random_metric(part: &FlagPartition, rng: &mut ChaCha8Rng) -> MetricParams<f64> {
    MetricParams::from_fn(part, |_| rng.gen_range(0.3..3.0)).expect("positive values")
}

/// Runs the triple, Ricci and block-diagonality comparisons for every
/// partition with `n <= max_n`.
pub fn run_checks(opts: &CheckOptions) -> CheckReport {
    let parts = partitions_up_to(opts.max_n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = CheckReport {
        partitions: parts.iter().map(|p| p.to_string()).collect(),
        triples_worst: 0.0,
        ricci_worst: 0.0,
        block_worst: 0.0,
        triples_pass: true,
        ricci_pass: true,
        block_pass: true,
        failures: Vec::new(),
    };
    for part in &parts {
        let basis = build_basis(part).expect("n within the basis cap");
        let numeric = numeric_triples(&basis);
        let exact = full_triple_table(part);
        for (t, v) in &numeric.values {
            let diff = (v - to_f64(&exact.get(t[0], t[1], t[2]))).abs();
            report.triples_worst = report.triples_worst.max(diff);
            if diff > opts.triple_tolerance {
                report.triples_pass = false;
                report
                    .failures
                    .push(format!("{part}: triple {t:?} off by {diff:e}"));
            }
        }
        let constants = basis.structure_constants();
        for _ in 0..opts.samples {
            let metric = random_metric(part, &mut rng);
            let ric =
                milnor_ricci_from_constants(&basis, &constants, &metric).expect("positive metric");
            let closed = ricci_general(part, &metric).expect("valid metric");
            for (m, vals) in module_components(&basis, &ric) {
                let want = *closed.get(m);
                let diff = vals.iter().fold(0.0f64, |w, v| w.max((v - want).abs()));
                report.ricci_worst = report.ricci_worst.max(diff);
                if diff > opts.ricci_tolerance {
                    report.ricci_pass = false;
                    report
                        .failures
                        .push(format!("{part}: r_{m} off by {diff:e}"));
                }
            }
            let off = max_off_block(&basis, &ric);
            report.block_worst = report.block_worst.max(off);
            if off > opts.block_tolerance {
                report.block_pass = false;
                report
                    .failures
                    .push(format!("{part}: off-block Ricci entry {off:e}"));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_reproducible() {
        let opts = CheckOptions {
            max_n: 9,
            samples: 3,
            seed: 11,
            ..CheckOptions::default()
        };
        let a = run_checks(&opts);
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!(
            a.summary(),
            "triples: PASS, ricci: PASS, block-diagonality: PASS"
        );
        assert_eq!(a, run_checks(&opts));
        assert!(a.partitions.iter().all(|p| p != "(5,5)"));
    }
}
