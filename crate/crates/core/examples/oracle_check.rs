//! Seeded comparison of closed forms and the matrix oracle for small n.

use einstein_flag::selfcheck::{run_checks, CheckOptions};

fn main() {
    let report = run_checks(&CheckOptions {
        max_n: 10,
        samples: 10,
        seed: 1,
        ..CheckOptions::default()
    });
    println!("{} partitions", report.partitions.len());
    println!(
        "worst: triples {:.2e}, ricci {:.2e}, off-block {:.2e}",
        report.triples_worst, report.ricci_worst, report.block_worst
    );
    println!("{}", report.summary());
}
