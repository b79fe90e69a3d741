//! Certified non-naturally-reductive Einstein metrics for (4,3,3) and (3,3,3).

use einstein_flag::pipeline::{solve, AnsatzParams};
use einstein_flag::rational::decimal;

fn main() {
    for (k1, k, p) in [(4, 3, 3), (3, 3, 3)] {
        let params = AnsatzParams::new(k1, k, p).unwrap();
        let certs = solve(&params, 128).unwrap();
        println!("{params}");
        for c in &certs {
            println!("  {}", c.summary(12));
            println!(
                "    source {}, residual bound {}, positivity {:?}",
                c.source,
                decimal(&c.residual_bound, 4),
                c.positivity
            );
        }
    }
}
