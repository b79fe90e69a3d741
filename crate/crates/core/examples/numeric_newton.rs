//! Uncertified Newton search on (4,3,3) and on four equal blocks.

use einstein_flag::partition::FlagPartition;
use einstein_flag::pipeline::{numeric_solve_general, NewtonOptions, StartSpec};

fn main() {
    let opts = NewtonOptions::default();
    let part: FlagPartition = "4,3,3".parse().unwrap();
    let spec = StartSpec::Symmetric {
        values: vec![0.05, 0.1, 0.2, 0.4, 0.8, 1.2, 1.6],
    };
    for s in numeric_solve_general(&part, &spec, &opts) {
        println!(
            "{part} lambda {:.12} residual {:.1e} {:?}",
            s.lambda, s.residual, s.metric
        );
    }
    let part: FlagPartition = "3,3,3,3".parse().unwrap();
    let spec = StartSpec::Random {
        count: 40,
        seed: 17,
        lo: 0.1,
        hi: 2.0,
    };
    let sols = numeric_solve_general(&part, &spec, &opts);
    println!(
        "{part}: {} distinct solutions from 40 random starts",
        sols.len()
    );
    for s in sols {
        println!("  lambda {:.12} residual {:.1e}", s.lambda, s.residual);
    }
}
