//! Ricci components of a diagonal-block metric on SO(10) for blocks (4,3,3).

use einstein_flag::partition::{FlagPartition, ModuleIndex};
use einstein_flag::rational::{decimal, int, rat};
use einstein_flag::ricci::{ricci_general, MetricParams};

fn main() {
    let part: FlagPartition = "4,3,3".parse().unwrap();
    let metric = MetricParams::from_fn(&part, |m| match m {
        ModuleIndex::Diag(i) => rat(i as i64, 2),
        ModuleIndex::OffDiag(_, j) => int(j as i64 - 1),
    })
    .unwrap();
    for (m, v) in metric.iter() {
        println!("x_{} = {v}", m.label());
    }
    let r = ricci_general(&part, &metric).unwrap();
    for (m, v) in r.iter() {
        println!("r_{} = {v} ~ {}", m.label(), decimal(v, 12));
    }
}
