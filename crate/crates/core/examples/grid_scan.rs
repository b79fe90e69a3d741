//! Root counts over a small parameter grid, one CSV row per cell.

use einstein_flag::pipeline::{scan_row, AnsatzParams, CSV_HEADER};
use rayon::prelude::*;

fn main() {
    let mut cells = Vec::new();
    for k1 in 3..=7 {
        for k in 3..=5 {
            cells.push(AnsatzParams::new(k1, k, 3).unwrap());
        }
    }
    let rows: Vec<_> = cells.par_iter().map(|c| scan_row(c, 64, 8)).collect();
    println!("{CSV_HEADER}");
    for r in rows {
        println!("{}", r.to_csv());
    }
}
