//! Closed-form structure-constant sums next to the matrix-bracket values.

use einstein_flag::oracle::{build_basis, numeric_triples};
use einstein_flag::partition::FlagPartition;
use einstein_flag::rational::to_f64;
use einstein_flag::triples::full_triple_table;

fn main() {
    let part: FlagPartition = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "4,3,3".into())
        .parse()
        .unwrap();
    let table = full_triple_table(&part);
    let numeric = numeric_triples(&build_basis(&part).unwrap());
    println!("{part}: {} nonzero triples", table.len());
    for (t, v) in table.iter() {
        let labels: Vec<String> = t.iter().map(|m| m.label()).collect();
        println!(
            "[{}|{} {}] = {v:<8} matrices: {:.15}",
            labels[0],
            labels[1],
            labels[2],
            numeric.get(t[0], t[1], t[2])
        );
        assert!((to_f64(v) - numeric.get(t[0], t[1], t[2])).abs() < 1e-12);
    }
    println!("{}", serde_json::to_string(&table.to_json()).unwrap());
}
