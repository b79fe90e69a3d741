//! Exact root isolation, refinement and a resultant.

use einstein_flag::poly::{isolate_roots, resultant, MultiPoly, UniPoly};
use einstein_flag::rational::{decimal, hex_float, int};

fn main() {
    // (x^2 - 2)^2 (x - 3)
    let p = UniPoly::from_ints(&[-2, 0, 1])
        .pow(2)
        .mul(&UniPoly::from_ints(&[-3, 1]));
    println!("p = {p}");
    for r in isolate_roots(&p) {
        let fine = r.refine(60);
        println!(
            "root in [{}, {}] multiplicity {} -> {} ({})",
            r.lo(),
            r.hi(),
            r.multiplicity,
            decimal(&fine.value(), 15),
            hex_float(&fine.value()).unwrap()
        );
    }
    let vars = ["x", "y"];
    let x = MultiPoly::var(&vars, "x").unwrap();
    let y = MultiPoly::var(&vars, "y").unwrap();
    let circle = &(&x.pow(2) + &y.pow(2)) - &MultiPoly::constant(&vars, int(5));
    let line = &(&x - &y) - &MultiPoly::constant(&vars, int(1));
    println!(
        "Res_y(circle, line) = {}",
        resultant(&circle, &line, "y").unwrap()
    );
}
