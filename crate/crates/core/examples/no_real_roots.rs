//! (k1, k, p) = (3, 4, 4): the eliminant has no real roots at all.

use einstein_flag::pipeline::{build_system, eliminate_to_h1, solve, AnsatzParams};
use einstein_flag::poly::real_root_count;

fn main() {
    let params = AnsatzParams::new(3, 4, 4).unwrap();
    let h1 = eliminate_to_h1(&build_system(&params)).unwrap().h1;
    println!("H1 = {h1}");
    println!("real roots: {}", real_root_count(&h1));
    match solve(&params, 128) {
        Ok(c) => println!("{} certificates", c.len()),
        Err(e) => println!("{e}"),
    }
}
