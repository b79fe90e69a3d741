//! Large first block: four certified roots separated by rho, 2/3, 1 and 2.

use einstein_flag::pipeline::{check_ordering, rho, sign_certificates, solve, AnsatzParams};
use einstein_flag::rational::decimal;

fn main() {
    let params = AnsatzParams::new(100, 3, 3).unwrap();
    let report = sign_certificates(&params);
    println!("rho = {}", decimal(&rho(&params), 12));
    println!(
        "signs of {} at test points: {:?}",
        report.target, report.sign_points
    );
    println!(
        "roots implied by sign changes: >= {}",
        report.root_lower_bound
    );
    let certs = solve(&params, 128).unwrap();
    for c in &certs {
        println!("{}", c.summary(12));
    }
    let roots: Vec<_> = certs.iter().map(|c| c.root.clone()).collect();
    let ordering = check_ordering(&params, &roots);
    println!(
        "ordering certified: {} (windows {:?})",
        ordering.holds, ordering.windows
    );
}
