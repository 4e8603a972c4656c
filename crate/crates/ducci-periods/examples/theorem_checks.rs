// Check every structural statement about P(n) across a range of lengths:
// divisibility by B1 and B2, the n | P(n) relation, the Mersenne
// characterization of P(n) = n, and the quadratic growth bound.

use ducci_periods::period::{period_any, validate_theorems};

fn main() {
    let mut failures = 0u64;
    for n in 1u64..=60 {
        let rec = period_any(n, 1).unwrap();
        let checks = validate_theorems(&rec);
        let bad: Vec<&str> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.clause)
            .collect();
        if bad.is_empty() {
            println!("n = {:3}  {} clauses ok", n, checks.len());
        } else {
            failures += bad.len() as u64;
            println!("n = {:3}  FAIL {:?}", n, bad);
        }
    }
    println!();
    if failures == 0 {
        println!("all clauses hold on 1..=60");
    } else {
        println!("{} clause failures", failures);
        std::process::exit(1);
    }
}
