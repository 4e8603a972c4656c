// Iterate the Ducci map on a concrete tuple and detect its cycle.

use ducci_periods::ducci::{ducci_step, simulate_binary_period, simulate_period};
use num_bigint::BigUint;

fn show(tuple: &[BigUint]) -> String {
    let parts: Vec<String> = tuple.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn main() {
    let start: Vec<BigUint> = [7u32, 2, 5, 11].iter().map(|&v| BigUint::from(v)).collect();

    println!("first steps from {}", show(&start));
    let mut tuple = start.clone();
    for i in 0..8 {
        tuple = ducci_step(&tuple);
        println!("  step {:2}  {}", i + 1, show(&tuple));
    }

    let cycle = simulate_period(&start, 1_000_000).unwrap();
    println!(
        "cycle: preperiod {}, period {}",
        cycle.preperiod, cycle.period
    );

    // The tuple (0,...,0,1) realizes the maximal period P(n). For binary
    // tuples the dedicated bitset walker is much faster.
    for n in [3u64, 5, 7, 11, 19, 25] {
        let c = simulate_binary_period(n, 10_000_000).unwrap();
        println!("n = {:2}  P(n) = {:6}  (preperiod {})", n, c.period, c.preperiod);
    }
}
