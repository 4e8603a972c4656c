// P(n) = n happens exactly when n has the form 2^k - 1. The scan decides
// each n from the order of X + 1 modulo 1 + X + ... + X^(n-1), which needs
// no factoring of 2^t - 1 and stays fast well past n = 1000.

use ducci_periods::period::{is_power_of_two_plus_one, mersenne_period_scan, period_any};

fn main() {
    let hits = mersenne_period_scan(1025).unwrap();
    println!("odd n <= 1025 with P(n) = n: {:?}", hits);
    assert!(hits.iter().all(|&n| (n + 1).is_power_of_two()));

    // The companion boundary case: P(n) = n(n - 2) characterizes n = 2^r + 1.
    println!("\nn with P(n) = n(n - 2) among odd n <= 101:");
    for n in (3u64..=101).step_by(2) {
        let rec = period_any(n, 1).unwrap();
        if rec.period == (n * (n - 2)).into() {
            println!("  n = {:3}  P = {:6}  (2^r + 1: {})", n, rec.period, is_power_of_two_plus_one(n));
        }
    }
}
