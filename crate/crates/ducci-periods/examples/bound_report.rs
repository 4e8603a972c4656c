// Explicit and asymptotic lower bounds for P(n). For primes with 2 a
// primitive root the explicit bound is (80(n-2))^(-sqrt 2) exp(pi sqrt((n-2)/3));
// the report also evaluates the main terms of the asymptotic estimates and
// the best partition count over all cosets.

use ducci_periods::arith::is_prime_u64;
use ducci_periods::partitions::bound_report;
use ducci_periods::period::period_any;

fn main() {
    println!(
        "{:>4} {:>4} {:>14} {:>14} {:>22} {:>10}",
        "n", "t", "explicit", "main term", "best #P", "P/bound"
    );
    for n in (3u64..=101).step_by(2).filter(|&n| is_prime_u64(n)) {
        let rec = period_any(n, 1).unwrap();
        let rep = bound_report(&rec).unwrap();
        if !rep.prime_with_primitive_root {
            continue;
        }
        let bound = rep.popovych_lower_bound.unwrap();
        println!(
            "{:>4} {:>4} {:>14.6e} {:>14.6e} {:>22} {:>10.3e}",
            rep.n,
            rep.t,
            bound,
            rep.distinct_parts_main_term.unwrap(),
            rep.best_partition_count,
            rep.period_as_f64 / bound
        );
        assert!(rep.popovych_holds.unwrap());
    }
    println!("\nexplicit bound holds for every listed prime");
}
