// Acceptance checks, one test per criterion. Each prints a single PASS or
// FAIL line so the run reads as a checklist under --nocapture.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;

use ducci_periods::ducci::simulate_binary_period;
use ducci_periods::partitions::{
    best_coset, bound_report, distinct_partition_count, partition_count,
    unit_coset_representatives, verify_injection,
};
use ducci_periods::period::{mersenne_period_scan, period_any};
use ducci_periods::report::{compute_table, render_table_csv, REFERENCE_TABLE_CSV};

fn report(idx: u32, name: &str, passed: bool) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!("acceptance {idx:02} {name}: {verdict}");
    assert!(passed, "acceptance {idx:02} {name} failed");
}

fn odd_records(max_n: u64) -> Vec<ducci_periods::period::PeriodRecord> {
    (3..=max_n)
        .step_by(2)
        .map(|n| period_any(n, 1).unwrap())
        .collect()
}

#[test]
fn acceptance_01_reference_table_reproduced() {
    let start = Instant::now();
    let rows = compute_table(101, 1).unwrap();
    let csv = render_table_csv(&rows);
    let elapsed = start.elapsed();

    let p101 = rows.iter().find(|r| r.n == 101 && r.a == 1).unwrap();
    let p83 = rows.iter().find(|r| r.n == 83 && r.a == 1).unwrap();
    let spot = p101.period == BigUint::from(37905296863701641u64)
        && p101.t == 100
        && p101.partition_count == BigUint::from(4827382u64)
        && p83.period == BigUint::from(182518930210733u64);

    println!("acceptance 01 runtime: {:.2?}", elapsed);
    report(
        1,
        "reference table reproduced byte for byte",
        csv == REFERENCE_TABLE_CSV && spot,
    );
}

#[test]
fn acceptance_02_length_109_facts() {
    let start = Instant::now();
    let count = partition_count(1, 109).unwrap();
    let best = best_coset(109).unwrap();
    let elapsed = start.elapsed();
    println!("acceptance 02 runtime: {:.2?}", elapsed);
    report(
        2,
        "length 109 partition counts",
        count == BigUint::from(99u32) && best == (3, BigUint::from(178u32)),
    );
}

#[test]
fn acceptance_03_divisibility_bounds() {
    let records = odd_records(101);
    let b1_ok = records.iter().all(|r| (&r.b1 % &r.period).is_zero());
    let b2_ok = records
        .iter()
        .filter(|r| r.with_minus_one)
        .all(|r| (r.b2.as_ref().unwrap() % &r.period).is_zero());

    let r37 = records.iter().find(|r| r.n == 37).unwrap();
    let b2 = r37.b2.clone().unwrap();
    let thirds_ok = (&b2 % 3u32).is_zero()
        && ((&b2 / 3u32) % &r37.period).is_zero()
        && r37.pell_no_odd == Some(true);

    report(
        3,
        "period divides both bounds, and a third of B2 at n = 37",
        b1_ok && b2_ok && thirds_ok,
    );
}

#[test]
fn acceptance_04_growth_and_mersenne() {
    let records = odd_records(101);
    let n_divides = records
        .iter()
        .all(|r| (&r.period % BigUint::from(r.n)).is_zero());

    let scan = mersenne_period_scan(1025).unwrap();
    let scan_ok = scan == vec![3, 7, 15, 31, 63, 127, 255, 511, 1023];

    let with_minus_one: Vec<_> = records.iter().filter(|r| r.with_minus_one).collect();
    let quadratic = BigUint::from;
    let growth_ok = with_minus_one
        .iter()
        .all(|r| r.period >= quadratic(r.n * (r.n - 2)));
    let equality: BTreeSet<u64> = with_minus_one
        .iter()
        .filter(|r| r.period == quadratic(r.n * (r.n - 2)))
        .map(|r| r.n)
        .collect();
    let equality_ok = equality == BTreeSet::from([3, 5, 9, 17, 33, 65]);

    report(
        4,
        "length divides period, Mersenne scan, quadratic growth",
        n_divides && scan_ok && growth_ok && equality_ok,
    );
}

#[test]
fn acceptance_05_partition_counts_bound_period() {
    let rows = compute_table(101, 5).unwrap();
    let ok = rows.iter().all(|r| r.partition_count <= r.period);
    report(5, "every partition count bounds its period", ok);
}

#[test]
fn acceptance_06_simulation_matches_algebra() {
    let start = Instant::now();
    let ok = (3u64..=37).step_by(2).all(|n| {
        let rec = period_any(n, 1).unwrap();
        let sim = simulate_binary_period(n, 10_000_000).unwrap();
        rec.period == BigUint::from(sim.period)
    });
    let elapsed = start.elapsed();
    println!("acceptance 06 runtime: {:.2?}", elapsed);
    report(6, "binary simulation agrees with the field computation", ok);
}

#[test]
fn acceptance_07_injection_exhaustive() {
    let cap = 10_000u64;
    let mut checked = 0u64;
    let mut ok = true;
    for n in (3u64..=61).step_by(2) {
        for a in unit_coset_representatives(n).unwrap() {
            if partition_count(a, n).unwrap() > BigUint::from(cap) {
                continue;
            }
            ok &= verify_injection(a, n, 1, cap).unwrap().passed();
            checked += 1;
        }
    }
    println!("acceptance 07 checked {checked} cosets");
    report(7, "subset images stay distinct in the field", ok && checked > 0);
}

#[test]
fn acceptance_08_explicit_bound_with_margin() {
    let mut ok = true;
    let mut primes = 0u32;
    for rec in odd_records(101) {
        let rep = bound_report(&rec).unwrap();
        if !rep.prime_with_primitive_root {
            continue;
        }
        primes += 1;
        ok &= rep.period_as_f64 >= 10.0 * rep.popovych_lower_bound.unwrap();
    }
    report(
        8,
        "explicit lower bound holds with a tenfold margin",
        ok && primes > 0,
    );
}

#[test]
fn acceptance_09_partition_sum_identity() {
    let mut ok = true;
    let mut primes = 0u32;
    for p in (3u64..=61).step_by(2) {
        if !ducci_periods::arith::is_prime_u64(p) {
            continue;
        }
        let rec = period_any(p, 1).unwrap();
        if rec.t != p - 1 {
            continue;
        }
        primes += 1;
        let sum: BigUint = (0..=p - 2).map(distinct_partition_count).sum();
        ok &= sum == partition_count(1, p).unwrap();
    }
    report(
        9,
        "counts equal sums of distinct-part partition numbers",
        ok && primes > 0,
    );
}

#[test]
fn acceptance_10_determinism_across_seeds_and_threads() {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| compute_table(101, 1).unwrap());
    let quad = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| compute_table(101, 99).unwrap());
    report(
        10,
        "output independent of seed and thread count",
        render_table_csv(&single) == render_table_csv(&quad),
    );
}
