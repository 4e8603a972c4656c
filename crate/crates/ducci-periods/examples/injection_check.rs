// The partition bound rests on an injection: distinct qualifying subsets U
// of a coset map to distinct field elements (zeta^a + 1)^{Q_U}. This checks
// the claim exhaustively for moderate cosets.

use ducci_periods::partitions::{unit_coset_representatives, verify_injection};

fn main() {
    let mut all_ok = true;
    for n in (3u64..=41).step_by(2) {
        for a in unit_coset_representatives(n).unwrap() {
            let check = verify_injection(a, n, 1, 100_000).unwrap();
            let status = if check.passed() { "distinct" } else { "COLLISION" };
            all_ok &= check.passed();
            println!(
                "n = {:2}  a = {:2}  {:5} subsets, {:5} images  {}",
                check.n, check.a, check.count, check.distinct, status
            );
        }
    }
    assert!(all_ok);
}
