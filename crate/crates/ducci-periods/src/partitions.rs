//! Subset sums over cosets of the doubling map and the partition lower
//! bound for P(n).
//!
//! For odd n, the powers of 2 act on (Z/n)* and split the units into cosets
//! of the subgroup generated by 2. Fix a coset a<2> and list its members as
//! residues s in (0, n), each with the discrete logarithm e(s) defined by
//! s = a 2^(e(s)) mod n. Selecting a subset U of members with residue sum
//! at most t - 1 and raising z^a + 1 to the power Q(U), the sum of 2^(e(s))
//! over U, yields pairwise distinct field elements: the expansions live in
//! the span of 1, z, ..., z^(t-1), which is linearly independent. Counting
//! such subsets therefore bounds the multiplicative order of z^a + 1, and
//! so the period, from below.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u64, is_prime_u64, isqrt_u64};
use crate::gf2::{nth_root_of_unity, FieldCtx};
use crate::period::{order_of_two, PeriodRecord};
use crate::serde_util::biguint_dec;
use crate::Error;

/// One residue of a coset together with its discrete logarithm base 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetMember {
    pub residue: u64,
    pub dlog: u64,
}

/// The coset a<2> inside (Z/n)*, members sorted by residue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetSet {
    pub n: u64,
    pub a: u64,
    pub members: Vec<CosetMember>,
}

impl CosetSet {
    /// Number of members with residue at most `window`.
    pub fn members_within(&self, window: u64) -> u64 {
        self.members
            .iter()
            .filter(|m| m.residue <= window)
            .count() as u64
    }
}

/// The coset a<2> modulo odd n >= 3. Fails unless gcd(a, n) = 1.
pub fn coset_set(a: u64, n: u64) -> Result<CosetSet, Error> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::NotApplicable(format!(
            "cosets of the doubling map need odd n >= 3, got {n}"
        )));
    }
    let a = a % n;
    let g = gcd_u64(a, n);
    if g != 1 {
        return Err(Error::NotCoprime {
            g: BigUint::from(g),
            n: BigUint::from(n),
        });
    }
    let mut members = Vec::new();
    let mut residue = a;
    let mut dlog = 0u64;
    loop {
        members.push(CosetMember { residue, dlog });
        residue = residue * 2 % n;
        dlog += 1;
        if residue == a {
            break;
        }
    }
    members.sort_by_key(|m| m.residue);
    Ok(CosetSet { n, a, members })
}

/// The smallest member of each coset of <2> in (Z/n)*, in increasing order.
pub fn unit_coset_representatives(n: u64) -> Result<Vec<u64>, Error> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::NotApplicable(format!(
            "cosets of the doubling map need odd n >= 3, got {n}"
        )));
    }
    let mut seen = vec![false; n as usize];
    let mut reps = Vec::new();
    for a in 1..n {
        if seen[a as usize] || gcd_u64(a, n) != 1 {
            continue;
        }
        reps.push(a);
        let mut b = a;
        loop {
            seen[b as usize] = true;
            b = b * 2 % n;
            if b == a {
                break;
            }
        }
    }
    Ok(reps)
}

/// Number of subsets of the coset a<2> with residue sum at most t - 1,
/// the empty subset included.
pub fn partition_count(a: u64, n: u64) -> Result<BigUint, Error> {
    let coset = coset_set(a, n)?;
    let t = order_of_two(n)?;
    Ok(count_subsets(&coset, t))
}

fn count_subsets(coset: &CosetSet, t: u64) -> BigUint {
    let bound = (t - 1) as usize;
    let mut ways = vec![BigUint::zero(); bound + 1];
    ways[0] = BigUint::one();
    for m in &coset.members {
        let s = m.residue as usize;
        if s > bound {
            continue;
        }
        for sum in (s..=bound).rev() {
            let add = ways[sum - s].clone();
            ways[sum] += add;
        }
    }
    ways.iter().sum()
}

/// A subset of coset members, its residue sum, and the exponent
/// Q = sum of 2^dlog over the chosen members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionVector {
    /// Chosen residues, increasing.
    pub parts: Vec<u64>,
    pub sum: u64,
    #[serde(with = "biguint_dec")]
    pub q: BigUint,
}

/// All subsets counted by [`partition_count`], sorted by the exponent Q.
/// Fails with [`Error::TooMany`] when the count exceeds `cap`.
pub fn partition_enumerate(a: u64, n: u64, cap: u64) -> Result<Vec<PartitionVector>, Error> {
    let coset = coset_set(a, n)?;
    let t = order_of_two(n)?;
    let count = count_subsets(&coset, t);
    if count > BigUint::from(cap) {
        return Err(Error::TooMany(cap));
    }
    let bound = t - 1;
    let mut out = Vec::new();
    let mut chosen: Vec<CosetMember> = Vec::new();
    enumerate_rec(&coset.members, 0, 0, &mut chosen, bound, &mut out);
    out.sort_by(|u, v| u.q.cmp(&v.q));
    debug_assert_eq!(BigUint::from(out.len()), count);
    Ok(out)
}

fn enumerate_rec(
    members: &[CosetMember],
    idx: usize,
    sum: u64,
    chosen: &mut Vec<CosetMember>,
    bound: u64,
    out: &mut Vec<PartitionVector>,
) {
    if idx == members.len() {
        let mut q = BigUint::zero();
        for m in chosen.iter() {
            q.set_bit(m.dlog, true);
        }
        out.push(PartitionVector {
            parts: chosen.iter().map(|m| m.residue).collect(),
            sum,
            q,
        });
        return;
    }
    enumerate_rec(members, idx + 1, sum, chosen, bound, out);
    let s = members[idx].residue;
    if sum + s <= bound {
        chosen.push(members[idx]);
        enumerate_rec(members, idx + 1, sum + s, chosen, bound, out);
        chosen.pop();
    }
}

/// Result of checking that the subset construction really produces
/// pairwise distinct field elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectionCheck {
    pub n: u64,
    pub a: u64,
    /// Subsets enumerated.
    pub count: u64,
    /// Distinct field elements among their images.
    pub distinct: u64,
}

impl InjectionCheck {
    pub fn passed(&self) -> bool {
        self.count == self.distinct
    }
}

/// Evaluate (z^a + 1)^Q for every enumerated subset and count distinct
/// images. The count is capped to keep the check affordable.
pub fn verify_injection(a: u64, n: u64, seed: u64, cap: u64) -> Result<InjectionCheck, Error> {
    let vectors = partition_enumerate(a, n, cap)?;
    let t = order_of_two(n)?;
    let ctx = FieldCtx::new(t, seed);
    let zeta = nth_root_of_unity(&ctx, n, seed)?;
    let base = zeta.pow_u64(a).add(&ctx.one());
    let mut images = HashSet::new();
    for v in &vectors {
        images.insert(base.pow(&v.q).rep().clone());
    }
    Ok(InjectionCheck {
        n,
        a,
        count: vectors.len() as u64,
        distinct: images.len() as u64,
    })
}

/// The coset representative whose subset count is largest, with the count;
/// ties go to the smallest representative.
pub fn best_coset(n: u64) -> Result<(u64, BigUint), Error> {
    let mut best: Option<(u64, BigUint)> = None;
    for a in unit_coset_representatives(n)? {
        let count = partition_count(a, n)?;
        match &best {
            Some((_, c)) if *c >= count => {}
            _ => best = Some((a, count)),
        }
    }
    Ok(best.expect("n >= 3 has at least the unit coset"))
}

/// Number of partitions of m into distinct positive parts.
pub fn distinct_partition_count(m: u64) -> BigUint {
    distinct_partition_count_filtered(m, |_| true)
}

/// Number of partitions of m into distinct positive parts none of which is
/// divisible by p.
pub fn coprime_distinct_partition_count(m: u64, p: u64) -> BigUint {
    assert!(p >= 2, "divisibility by {p} is not a constraint");
    distinct_partition_count_filtered(m, |part| part % p != 0)
}

fn distinct_partition_count_filtered(m: u64, keep: impl Fn(u64) -> bool) -> BigUint {
    let m = m as usize;
    let mut ways = vec![BigUint::zero(); m + 1];
    ways[0] = BigUint::one();
    for part in 1..=m {
        if !keep(part as u64) {
            continue;
        }
        for sum in (part..=m).rev() {
            let add = ways[sum - part].clone();
            ways[sum] += add;
        }
    }
    ways[m].clone()
}

/// Report of the analytic lower bounds and growth indicators attached to a
/// period record. All floating point fields are descriptive; the exact
/// statements live in [`crate::period::validate_theorems`] and the
/// partition counting above.
///
/// Main term conventions, writing m for the odd part of n:
/// * `popovych_lower_bound`: (80(m-2))^(-sqrt 2) exp(pi sqrt((m-2)/3)),
///   a valid lower bound for P(m) when m is prime with 2 a primitive root.
/// * `distinct_parts_main_term`: exp(pi sqrt(m/3)), the exponential scale
///   of the number of partitions into distinct parts; populated in the same
///   primitive root case.
/// * `prime_power_main_term`: exp(pi sqrt(m(p-1)/(3p))) for prime powers
///   m = p^e, e >= 2, with 2 a primitive root modulo m; the scale once the
///   parts must avoid multiples of p.
/// * `order_ratio_main_term`: exp(t ln 4 / sqrt(2m)), the scale forced by
///   the order t alone.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub t: u64,
    pub prime_with_primitive_root: bool,
    pub popovych_lower_bound: Option<f64>,
    pub popovych_holds: Option<bool>,
    pub distinct_parts_main_term: Option<f64>,
    pub prime_power_main_term: Option<f64>,
    pub order_ratio_main_term: f64,
    /// Exact comparison t^2 > 2n.
    pub threshold_t_exceeds_sqrt_2n: bool,
    /// floor(sqrt(2n)).
    pub window: u64,
    pub best_a: u64,
    #[serde(with = "biguint_dec")]
    pub best_partition_count: BigUint,
    /// Members of the best coset with residue at most the window.
    pub best_coset_in_window: u64,
    pub period_as_f64: f64,
}

/// Assemble the [`BoundReport`] for the odd part of a period record.
pub fn bound_report(rec: &PeriodRecord) -> Result<BoundReport, Error> {
    let m = rec.odd_part();
    if m < 3 {
        return Err(Error::NotApplicable(format!(
            "bound reports need an odd part >= 3, got n = {}",
            rec.n
        )));
    }
    let t = rec.t;
    let mf = m as f64;
    let prime_with_primitive_root = is_prime_u64(m) && t == m - 1;
    let popovych_lower_bound = prime_with_primitive_root.then(|| {
        (80.0 * (mf - 2.0)).powf(-std::f64::consts::SQRT_2)
            * (std::f64::consts::PI * ((mf - 2.0) / 3.0).sqrt()).exp()
    });
    let period_as_f64 = rec
        .odd_period()
        .to_f64()
        .unwrap_or(f64::INFINITY);
    let popovych_holds = popovych_lower_bound.map(|b| period_as_f64 >= b);
    let distinct_parts_main_term =
        prime_with_primitive_root.then(|| (std::f64::consts::PI * (mf / 3.0).sqrt()).exp());
    let prime_power_main_term = prime_power_base(m).and_then(|p| {
        if p == m {
            return None;
        }
        let euler = crate::arith::euler_phi(&BigUint::from(m));
        (BigUint::from(t) == euler).then(|| {
            let pf = p as f64;
            (std::f64::consts::PI * (mf * (pf - 1.0) / (3.0 * pf)).sqrt()).exp()
        })
    });
    let order_ratio_main_term = (t as f64 * 4f64.ln() / (2.0 * mf).sqrt()).exp();
    let threshold = (t as u128) * (t as u128) > 2 * m as u128;
    let window = isqrt_u64(2 * m);
    let (best_a, best_partition_count) = best_coset(m)?;
    let best_coset_in_window = coset_set(best_a, m)?.members_within(window);
    Ok(BoundReport {
        n: rec.n,
        t,
        prime_with_primitive_root,
        popovych_lower_bound,
        popovych_holds,
        distinct_parts_main_term,
        prime_power_main_term,
        order_ratio_main_term,
        threshold_t_exceeds_sqrt_2n: threshold,
        window,
        best_a,
        best_partition_count,
        best_coset_in_window,
        period_as_f64,
    })
}

fn prime_power_base(m: u64) -> Option<u64> {
    let f = crate::arith::factor(&BigUint::from(m));
    let factors = f.factors();
    if factors.len() == 1 {
        factors[0].0.to_u64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::period_algebraic;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Brute force over all subsets of the coset.
    fn oracle_count(a: u64, n: u64) -> u64 {
        let coset = coset_set(a, n).unwrap();
        let t = order_of_two(n).unwrap();
        let k = coset.members.len();
        assert!(k < 32);
        let mut count = 0u64;
        for mask in 0u32..(1 << k) {
            let sum: u64 = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| coset.members[i].residue)
                .sum();
            if sum <= t - 1 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn coset_members_by_hand() {
        let c = coset_set(1, 7).unwrap();
        assert_eq!(
            c.members,
            vec![
                CosetMember { residue: 1, dlog: 0 },
                CosetMember { residue: 2, dlog: 1 },
                CosetMember { residue: 4, dlog: 2 },
            ]
        );
        let c = coset_set(3, 7).unwrap();
        assert_eq!(
            c.members,
            vec![
                CosetMember { residue: 3, dlog: 0 },
                CosetMember { residue: 5, dlog: 2 },
                CosetMember { residue: 6, dlog: 1 },
            ]
        );
        let c = coset_set(1, 5).unwrap();
        assert_eq!(
            c.members,
            vec![
                CosetMember { residue: 1, dlog: 0 },
                CosetMember { residue: 2, dlog: 1 },
                CosetMember { residue: 3, dlog: 3 },
                CosetMember { residue: 4, dlog: 2 },
            ]
        );
    }

    #[test]
    fn coset_rejects_bad_input() {
        assert!(matches!(coset_set(1, 8), Err(Error::NotApplicable(_))));
        assert_eq!(
            coset_set(3, 9),
            Err(Error::NotCoprime {
                g: big(3),
                n: big(9)
            })
        );
        assert!(matches!(
            unit_coset_representatives(6),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn coset_representatives_partition_the_units() {
        assert_eq!(unit_coset_representatives(7).unwrap(), vec![1, 3]);
        assert_eq!(unit_coset_representatives(9).unwrap(), vec![1]);
        assert_eq!(unit_coset_representatives(31).unwrap(), vec![1, 3, 5, 7, 11, 15]);
        for n in (3..80u64).step_by(2) {
            let reps = unit_coset_representatives(n).unwrap();
            let total: usize = reps
                .iter()
                .map(|&a| coset_set(a, n).unwrap().members.len())
                .sum();
            let units = (1..n).filter(|&a| gcd_u64(a, n) == 1).count();
            assert_eq!(total, units, "n = {n}");
        }
    }

    #[test]
    fn counts_by_hand() {
        assert_eq!(partition_count(1, 3).unwrap(), big(2));
        assert_eq!(partition_count(1, 5).unwrap(), big(5));
        assert_eq!(partition_count(1, 7).unwrap(), big(3));
        assert_eq!(partition_count(3, 7).unwrap(), big(1));
    }

    #[test]
    fn counts_match_brute_force() {
        for n in (3..=25u64).step_by(2) {
            for a in unit_coset_representatives(n).unwrap() {
                assert_eq!(
                    partition_count(a, n).unwrap(),
                    big(oracle_count(a, n)),
                    "a = {a}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn large_counts() {
        assert_eq!(partition_count(1, 101).unwrap(), big(4_827_382));
        assert_eq!(partition_count(1, 109).unwrap(), big(99));
        assert_eq!(partition_count(3, 109).unwrap(), big(178));
    }

    #[test]
    fn enumeration_for_five() {
        let vectors = partition_enumerate(1, 5, 100).unwrap();
        let qs: Vec<u64> = vectors.iter().map(|v| v.q.to_u64().unwrap()).collect();
        assert_eq!(qs, vec![0, 1, 2, 3, 8]);
        let parts: Vec<&[u64]> = vectors.iter().map(|v| v.parts.as_slice()).collect();
        assert_eq!(parts, vec![&[][..], &[1], &[2], &[1, 2], &[3]]);
        assert_eq!(vectors[3].sum, 3);
    }

    #[test]
    fn enumeration_is_capped() {
        assert_eq!(
            partition_enumerate(1, 101, 1000),
            Err(Error::TooMany(1000))
        );
    }

    #[test]
    fn enumeration_agrees_with_count() {
        for n in (3..=31u64).step_by(2) {
            for a in unit_coset_representatives(n).unwrap() {
                let count = partition_count(a, n).unwrap();
                let vectors = partition_enumerate(a, n, 10_000).unwrap();
                assert_eq!(big(vectors.len() as u64), count);
                // subsets are pairwise distinct
                let mut qs: Vec<&BigUint> = vectors.iter().map(|v| &v.q).collect();
                qs.dedup();
                assert_eq!(qs.len(), vectors.len());
                for v in &vectors {
                    assert_eq!(v.sum, v.parts.iter().sum::<u64>());
                }
            }
        }
    }

    #[test]
    fn injection_produces_distinct_elements() {
        for (a, n) in [(1u64, 11u64), (1, 13), (3, 7), (1, 19), (3, 109), (1, 37)] {
            let check = verify_injection(a, n, 1, 100_000).unwrap();
            assert!(check.passed(), "a = {a}, n = {n}");
            assert_eq!(
                big(check.count),
                partition_count(a, n).unwrap(),
                "a = {a}, n = {n}"
            );
        }
    }

    #[test]
    fn counts_bound_the_period() {
        for n in (3..=41u64).step_by(2) {
            let period = period_algebraic(n, 1).unwrap().period;
            for a in unit_coset_representatives(n).unwrap() {
                assert!(
                    partition_count(a, n).unwrap() <= period,
                    "a = {a}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn best_coset_examples() {
        assert_eq!(best_coset(109).unwrap(), (3, big(178)));
        assert_eq!(best_coset(7).unwrap(), (1, big(3)));
        assert_eq!(best_coset(101).unwrap(), (1, big(4_827_382)));
        // 9 has a single coset
        assert_eq!(best_coset(9).unwrap().0, 1);
    }

    #[test]
    fn distinct_partition_counts() {
        let q: Vec<u64> = (0..=11)
            .map(|m| distinct_partition_count(m).to_u64().unwrap())
            .collect();
        assert_eq!(q, vec![1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12]);
        assert_eq!(q.iter().sum::<u64>(), 55);
        assert_eq!(distinct_partition_count(100), big(444_793));
    }

    #[test]
    fn coprime_distinct_partition_counts() {
        // partitions of 5 into distinct parts avoiding multiples of 3:
        // 5 and 1 + 4
        assert_eq!(coprime_distinct_partition_count(5, 3), big(2));
        assert_eq!(coprime_distinct_partition_count(0, 5), big(1));
        // no constraint bites when p exceeds m
        for m in 0..=12u64 {
            assert_eq!(
                coprime_distinct_partition_count(m, 13),
                distinct_partition_count(m)
            );
        }
    }

    #[test]
    fn coprime_counts_match_brute_force() {
        // subsets of {1, ..., 12}; parts above m never matter for sum m
        for m in 0..=12u64 {
            for p in [2u64, 3, 5] {
                let mut count = 0u64;
                for mask in 0u32..(1 << 12) {
                    let parts: Vec<u64> = (0..12)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| i as u64 + 1)
                        .collect();
                    if parts.iter().sum::<u64>() == m && parts.iter().all(|&s| s % p != 0) {
                        count += 1;
                    }
                }
                assert_eq!(
                    coprime_distinct_partition_count(m, p),
                    big(count),
                    "m = {m}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn bound_report_for_19() {
        let rec = period_algebraic(19, 1).unwrap();
        let report = bound_report(&rec).unwrap();
        assert!(report.prime_with_primitive_root);
        let bound = report.popovych_lower_bound.unwrap();
        assert!(bound > 0.05 && bound < 0.08, "bound = {bound}");
        assert_eq!(report.popovych_holds, Some(true));
        assert_eq!(report.window, 6);
        assert!(report.threshold_t_exceeds_sqrt_2n);
        assert_eq!(report.best_a, 1);
        assert!(report.period_as_f64 > 9708.0 && report.period_as_f64 < 9710.0);
    }

    #[test]
    fn bound_report_flags() {
        // 31 is prime but 2 has order 5, far from primitive
        let rec = period_algebraic(31, 1).unwrap();
        let report = bound_report(&rec).unwrap();
        assert!(!report.prime_with_primitive_root);
        assert_eq!(report.popovych_lower_bound, None);
        assert_eq!(report.prime_power_main_term, None);
        assert!(!report.threshold_t_exceeds_sqrt_2n);

        // 25 = 5^2 with 2 a primitive root
        let rec = period_algebraic(25, 1).unwrap();
        let report = bound_report(&rec).unwrap();
        assert!(!report.prime_with_primitive_root);
        assert!(report.prime_power_main_term.is_some());
        assert_eq!(report.t, 20);

        let rec = crate::period::period_any(2, 1).unwrap();
        assert!(matches!(bound_report(&rec), Err(Error::NotApplicable(_))));
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn dp_count_matches_brute_force(n in (3u64..40).prop_filter("odd", |n| n % 2 == 1)) {
            for a in unit_coset_representatives(n).unwrap() {
                if coset_set(a, n).unwrap().members.len() < 25 {
                    prop_assert_eq!(
                        partition_count(a, n).unwrap(),
                        BigUint::from(oracle_count(a, n))
                    );
                }
            }
        }
    }
}
