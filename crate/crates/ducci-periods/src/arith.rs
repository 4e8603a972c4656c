//! Exact integer arithmetic: primality, factorization, multiplicative
//! orders, totients.
//!
//! Everything here is deterministic. Factoring runs trial division by all
//! primes below 10^5 and then Pollard rho (Brent variant) with the fixed
//! polynomial schedule x^2 + c, c = 1, 2, 3, ... so repeated runs always
//! split composites the same way.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

const TRIAL_DIVISION_LIMIT: u64 = 100_000;

/// Miller-Rabin witnesses used by [`is_prime`]. This battery is known to be
/// deterministic for every input below 3.3 * 10^24, which covers the whole
/// 64-bit range with room to spare.
pub const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// A fully factored positive integer.
///
/// `value` always equals the product of `p^e` over `factors`, the primes are
/// strictly increasing, and every base passes [`is_prime`]. All three
/// properties are asserted on construction, so downstream code can rely on a
/// `Factorization` without rechecking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    fn from_parts(value: BigUint, factors: Vec<(BigUint, u32)>) -> Self {
        let mut product = BigUint::one();
        let mut prev: Option<&BigUint> = None;
        for (p, e) in &factors {
            assert!(*e > 0, "zero exponent for prime {p}");
            if let Some(q) = prev {
                assert!(q < p, "prime factors out of order: {q} before {p}");
            }
            assert!(is_prime(p), "claimed factor {p} is not prime");
            product *= p.pow(*e);
            prev = Some(p);
        }
        assert_eq!(product, value, "factor product does not reassemble the value");
        Factorization { value, factors }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit];
        let mut primes = Vec::new();
        for p in 2..limit {
            if !composite[p] {
                primes.push(p as u64);
                let mut q = p * p;
                while q < limit {
                    composite[q] = true;
                    q += p;
                }
            }
        }
        primes
    })
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Floor of the square root.
pub(crate) fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && r.checked_mul(r).map_or(true, |s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |s| s <= n) {
        r += 1;
    }
    r
}

/// Deterministic Miller-Rabin primality for machine integers.
pub fn is_prime_u64(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if m == p {
            return true;
        }
        if m % p == 0 {
            return false;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'witness: for &w in &MR_WITNESSES {
        let mut x = pow_mod_u64(w, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(m: &BigUint, witness: u64) -> bool {
    let one = BigUint::one();
    let m_minus_1 = m - &one;
    let s = m_minus_1.trailing_zeros().expect("m is odd and > 2");
    let d = &m_minus_1 >> s;
    let mut x = BigUint::from(witness).modpow(&d, m);
    if x == one || x == m_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigUint::from(2u32), m);
        if x == m_minus_1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let mut a = a.mod_floor(&BigInt::from(n.clone()));
    let mut n = BigInt::from(n.clone());
    let mut result = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u8().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u8().unwrap() == 3 && (&n % 4u32).to_u8().unwrap() == 3 {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn half_mod(x: &BigInt, m: &BigInt) -> BigInt {
    if x.is_even() {
        x >> 1
    } else {
        (x + m) >> 1
    }
}

/// Strong Lucas probable prime test with Selfridge's parameter choice:
/// D is the first of 5, -7, 9, -11, ... with Jacobi(D, m) = -1, P = 1 and
/// Q = (1 - D) / 4.
fn strong_lucas_probable_prime(m: &BigUint) -> bool {
    if m.sqrt().pow(2) == *m {
        return false;
    }
    let mi = BigInt::from(m.clone());
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, m) {
            -1 => break,
            0 => {
                if d.abs() < mi {
                    return false;
                }
            }
            _ => {}
        }
        d = if d.is_positive() {
            -(&d + 2i32)
        } else {
            -(&d - 2i32)
        };
    }
    let q = (BigInt::one() - &d) / 4i32;
    let n_plus_1: BigUint = m + 1u32;
    let s = n_plus_1.trailing_zeros().expect("even");
    let idx = &n_plus_1 >> s;

    // Lucas sequences U_k, V_k with P = 1, tracking Q^k, by the binary chain
    // for k = idx.
    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = q.mod_floor(&mi);
    let bits = idx.bits();
    for i in (0..bits - 1).rev() {
        let uv = (&u * &v).mod_floor(&mi);
        v = (&v * &v - (&qk << 1u32)).mod_floor(&mi);
        u = uv;
        qk = (&qk * &qk).mod_floor(&mi);
        if idx.bit(i) {
            let u_next = half_mod(&(&u + &v), &mi).mod_floor(&mi);
            let v_next = half_mod(&(&d * &u + &v), &mi).mod_floor(&mi);
            u = u_next;
            v = v_next;
            qk = (&qk * q.mod_floor(&mi)).mod_floor(&mi);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - (&qk << 1u32)).mod_floor(&mi);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(&mi);
    }
    false
}

/// Primality test, exact over the whole input range used by this crate.
///
/// Inputs below 2^64 get a deterministic Miller-Rabin battery with the
/// twelve witnesses in [`MR_WITNESSES`]; that battery is proven correct for
/// everything below 3.3 * 10^24. Larger inputs get the same battery as a
/// strong probable prime screen plus a strong Lucas test with Selfridge's
/// parameters (the Baillie-PSW combination).
pub fn is_prime(m: &BigUint) -> bool {
    if let Some(m64) = m.to_u64() {
        return is_prime_u64(m64);
    }
    if m.is_even() {
        return false;
    }
    for &w in &MR_WITNESSES {
        if !strong_probable_prime(m, w) {
            return false;
        }
    }
    strong_lucas_probable_prime(m)
}

fn rho_u64(n: u64) -> u64 {
    // Brent's cycle variant with batched gcds; n is odd, composite, and has
    // no factor below the trial division limit.
    for c in 1u64.. {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = f(y);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += batch;
            }
            r <<= 1;
        }
        if g == n {
            g = 1;
            let mut z = ys;
            while g == 1 {
                z = f(z);
                g = gcd_u64(x.abs_diff(z), n);
            }
        }
        if g > 1 && g < n {
            return g;
        }
    }
    unreachable!("rho schedule exhausted");
}

fn rho_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += batch;
            }
            r <<= 1;
        }
        if g == *n {
            g = one.clone();
            let mut z = ys;
            while g.is_one() {
                z = f(&z);
                let diff = if x > z { &x - &z } else { &z - &x };
                g = diff.gcd(n);
            }
        }
        if !g.is_one() && g != *n {
            return g;
        }
    }
    unreachable!("rho schedule exhausted");
}

fn factor_collect(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = match n.to_u64() {
        Some(n64) => BigUint::from(rho_u64(n64)),
        None => rho_big(&n),
    };
    let q = &n / &d;
    factor_collect(d, out);
    factor_collect(q, out);
}

/// Factor `m >= 1` into primes.
pub fn factor(m: &BigUint) -> Factorization {
    assert!(!m.is_zero(), "factor(0) is undefined");
    let mut rest = m.clone();
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        if let Some(r64) = rest.to_u64() {
            if (p as u128) * (p as u128) > r64 as u128 {
                break;
            }
        }
        let pb = BigUint::from(p);
        while (&rest % p).is_zero() {
            *found.entry(pb.clone()).or_insert(0) += 1;
            rest /= p;
        }
    }
    if !rest.is_one() {
        factor_collect(rest, &mut found);
    }
    Factorization::from_parts(m.clone(), found.into_iter().collect())
}

/// Euler's totient, computed through [`factor`].
pub fn euler_phi(n: &BigUint) -> BigUint {
    assert!(!n.is_zero(), "euler_phi(0) is undefined");
    let mut phi = BigUint::one();
    for (p, e) in factor(n).factors() {
        phi *= p.pow(e - 1) * (p - 1u32);
    }
    phi
}

/// Multiplicative order of `g` modulo `n`.
///
/// The order of the full unit group is taken as phi(n), factored, and then
/// reduced prime by prime until no exponent can be removed.
pub fn mult_order(g: &BigUint, n: &BigUint) -> Result<BigUint, Error> {
    if *n < BigUint::from(2u32) {
        return Err(Error::DomainTooSmall { n: n.clone() });
    }
    let g_red = g % n;
    if !g_red.gcd(n).is_one() {
        return Err(Error::NotCoprime {
            g: g.clone(),
            n: n.clone(),
        });
    }
    let phi = euler_phi(n);
    let mut order = phi.clone();
    for (q, e) in factor(&phi).factors() {
        for _ in 0..*e {
            let candidate = &order / q;
            if g_red.modpow(&candidate, n).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// Least common multiple of a non-empty list.
pub fn lcm_all(values: &[BigUint]) -> BigUint {
    assert!(!values.is_empty(), "lcm of an empty list");
    values
        .iter()
        .fold(BigUint::one(), |acc, v| acc.lcm(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Trial division oracle, independent of the sieve and of Miller-Rabin.
    fn oracle_is_prime(m: u64) -> bool {
        if m < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= m {
            if m % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    fn oracle_factor(mut m: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2u64;
        while d * d <= m {
            if m % d == 0 {
                let mut e = 0;
                while m % d == 0 {
                    m /= d;
                    e += 1;
                }
                out.push((d, e));
            }
            d += 1;
        }
        if m > 1 {
            out.push((m, 1));
        }
        out
    }

    /// Lucas-Lehmer certificate for 2^61 - 1, fully independent of the
    /// Miller-Rabin code path.
    fn lucas_lehmer_61() -> bool {
        let m: u128 = (1u128 << 61) - 1;
        let mut s: u128 = 4;
        for _ in 0..59 {
            s = (s * s + m - 2) % m;
        }
        s == 0
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(&big(2)));
        assert!(!is_prime(&big(0)));
        assert!(!is_prime(&big(1)));
        assert!(is_prime(&big(3)));
        assert!(!is_prime(&big(4)));
        assert!(is_prime(&big(101)));
    }

    #[test]
    fn isqrt_is_exact() {
        for n in 0..2000u64 {
            let r = isqrt_u64(n);
            assert!(r * r <= n);
            assert!((r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt_u64(u64::MAX), (1u64 << 32) - 1);
        assert_eq!(isqrt_u64(0), 0);
        assert_eq!(isqrt_u64(1), 1);
    }

    #[test]
    fn mersenne_61_is_prime_and_matches_lucas_lehmer() {
        let m61 = (BigUint::one() << 61u32) - 1u32;
        assert!(lucas_lehmer_61());
        assert!(is_prime(&m61));
    }

    #[test]
    fn large_inputs_use_lucas_path() {
        // 2^89 - 1 and 2^127 - 1 are Mersenne primes; 2^83 - 1 and the
        // square of 2^61 - 1 are not.
        let m = |k: u32| (BigUint::one() << k) - 1u32;
        assert!(is_prime(&m(89)));
        assert!(is_prime(&m(127)));
        assert!(!is_prime(&m(83)));
        let m61 = m(61);
        assert!(!is_prime(&(&m61 * &m61)));
    }

    #[test]
    fn is_prime_matches_trial_division_below_one_million() {
        for m in 0..1_000_000u64 {
            if is_prime_u64(m) != oracle_is_prime(m) {
                panic!("primality disagreement at {m}");
            }
        }
    }

    #[test]
    fn factor_twelve() {
        let f = factor(&big(12));
        assert_eq!(
            f.factors(),
            &[(big(2), 2), (big(3), 1)],
        );
        assert_eq!(f.value(), &big(12));
    }

    #[test]
    fn factor_2_pow_20_minus_1() {
        let f = factor(&((BigUint::one() << 20u32) - 1u32));
        let expected: Vec<(BigUint, u32)> = vec![
            (big(3), 1),
            (big(5), 2),
            (big(11), 1),
            (big(31), 1),
            (big(41), 1),
        ];
        assert_eq!(f.factors(), expected.as_slice());
    }

    #[test]
    fn factor_2_pow_100_minus_1_reassembles() {
        let n = (BigUint::one() << 100u32) - 1u32;
        let f = factor(&n);
        // from_parts already asserted reassembly and primality; check the
        // factor sizes on top.
        assert_eq!(f.value(), &n);
        let largest = f.primes().max().unwrap();
        assert!(largest < &big(1_000_000));
    }

    #[test]
    fn factor_matches_trial_division_to_1e5() {
        for m in 1..=100_000u64 {
            let f = factor(&big(m));
            let expected: Vec<(BigUint, u32)> = oracle_factor(m)
                .into_iter()
                .map(|(p, e)| (big(p), e))
                .collect();
            assert_eq!(f.factors(), expected.as_slice(), "mismatch at {m}");
        }
    }

    #[test]
    fn factor_splits_a_large_semiprime() {
        // both factors sit above the trial division limit
        let p = big(1_000_003);
        let q = big(998_244_353);
        let f = factor(&(&p * &q));
        assert_eq!(f.factors(), &[(p, 1), (q, 1)]);
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(&big(2), &big(3)).unwrap(), big(2));
        assert_eq!(mult_order(&big(2), &big(101)).unwrap(), big(100));
        assert_eq!(mult_order(&big(2), &big(7)).unwrap(), big(3));
    }

    #[test]
    fn mult_order_errors() {
        assert_eq!(
            mult_order(&big(2), &big(1)),
            Err(Error::DomainTooSmall { n: big(1) })
        );
        assert_eq!(
            mult_order(&big(6), &big(9)),
            Err(Error::NotCoprime { g: big(6), n: big(9) })
        );
    }

    #[test]
    fn mult_order_is_exact() {
        // g^t = 1 and g^(t/q) != 1 for every prime q | t
        for n in 3u64..200 {
            for g in 2u64..n.min(30) {
                if gcd_u64(g, n) != 1 {
                    continue;
                }
                let t = mult_order(&big(g), &big(n)).unwrap();
                assert!(big(g).modpow(&t, &big(n)).is_one());
                for q in factor(&t).primes() {
                    let reduced = &t / q;
                    assert!(
                        !big(g).modpow(&reduced, &big(n)).is_one(),
                        "order of {g} mod {n} not minimal"
                    );
                }
            }
        }
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(&big(9)), big(6));
        assert_eq!(euler_phi(&big(101)), big(100));
        assert_eq!(euler_phi(&big(1)), big(1));
    }

    #[test]
    fn lcm_examples() {
        let vals = [big(6), big(10), big(15)];
        assert_eq!(lcm_all(&vals), big(30));
        assert_eq!(lcm_all(&[big(7)]), big(7));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn factorization_reassembles(m in 2u64..=u64::MAX) {
            let f = factor(&big(m));
            prop_assert_eq!(f.value(), &big(m));
            // strictly increasing primes
            for w in f.factors().windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
        }
    }
}
