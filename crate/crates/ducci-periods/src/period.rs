//! Exact maximal periods P(n) of Ducci sequences and the classical bounds
//! they satisfy.
//!
//! For odd n the cycle structure lives in F_{2^t} with t the order of 2
//! modulo n: fixing a root of unity z of order n, the maximal period is the
//! least common multiple of the orders of z^a + 1 over representatives a of
//! the orbits of doubling on {1, ..., n - 1}. Even lengths reduce to the
//! odd part, P(2^k m) = 2^k P(m).
//!
//! Everything downstream consumes the [`PeriodRecord`] produced here, which
//! carries P(n) together with t and the divisor bounds of the odd part.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factor, mult_order};
use crate::gf2::{elem_order, nth_root_of_unity, FieldCtx, GF2Poly};
use crate::pell::pell_no_odd_solutions;
use crate::serde_util::{biguint_dec, opt_biguint_dec};
use crate::Error;

/// The period of a Ducci sequence of length n together with the invariants
/// of its odd part m = n / 2^k: the order t of 2 modulo m and the divisor
/// bounds B1 = 2^t - 1 and, when 2^(t/2) is -1 modulo m, B2 = m (2^(t/2) - 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodRecord {
    pub n: u64,
    /// Order of 2 modulo the odd part of n (1 when the odd part is 1).
    pub t: u64,
    #[serde(with = "biguint_dec")]
    pub period: BigUint,
    #[serde(with = "biguint_dec")]
    pub b1: BigUint,
    #[serde(
        default,
        with = "opt_biguint_dec",
        skip_serializing_if = "Option::is_none"
    )]
    pub b2: Option<BigUint>,
    pub with_minus_one: bool,
    /// For odd prime powers p^e with p = 5 mod 8 and 2 a primitive root:
    /// whether x^2 - p y^2 = -4 has no odd solutions, which forces the
    /// period to divide B2 / 3. `None` when the criterion does not apply.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pell_no_odd: Option<bool>,
}

impl PeriodRecord {
    /// 2-adic valuation of n.
    pub fn two_part(&self) -> u32 {
        self.n.trailing_zeros()
    }

    /// n with all factors of 2 removed.
    pub fn odd_part(&self) -> u64 {
        self.n >> self.two_part()
    }

    /// Period of the odd part. This is P(n) / 2^k except when n is a power
    /// of two, where the period is 1 rather than 2^k.
    pub fn odd_period(&self) -> BigUint {
        if self.odd_part() == 1 {
            self.period.clone()
        } else {
            &self.period >> self.two_part()
        }
    }
}

/// Divisor bounds for odd n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub n: u64,
    pub t: u64,
    #[serde(with = "biguint_dec")]
    pub b1: BigUint,
    #[serde(
        default,
        with = "opt_biguint_dec",
        skip_serializing_if = "Option::is_none"
    )]
    pub b2: Option<BigUint>,
    pub with_minus_one: bool,
}

/// Multiplicative order of 2 modulo odd n >= 3.
pub fn order_of_two(n: u64) -> Result<u64, Error> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::NotApplicable(format!(
            "the order of 2 needs an odd modulus >= 3, got {n}"
        )));
    }
    let t = mult_order(&BigUint::from(2u32), &BigUint::from(n))?;
    Ok(t.try_into().expect("order of 2 mod a u64 fits u64"))
}

/// B1 and, in the -1 case, B2 for odd n >= 3.
pub fn bounds(n: u64) -> Result<Bounds, Error> {
    let t = order_of_two(n)?;
    let n_big = BigUint::from(n);
    let b1 = (BigUint::one() << t) - 1u32;
    let with_minus_one = t % 2 == 0
        && BigUint::from(2u32).modpow(&BigUint::from(t / 2), &n_big) == &n_big - 1u32;
    let b2 = with_minus_one.then(|| &n_big * ((BigUint::one() << (t / 2)) - 1u32));
    Ok(Bounds {
        n,
        t,
        b1,
        b2,
        with_minus_one,
    })
}

/// Smallest member of each orbit of doubling modulo n on {1, ..., n - 1}.
pub fn doubling_orbit_reps(n: u64) -> Vec<u64> {
    let mut seen = vec![false; n as usize];
    let mut reps = Vec::new();
    for a in 1..n {
        if seen[a as usize] {
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
    reps
}

fn pell_flag(n: u64) -> Option<bool> {
    let f = factor(&BigUint::from(n));
    let factors = f.factors();
    if factors.len() != 1 {
        return None;
    }
    let p: u64 = factors[0].0.clone().try_into().ok()?;
    if p % 8 != 5 {
        return None;
    }
    let phi: u64 = crate::arith::euler_phi(&BigUint::from(n)).try_into().ok()?;
    if order_of_two(n).ok()? != phi {
        return None;
    }
    Some(!pell_no_odd_solutions(p).ok()?.has_odd_solution)
}

/// Exact P(n) for odd n >= 3 from the root of unity construction. The seed
/// only picks the model of F_{2^t}; the result is seed independent.
pub fn period_algebraic(n: u64, seed: u64) -> Result<PeriodRecord, Error> {
    let bounds = bounds(n)?;
    let ctx = FieldCtx::new(bounds.t, seed);
    let zeta = nth_root_of_unity(&ctx, n, seed)?;
    let one = ctx.one();
    let mut period = BigUint::one();
    for a in doubling_orbit_reps(n) {
        let shifted = zeta.pow_u64(a).add(&one);
        let ord = elem_order(&shifted)?;
        period = period.lcm(&ord);
    }
    Ok(PeriodRecord {
        n,
        t: bounds.t,
        period,
        b1: bounds.b1,
        b2: bounds.b2,
        with_minus_one: bounds.with_minus_one,
        pell_no_odd: pell_flag(n),
    })
}

/// P(n) for any n >= 1, reducing to the odd part.
pub fn period_any(n: u64, seed: u64) -> Result<PeriodRecord, Error> {
    assert!(n >= 1, "tuple length must be positive");
    let k = n.trailing_zeros();
    let m = n >> k;
    if m == 1 {
        return Ok(PeriodRecord {
            n,
            t: 1,
            period: BigUint::one(),
            b1: BigUint::one(),
            b2: None,
            with_minus_one: false,
            pell_no_odd: None,
        });
    }
    let mut rec = period_algebraic(m, seed)?;
    rec.n = n;
    rec.period <<= k;
    Ok(rec)
}

/// One verified clause of the divisor and growth statements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub clause: &'static str,
    pub passed: bool,
}

/// n + 1 is a power of two.
pub fn is_mersenne_number(n: u64) -> bool {
    (n + 1).is_power_of_two()
}

/// n - 1 is a positive power of two.
pub fn is_power_of_two_plus_one(n: u64) -> bool {
    n >= 3 && (n - 1).is_power_of_two()
}

/// Check every statement the record is supposed to satisfy. Clauses whose
/// hypotheses fail pass vacuously.
pub fn validate_theorems(rec: &PeriodRecord) -> Vec<TheoremCheck> {
    let m = rec.odd_part();
    let m_big = BigUint::from(m);
    let op = rec.odd_period();
    let mut checks = Vec::new();
    let mut push = |clause: &'static str, passed: bool| {
        checks.push(TheoremCheck { clause, passed });
    };

    push("period_divides_b1", (&rec.b1 % &op).is_zero());
    push(
        "period_divides_b2",
        !rec.with_minus_one
            || rec
                .b2
                .as_ref()
                .map_or(false, |b2| (b2 % &op).is_zero()),
    );
    push(
        "period_divides_b2_over_3",
        rec.pell_no_odd != Some(true)
            || rec.b2.as_ref().map_or(false, |b2| {
                (b2 % 3u32).is_zero() && (b2 / 3u32 % &op).is_zero()
            }),
    );
    push("n_divides_period", m < 3 || (&op % &m_big).is_zero());
    push(
        "period_equals_n_iff_mersenne",
        (op == m_big) == is_mersenne_number(m),
    );
    let floor = &m_big * (m.saturating_sub(2));
    push(
        "period_at_least_n_times_n_minus_2",
        !rec.with_minus_one || op >= floor,
    );
    push(
        "equality_iff_power_of_two_plus_one",
        !rec.with_minus_one || (op == floor) == is_power_of_two_plus_one(m),
    );
    checks
}

/// Decide P(n) = n for odd n >= 3 without factoring 2^t - 1: P(n) is the
/// order of X + 1 in F_2[X] modulo 1 + X + ... + X^(n-1), so it equals n
/// exactly when (X + 1)^n = 1 there and no (X + 1)^(n/q) is.
pub fn period_equals_n(n: u64) -> Result<bool, Error> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::NotApplicable(format!(
            "the Mersenne criterion is stated for odd n >= 3, got {n}"
        )));
    }
    let g = GF2Poly::from_support(&(0..n).collect::<Vec<_>>());
    let x_plus_1 = GF2Poly::from_support(&[0, 1]);
    if !x_plus_1.pow_mod_u64(n, &g)?.is_one() {
        return Ok(false);
    }
    for q in factor(&BigUint::from(n)).primes() {
        let q: u64 = q.try_into().expect("prime factor of a u64 fits u64");
        if x_plus_1.pow_mod_u64(n / q, &g)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All odd n in 3..=max_n with P(n) = n. These are exactly the numbers
/// 2^j - 1 in range.
pub fn mersenne_period_scan(max_n: u64) -> Result<Vec<u64>, Error> {
    (3..=max_n)
        .step_by(2)
        .filter_map(|n| match period_equals_n(n) {
            Ok(true) => Some(Ok(n)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}
