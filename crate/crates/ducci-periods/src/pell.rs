//! Negative Pell equations x^2 - p y^2 = -1 and the odd-solution scan for
//! x^2 - p y^2 = -4.
//!
//! For a prime p = 1 mod 4 the continued fraction of sqrt(p) has odd period
//! length, and the convergent just before the period ends gives the
//! fundamental solution of x^2 - p y^2 = -1. Solutions of the -4 equation
//! with both coordinates odd exist only for some of these primes; when they
//! are absent, one of the period bounds tightens by a factor of 3.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, isqrt_u64};
use crate::serde_util::{biguint_pair_dec, opt_biguint_pair_dec};
use crate::Error;

/// Outcome of the odd-solution scan for a prime p = 5 mod 8.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellResult {
    pub p: u64,
    /// Fundamental solution (x1, y1) of x^2 - p y^2 = -1.
    #[serde(with = "biguint_pair_dec")]
    pub fundamental: (BigUint, BigUint),
    /// Whether x^2 - p y^2 = -4 has a solution with x, y both odd.
    pub has_odd_solution: bool,
    /// The least such solution when one exists.
    #[serde(
        default,
        with = "opt_biguint_pair_dec",
        skip_serializing_if = "Option::is_none"
    )]
    pub witness: Option<(BigUint, BigUint)>,
}

/// Fundamental solution of x^2 - p y^2 = -1 for a prime p = 1 mod 4,
/// from the continued fraction expansion of sqrt(p).
pub fn negative_pell_fundamental(p: u64) -> Result<(BigUint, BigUint), Error> {
    if !is_prime_u64(p) || p % 4 != 1 {
        return Err(Error::NotApplicable(format!(
            "x^2 - {p} y^2 = -1 needs a prime p = 1 mod 4"
        )));
    }
    let a0 = isqrt_u64(p);
    // CF state: (m, d, a) with sqrt(p) = (sqrt(p) + m) / d at each stage
    let mut m: u64 = 0;
    let mut d: u64 = 1;
    let mut a = a0;
    // convergents h_k / k_k
    let mut h_prev = BigUint::one();
    let mut h = BigUint::from(a0);
    let mut k_prev = BigUint::zero();
    let mut k = BigUint::one();
    loop {
        m = d * a - m;
        d = (p - m * m) / d;
        a = (a0 + m) / d;
        if d == 1 {
            // period ends after this partial quotient; the previous
            // convergent solves x^2 - p y^2 = -1 when the period is odd,
            // which holds for every prime p = 1 mod 4
            return Ok((h, k));
        }
        let h_next = BigUint::from(a) * &h + &h_prev;
        let k_next = BigUint::from(a) * &k + &k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
}

fn is_square(v: &BigUint) -> Option<BigUint> {
    let r = v.sqrt();
    if &(&r * &r) == v {
        Some(r)
    } else {
        None
    }
}

/// Search for a solution of x^2 - p y^2 = -4 with x and y both odd, trying
/// odd y up to `y_max` inclusive.
pub fn odd_solution_search(p: u64, y_max: &BigUint) -> Option<(BigUint, BigUint)> {
    let p_big = BigUint::from(p);
    let mut y = BigUint::one();
    let two = BigUint::from(2u32);
    let four = BigUint::from(4u32);
    while &y <= y_max {
        let v = &p_big * &y * &y - &four;
        if let Some(x) = is_square(&v) {
            if x.bit(0) {
                return Some((x, y));
            }
        }
        y += &two;
    }
    None
}

/// Decide whether x^2 - p y^2 = -4 has solutions in odd integers for a
/// prime p = 5 mod 8. Any odd solution has y no larger than twice the
/// fundamental y of the -1 equation, so the scan window is finite.
pub fn pell_no_odd_solutions(p: u64) -> Result<PellResult, Error> {
    if !is_prime_u64(p) || p % 8 != 5 {
        return Err(Error::NotApplicable(format!(
            "the odd solution criterion applies to primes p = 5 mod 8, not {p}"
        )));
    }
    let fundamental = negative_pell_fundamental(p)?;
    let y_max = &fundamental.1 * 2u32;
    let witness = odd_solution_search(p, &y_max);
    Ok(PellResult {
        p,
        has_odd_solution: witness.is_some(),
        witness,
        fundamental,
    })
}
