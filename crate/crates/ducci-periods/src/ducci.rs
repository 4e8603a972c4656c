//! Direct simulation of Ducci sequences.
//!
//! One step sends a tuple to the cyclic absolute differences of its
//! neighbours. Every integer tuple eventually enters a cycle, and after at
//! most a few steps all entries are 0 or c for a single constant c, so the
//! cycle structure is that of the map on binary tuples. The binary walker
//! here packs a tuple into words and steps it with a rotate and xor, which
//! is what makes periods in the millions affordable.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::Error;

/// Cycle data for an eventually periodic orbit: the number of steps before
/// the cycle is entered and the cycle length itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleResult {
    pub preperiod: u64,
    pub period: u64,
}

/// One Ducci step on a tuple of arbitrary naturals.
pub fn ducci_step(tuple: &[BigUint]) -> Vec<BigUint> {
    assert!(!tuple.is_empty(), "Ducci step needs at least one entry");
    let n = tuple.len();
    (0..n)
        .map(|i| {
            let a = &tuple[i];
            let b = &tuple[(i + 1) % n];
            if a >= b {
                a - b
            } else {
                b - a
            }
        })
        .collect()
}

/// Brent's cycle detection for `f` iterated from `x0`. Only the search for
/// the cycle length charges against `max_steps`; locating the cycle start
/// afterwards replays at most that many evaluations again.
fn brent<T, F>(x0: T, mut f: F, max_steps: u64) -> Result<CycleResult, Error>
where
    T: Clone + Eq,
    F: FnMut(&T) -> T,
{
    let mut power: u64 = 1;
    let mut lam: u64 = 1;
    let mut tortoise = x0.clone();
    let mut hare = f(&x0);
    let mut evals: u64 = 1;
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        if evals >= max_steps {
            return Err(Error::StepBudgetExceeded(max_steps));
        }
        hare = f(&hare);
        evals += 1;
        lam += 1;
    }

    tortoise = x0.clone();
    hare = x0.clone();
    for _ in 0..lam {
        hare = f(&hare);
    }
    let mut mu: u64 = 0;
    while tortoise != hare {
        tortoise = f(&tortoise);
        hare = f(&hare);
        mu += 1;
    }
    Ok(CycleResult {
        preperiod: mu,
        period: lam,
    })
}

/// Preperiod and period of the orbit of an arbitrary tuple.
pub fn simulate_period(tuple: &[BigUint], max_steps: u64) -> Result<CycleResult, Error> {
    assert!(!tuple.is_empty(), "empty tuple has no orbit");
    brent(tuple.to_vec(), |t| ducci_step(t), max_steps)
}

/// Word-packed binary tuple: bit i of the words is entry i.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitTuple {
    n: usize,
    words: Vec<u64>,
}

impl BitTuple {
    fn unit_last(n: usize) -> Self {
        let n_words = (n + 63) / 64;
        let mut words = vec![0u64; n_words];
        words[(n - 1) / 64] |= 1u64 << ((n - 1) % 64);
        BitTuple { n, words }
    }

    /// Ducci step over F_2: xor with the left rotation by one position.
    fn step(&self) -> Self {
        let n = self.n;
        let n_words = self.words.len();
        let mut rotated = vec![0u64; n_words];
        // entry j of rotated is entry (j + 1) mod n of self
        for j_word in 0..n_words {
            let lo = self.words[j_word] >> 1;
            let next_word = if j_word + 1 < n_words {
                self.words[j_word + 1]
            } else {
                0
            };
            rotated[j_word] = lo | (next_word << 63);
        }
        // wrap entry 0 of self into position n - 1
        if self.words[0] & 1 == 1 {
            rotated[(n - 1) / 64] |= 1u64 << ((n - 1) % 64);
        }
        let words = self
            .words
            .iter()
            .zip(rotated.iter())
            .map(|(a, b)| a ^ b)
            .collect();
        let mut out = BitTuple { n, words };
        out.mask();
        out
    }

    fn mask(&mut self) {
        let extra = (64 - self.n % 64) % 64;
        if extra > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= !0u64 >> extra;
        }
    }
}

/// Period of the binary orbit of (0, ..., 0, 1), which attains the maximal
/// cycle length over all length-n tuples.
pub fn simulate_binary_period(n: u64, max_steps: u64) -> Result<CycleResult, Error> {
    assert!(n >= 1, "tuple length must be positive");
    brent(BitTuple::unit_last(n as usize), BitTuple::step, max_steps)
}
