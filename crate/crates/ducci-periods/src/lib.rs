//! Maximal periods of Ducci sequences.
//!
//! A Ducci sequence iterates the map
//! `D(a_1, ..., a_n) = (|a_1 - a_2|, |a_2 - a_3|, ..., |a_n - a_1|)`
//! on integer n-tuples. Every orbit is eventually periodic, and P(n) denotes
//! the largest cycle length over all start tuples of length n; it is attained
//! by `(0, ..., 0, 1)`. The sequence P(1), P(2), ... is OEIS A038553.
//!
//! The crate computes P(n) by independent routes and cross-checks them
//! against each other and against combinatorial lower bounds:
//!
//! * [`ducci::simulate_period`]: direct iteration of arbitrary integer
//!   tuples with Brent cycle detection;
//! * [`ducci::simulate_binary_period`]: the same orbit on bit-packed 0/1
//!   tuples, where one step is a rotate-and-xor;
//! * [`period::period_algebraic`]: the order-theoretic route. For odd n,
//!   P(n) is the least common multiple of the multiplicative orders of
//!   `z + 1` over the nth roots of unity `z != 1` in `F_{2^t}`, where t is
//!   the order of 2 mod n.
//!
//! Lower bounds live in [`partitions`]: subsets of the coset `a<2>` of
//! residues mod n (representatives in `[1, n]`, each carrying its discrete
//! log base 2) with member sum at most `t - 1` inject into the cycle set, so
//! their count bounds P(n) from below. [`period::bounds`] gives the
//! divisibility upper bounds `B1 = 2^t - 1` and, when `2^(t/2) = -1 mod n`,
//! `B2 = n(2^(t/2) - 1)`; [`period::validate_theorems`] checks the classical
//! divisibility and growth laws on any computed record.
//!
//! The `ducci` binary exposes everything as subcommands (`period`, `table`,
//! `partitions`, `bounds`, `simulate`, `verify`); runnable walkthroughs live
//! under `examples/`.

pub mod arith;
pub mod ducci;
pub mod gf2;
pub mod partitions;
pub mod pell;
pub mod period;
pub mod report;

pub mod serde_util;

use num_bigint::BigUint;
use thiserror::Error;

/// Errors shared by the numeric modules.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{g} is not coprime to {n}")]
    NotCoprime { g: BigUint, n: BigUint },
    #[error("modulus {n} too small, need at least 2")]
    DomainTooSmall { n: BigUint },
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("{n} does not divide 2^{t} - 1")]
    OrderIncompatible { n: u64, t: u64 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("no cycle confirmed within {0} steps")]
    StepBudgetExceeded(u64),
    #[error("more than {0} partition vectors, refusing to enumerate")]
    TooMany(u64),
    #[error("parse error: {0}")]
    Parse(String),
}
