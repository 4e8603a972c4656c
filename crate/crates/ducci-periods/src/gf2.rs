//! Polynomials over F_2 and the extension fields F_{2^t}.
//!
//! A polynomial is a bit vector: bit i of the word array is the coefficient
//! of X^i. Addition is xor, multiplication is shift-and-xor over the set
//! bits of the shorter operand, and reduction peels the leading bit with a
//! shifted xor of the modulus. Nothing here needs carries, so every
//! operation stays word-parallel.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{factor, Factorization};
use crate::Error;

/// Dense polynomial over F_2. Invariant: no trailing zero words, so the
/// empty vector is the zero polynomial and `Eq`/`Hash` work structurally.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GF2Poly {
    words: Vec<u64>,
}

impl GF2Poly {
    pub fn zero() -> Self {
        GF2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        GF2Poly { words: vec![1] }
    }

    pub fn x() -> Self {
        GF2Poly { words: vec![2] }
    }

    /// Build from the exponents with coefficient 1, e.g. `[0, 1, 3]` is
    /// `1 + X + X^3`.
    pub fn from_support(exponents: &[u64]) -> Self {
        let mut p = GF2Poly::zero();
        for &e in exponents {
            p.flip_coeff(e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        let last = *self.words.last()?;
        Some((self.words.len() as u64 - 1) * 64 + (63 - last.leading_zeros() as u64))
    }

    pub fn coeff(&self, i: u64) -> bool {
        let w = (i / 64) as usize;
        w < self.words.len() && self.words[w] >> (i % 64) & 1 == 1
    }

    fn flip_coeff(&mut self, i: u64) {
        let w = (i / 64) as usize;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1u64 << (i % 64);
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    fn xor_shifted(&mut self, other: &GF2Poly, shift: u64) {
        let word_shift = (shift / 64) as usize;
        let bit_shift = shift % 64;
        let needed = other.words.len() + word_shift + 1;
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        if bit_shift == 0 {
            for (k, &w) in other.words.iter().enumerate() {
                self.words[word_shift + k] ^= w;
            }
        } else {
            let mut carry = 0u64;
            for (k, &w) in other.words.iter().enumerate() {
                self.words[word_shift + k] ^= (w << bit_shift) | carry;
                carry = w >> (64 - bit_shift);
            }
            self.words[word_shift + other.words.len()] ^= carry;
        }
        self.normalize();
    }

    pub fn add(&self, other: &GF2Poly) -> GF2Poly {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (k, &w) in short.words.iter().enumerate() {
            words[k] ^= w;
        }
        let mut out = GF2Poly { words };
        out.normalize();
        out
    }

    pub fn mul(&self, other: &GF2Poly) -> GF2Poly {
        if self.is_zero() || other.is_zero() {
            return GF2Poly::zero();
        }
        let (a, b) = if self.words.len() <= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = GF2Poly::zero();
        for (wi, &w) in a.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let tz = bits.trailing_zeros() as u64;
                out.xor_shifted(b, wi as u64 * 64 + tz);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Squaring just spreads the bits out, since cross terms cancel in
    /// characteristic 2.
    pub fn square(&self) -> GF2Poly {
        const SPREAD: [u16; 256] = {
            let mut t = [0u16; 256];
            let mut b = 0usize;
            while b < 256 {
                let mut s = 0u16;
                let mut i = 0;
                while i < 8 {
                    if b >> i & 1 == 1 {
                        s |= 1 << (2 * i);
                    }
                    i += 1;
                }
                t[b] = s;
                b += 1;
            }
            t
        };
        let mut words = vec![0u64; self.words.len() * 2];
        for (k, &w) in self.words.iter().enumerate() {
            let mut lo = 0u64;
            let mut hi = 0u64;
            for byte in 0..4 {
                lo |= (SPREAD[(w >> (8 * byte) & 0xff) as usize] as u64) << (16 * byte);
                hi |= (SPREAD[(w >> (8 * (byte + 4)) & 0xff) as usize] as u64) << (16 * byte);
            }
            words[2 * k] = lo;
            words[2 * k + 1] = hi;
        }
        let mut out = GF2Poly { words };
        out.normalize();
        out
    }

    /// Remainder modulo `m`.
    pub fn rem(&self, m: &GF2Poly) -> Result<GF2Poly, Error> {
        let md = m.degree().ok_or(Error::DivisionByZeroPoly)?;
        let mut r = self.clone();
        while let Some(d) = r.degree() {
            if d < md {
                break;
            }
            r.xor_shifted(m, d - md);
        }
        Ok(r)
    }

    /// Monic greatest common divisor (every nonzero gcd over F_2 is monic).
    pub fn gcd(&self, other: &GF2Poly) -> GF2Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &GF2Poly, m: &GF2Poly) -> Result<GF2Poly, Error> {
        self.mul(other).rem(m)
    }

    /// `self^exp mod m` by square and multiply over the exponent bits.
    pub fn pow_mod(&self, exp: &BigUint, m: &GF2Poly) -> Result<GF2Poly, Error> {
        if m.degree().ok_or(Error::DivisionByZeroPoly)? == 0 {
            return Ok(GF2Poly::zero());
        }
        if exp.is_zero() {
            return Ok(GF2Poly::one());
        }
        let mut acc = self.rem(m)?;
        for i in (0..exp.bits() - 1).rev() {
            acc = acc.square().rem(m)?;
            if exp.bit(i) {
                acc = acc.mul(self).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow_mod_u64(&self, exp: u64, m: &GF2Poly) -> Result<GF2Poly, Error> {
        self.pow_mod(&BigUint::from(exp), m)
    }
}

impl fmt::Display for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..=self.degree().unwrap()).rev() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Poly({self})")
    }
}

/// Rabin test: f of degree t is irreducible iff X^(2^t) = X mod f and
/// gcd(X^(2^(t/q)) - X, f) = 1 for every prime q dividing t.
pub fn is_irreducible(f: &GF2Poly) -> bool {
    let t = f.degree().expect("irreducibility of the zero polynomial");
    assert!(t >= 1, "constants are units, not candidates");
    let mut checkpoints: Vec<u64> = factor(&BigUint::from(t))
        .primes()
        .map(|q| {
            let q: u64 = q.try_into().expect("prime factor of a u64 fits u64");
            t / q
        })
        .collect();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let x_red = GF2Poly::x().rem(f).expect("f is nonzero");
    let mut frob = x_red.clone();
    for i in 1..=t {
        frob = frob.square().rem(f).expect("f nonzero");
        if checkpoints.binary_search(&i).is_ok() {
            if !frob.add(&x_red).gcd(f).is_one() {
                return false;
            }
        }
    }
    frob == x_red
}

/// Deterministic seeded search for an irreducible polynomial of degree t.
/// The same seed always yields the same polynomial.
pub fn find_irreducible(t: u64, seed: u64) -> GF2Poly {
    assert!(t >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top_word = (t / 64) as usize;
    let top_bit = t % 64;
    loop {
        let mut words: Vec<u64> = (0..=top_word).map(|_| rng.next_u64()).collect();
        words[top_word] &= (1u64 << top_bit) - 1;
        words[top_word] |= 1u64 << top_bit;
        if t >= 2 {
            // degree >= 2 irreducibles never have root 0
            words[0] |= 1;
        }
        let mut candidate = GF2Poly { words };
        candidate.normalize();
        if is_irreducible(&candidate) {
            return candidate;
        }
    }
}

/// A concrete model of F_{2^t}: an irreducible modulus of degree t together
/// with the factored group order 2^t - 1.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    t: u64,
    modulus: GF2Poly,
    group_order: Factorization,
}

impl FieldCtx {
    /// Build the field, finding a modulus from `seed` and factoring
    /// 2^t - 1. All later order computations reuse that factorization.
    pub fn new(t: u64, seed: u64) -> FieldCtx {
        assert!(t >= 1);
        let modulus = find_irreducible(t, seed);
        let group_order = factor(&((BigUint::one() << t) - 1u32));
        FieldCtx {
            t,
            modulus,
            group_order,
        }
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn modulus(&self) -> &GF2Poly {
        &self.modulus
    }

    pub fn group_order(&self) -> &Factorization {
        &self.group_order
    }

    pub fn element(&self, rep: GF2Poly) -> FieldElem<'_> {
        FieldElem {
            ctx: self,
            rep: rep.rem(&self.modulus).expect("modulus is nonzero"),
        }
    }

    pub fn zero(&self) -> FieldElem<'_> {
        self.element(GF2Poly::zero())
    }

    pub fn one(&self) -> FieldElem<'_> {
        self.element(GF2Poly::one())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> FieldElem<'_> {
        let n_words = (self.t as usize + 63) / 64;
        let mut words: Vec<u64> = (0..n_words).map(|_| rng.next_u64()).collect();
        let extra = (64 - self.t % 64) % 64;
        if extra > 0 {
            let last = words.len() - 1;
            words[last] &= !0u64 >> extra;
        }
        let mut rep = GF2Poly { words };
        rep.normalize();
        self.element(rep)
    }
}

/// An element of a [`FieldCtx`]. Elements borrow their field; mixing fields
/// in one operation is a caller bug and is debug-asserted.
#[derive(Debug, Clone)]
pub struct FieldElem<'a> {
    ctx: &'a FieldCtx,
    rep: GF2Poly,
}

impl PartialEq for FieldElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(std::ptr::eq(self.ctx, other.ctx));
        self.rep == other.rep
    }
}

impl Eq for FieldElem<'_> {}

impl<'a> FieldElem<'a> {
    pub fn rep(&self) -> &GF2Poly {
        &self.rep
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    pub fn add(&self, other: &FieldElem<'a>) -> FieldElem<'a> {
        debug_assert!(std::ptr::eq(self.ctx, other.ctx));
        FieldElem {
            ctx: self.ctx,
            rep: self.rep.add(&other.rep),
        }
    }

    pub fn mul(&self, other: &FieldElem<'a>) -> FieldElem<'a> {
        debug_assert!(std::ptr::eq(self.ctx, other.ctx));
        FieldElem {
            ctx: self.ctx,
            rep: self
                .rep
                .mul_mod(&other.rep, &self.ctx.modulus)
                .expect("modulus is nonzero"),
        }
    }

    pub fn square(&self) -> FieldElem<'a> {
        FieldElem {
            ctx: self.ctx,
            rep: self
                .rep
                .square()
                .rem(&self.ctx.modulus)
                .expect("modulus is nonzero"),
        }
    }

    pub fn pow(&self, exp: &BigUint) -> FieldElem<'a> {
        FieldElem {
            ctx: self.ctx,
            rep: self
                .rep
                .pow_mod(exp, &self.ctx.modulus)
                .expect("modulus is nonzero"),
        }
    }

    pub fn pow_u64(&self, exp: u64) -> FieldElem<'a> {
        self.pow(&BigUint::from(exp))
    }
}

/// Multiplicative order of a nonzero field element, computed by stripping
/// primes from the factored group order.
pub fn elem_order(x: &FieldElem<'_>) -> Result<BigUint, Error> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut order = x.ctx().group_order().value().clone();
    for (q, e) in x.ctx().group_order().factors() {
        for _ in 0..*e {
            let candidate = &order / q;
            if x.pow(&candidate).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// A root of unity of exact order n in the field, found by raising seeded
/// random elements to the cofactor power. Requires n | 2^t - 1.
pub fn nth_root_of_unity(ctx: &FieldCtx, n: u64, seed: u64) -> Result<FieldElem<'_>, Error> {
    assert!(n >= 2);
    let n_big = BigUint::from(n);
    let group = ctx.group_order().value();
    if !(group % &n_big).is_zero() {
        return Err(Error::OrderIncompatible { n, t: ctx.t() });
    }
    let cofactor = group / &n_big;
    let n_primes: Vec<u64> = factor(&n_big)
        .primes()
        .map(|p| p.try_into().expect("prime factor of a u64"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let candidate = ctx.sample(&mut rng);
        if candidate.is_zero() {
            continue;
        }
        let z = candidate.pow(&cofactor);
        if n_primes.iter().all(|&q| !z.pow_u64(n / q).is_one()) {
            return Ok(z);
        }
    }
}
