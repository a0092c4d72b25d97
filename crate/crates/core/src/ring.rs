//! Arithmetic in the truncated discrete valuation rings `Z/p^n`.
//!
//! Elements carry their own `(p, n)` context. A nonzero residue `x` has a
//! valuation `v` equal to the exact power of `p` dividing its canonical
//! representative in `[0, p^n)`; the zero residue has valuation infinity.
//! Units are exactly the elements of valuation zero.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The p-adic valuation of a truncated residue, capped semantics: the zero
/// residue reports `Infinity` (it is divisible by every power representable
/// at the working precision).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Infinity,
}

impl Valuation {
    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    /// Finite value, if any.
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    /// True when the valuation is at least `bound`.
    pub fn at_least(self, bound: u32) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinity => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// The ring `Z/p^n` for a prime `p >= 2` and `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Zpn {
    p: u64,
    n: u32,
    modulus: BigUint,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Zpn {
    pub fn new(p: u64, n: u32) -> Result<Zpn> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("p = {p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("precision n must be >= 1".into()));
        }
        let modulus = BigUint::from(p).pow(n);
        Ok(Zpn { p, n, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// Same prime, possibly different precision.
    pub fn with_precision(&self, n: u32) -> Result<Zpn> {
        Zpn::new(self.p, n)
    }

    pub fn elem(&self, value: impl Into<BigUint>) -> TruncElem {
        let value = value.into() % &self.modulus;
        TruncElem { ring: self.clone(), value }
    }

    /// Reduce a signed integer into the ring.
    pub fn elem_int(&self, value: &BigInt) -> TruncElem {
        let m = BigInt::from(self.modulus.clone());
        let mut r = value.mod_floor(&m);
        if r.is_negative() {
            r += &m;
        }
        self.elem(r.to_biguint().expect("non-negative after reduction"))
    }

    pub fn zero(&self) -> TruncElem {
        self.elem(0u32)
    }

    pub fn one(&self) -> TruncElem {
        self.elem(1u32)
    }

    /// p-adic valuation of a residue value, `Infinity` for zero.
    pub fn valuation_of(&self, value: &BigUint) -> Valuation {
        let reduced = value % &self.modulus;
        if reduced.is_zero() {
            return Valuation::Infinity;
        }
        let p = BigUint::from(self.p);
        let mut v = 0u32;
        let mut rest = reduced;
        while (&rest % &p).is_zero() {
            rest /= &p;
            v += 1;
        }
        Valuation::Finite(v)
    }

    /// Inverse of a unit residue, by extended gcd with the modulus.
    pub fn invert(&self, value: &BigUint) -> Result<BigUint> {
        if !self.valuation_of(value).finite().map(|v| v == 0).unwrap_or(false) {
            return Err(Error::NotInvertible { p: self.p, n: self.n });
        }
        let a = BigInt::from(value.clone());
        let m = BigInt::from(self.modulus.clone());
        let ext = a.extended_gcd(&m);
        debug_assert!(ext.gcd.is_one());
        let mut x = ext.x.mod_floor(&m);
        if x.is_negative() {
            x += &m;
        }
        Ok(x.to_biguint().expect("non-negative"))
    }
}

/// A residue in `Z/p^n`, stored canonically in `[0, p^n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TruncElem {
    ring: Zpn,
    value: BigUint,
}

impl TruncElem {
    pub fn ring(&self) -> &Zpn {
        &self.ring
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn valuation(&self) -> Valuation {
        self.ring.valuation_of(&self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    fn check_ring(&self, other: &TruncElem) {
        assert_eq!(self.ring, other.ring, "mixed (p, n) contexts");
    }

    pub fn add(&self, other: &TruncElem) -> TruncElem {
        self.check_ring(other);
        self.ring.elem(&self.value + &other.value)
    }

    pub fn sub(&self, other: &TruncElem) -> TruncElem {
        self.check_ring(other);
        self.ring.elem(&self.value + self.ring.modulus() - &other.value)
    }

    pub fn mul(&self, other: &TruncElem) -> TruncElem {
        self.check_ring(other);
        self.ring.elem(&self.value * &other.value)
    }

    pub fn neg(&self) -> TruncElem {
        self.ring.elem(self.ring.modulus() - &self.value % self.ring.modulus())
    }

    pub fn inv(&self) -> Result<TruncElem> {
        Ok(self.ring.elem(self.ring.invert(&self.value)?))
    }

    /// Project to a lower precision `m <= n` over the same prime.
    pub fn project(&self, m: u32) -> Result<TruncElem> {
        if m == 0 || m > self.ring.n {
            return Err(Error::InvalidArgument(format!(
                "target precision {m} not in 1..={}",
                self.ring.n
            )));
        }
        Ok(self.ring.with_precision(m)?.elem(self.value.clone()))
    }
}

impl fmt::Display for TruncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.value, self.ring.p, self.ring.n)
    }
}
