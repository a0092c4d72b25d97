//! Truncated exponential and logarithm over `Z/p^m` and the exhaustive
//! isometry check: on elements of valuation at least 2 both series converge,
//! preserve the valuation and invert each other.

use crate::error::{Error, Result};
use crate::ring::{TruncElem, Valuation, Zpn};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

fn factorial_p_valuation(k: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut q = p;
    while q <= k {
        v += k / q;
        q = q.saturating_mul(p);
    }
    v
}

/// `x^k / k!` in `Z/p^m`, exact: the power is computed with `v_p(k!)` guard
/// digits before the division, the unit part of `k!` is inverted modulo
/// `p^m`. Well-defined whenever `(k-1) * val(x) >= v_p(k!)`.
fn power_over_factorial(x: &TruncElem, k: u64) -> TruncElem {
    let ring = x.ring();
    let p = ring.p();
    let m = u64::from(ring.n());
    let vk = factorial_p_valuation(k, p);
    let big_ring = Zpn::new(p, (m + vk) as u32).expect("same prime");
    let power = big_ring.elem(x.value().modpow(&BigUint::from(k), big_ring.modulus()));
    // k! = p^vk * unit
    let mut unit = BigUint::one();
    let pb = BigUint::from(p);
    for i in 2..=k {
        let mut f = BigUint::from(i);
        while (&f % &pb).is_zero() {
            f /= &pb;
        }
        unit = (unit * f) % big_ring.modulus();
    }
    let divided = power.value() / pb.pow(vk as u32);
    let unit_inv = ring.invert(&(unit % ring.modulus())).expect("unit part");
    ring.elem(divided * unit_inv)
}

fn ensure_convergent(x: &TruncElem) -> Result<u32> {
    match x.valuation() {
        Valuation::Infinity => Ok(x.ring().n()),
        Valuation::Finite(v) => {
            let needs = if x.ring().p() == 2 { 2 } else { 1 };
            if v < needs {
                Err(Error::InvalidArgument(format!(
                    "series needs valuation >= {needs} at p = {}, got {v}",
                    x.ring().p()
                )))
            } else {
                Ok(v)
            }
        }
    }
}

/// Terms of index `k` and beyond all vanish at precision `m` once
/// `k*v - (k-1)/(p-1) >= m`; the left side is a monotone lower envelope of
/// the term valuations of both series.
fn series_done(k: u64, v: u64, m: u64, p: u64) -> bool {
    k * v * (p - 1) >= m * (p - 1) + (k - 1)
}

/// `exp(x)` summed until the terms vanish at the working precision.
pub fn trunc_exp(x: &TruncElem) -> Result<TruncElem> {
    let v = u64::from(ensure_convergent(x)?);
    let ring = x.ring();
    let m = u64::from(ring.n());
    let mut sum = ring.one();
    let mut k = 1u64;
    while !series_done(k, v, m, ring.p()) {
        sum = sum.add(&power_over_factorial(x, k));
        k += 1;
    }
    Ok(sum)
}

/// `log(1 + x)` summed until the terms vanish at the working precision.
pub fn trunc_log1p(x: &TruncElem) -> Result<TruncElem> {
    let v = u64::from(ensure_convergent(x)?);
    let ring = x.ring();
    let p = ring.p();
    let m = u64::from(ring.n());
    let pb = BigUint::from(p);
    let mut sum = ring.zero();
    let mut k = 1u64;
    while !series_done(k, v, m, p) {
        let mut vk = 0u64;
        let mut kk = k;
        while kk % p == 0 {
            vk += 1;
            kk /= p;
        }
        // x^k / k with sign (-1)^{k+1}
        let big_ring = Zpn::new(p, (m + vk) as u32)?;
        let power = big_ring.elem(x.value().modpow(&BigUint::from(k), big_ring.modulus()));
        let divided = power.value() / pb.pow(vk as u32);
        let unit_inv = ring.invert(&(BigUint::from(kk) % ring.modulus()))?;
        let term = ring.elem(divided * unit_inv);
        sum = if k % 2 == 1 { sum.add(&term) } else { sum.sub(&term) };
        k += 1;
    }
    Ok(sum)
}

/// Exhaustive verdict over all `x` of valuation `>= v0` in `Z/p^m`.
#[derive(Debug, Clone, Serialize)]
pub struct LogExpVerdict {
    pub p: u64,
    pub precision: u32,
    pub v0: u32,
    pub cases: usize,
    pub ok: bool,
    pub first_failure: Option<String>,
}

/// Check, for every `x` with `val(x) >= v0`, that `exp(x) - 1`, `x` and
/// `log(1 + x)` share the same valuation and that the two series invert
/// each other at the working precision.
pub fn verify_log_exp(p: u64, m: u32, v0: u32) -> Result<LogExpVerdict> {
    if v0 < 2 {
        return Err(Error::InvalidArgument(
            "v0 must be >= 2 so the series contract radii uniformly".into(),
        ));
    }
    if m <= v0 {
        return Err(Error::InvalidArgument("precision must exceed v0".into()));
    }
    let ring = Zpn::new(p, m)?;
    let step = BigUint::from(p).pow(v0);
    let mut x_val = BigUint::zero();
    let mut cases = 0usize;
    let mut first_failure = None;
    while &x_val < ring.modulus() {
        let x = ring.elem(x_val.clone());
        cases += 1;
        let e = trunc_exp(&x)?;
        let l = trunc_log1p(&x)?;
        let e_minus_1 = e.sub(&ring.one());
        let vx = x.valuation();
        let ok_val = e_minus_1.valuation() == vx && l.valuation() == vx;
        // log then exp, and exp then log
        let roundtrip_exp = trunc_exp(&l)?;
        let expected = ring.one().add(&x);
        let back = trunc_log1p(&e_minus_1)?;
        let ok_inv = roundtrip_exp == expected && back == x;
        if !(ok_val && ok_inv) && first_failure.is_none() {
            first_failure = Some(format!("x = {x}"));
        }
        x_val += &step;
    }
    Ok(LogExpVerdict {
        p,
        precision: m,
        v0,
        cases,
        ok: first_failure.is_none(),
        first_failure,
    })
}
