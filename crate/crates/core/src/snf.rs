//! Diagonal normal forms with transform tracking.
//!
//! `snf_local` diagonalizes a matrix over the chain ring `Z/p^n` into
//! `diag(p^a0, p^a1, ...)` with a nondecreasing exponent sequence; the zero
//! diagonal entry is reported as exponent infinity. `snf_int` is the
//! classical Smith normal form over `Z` with a divisibility chain. Both
//! return unimodular left and right transforms with `left * M * right`
//! equal to the diagonal form.

use crate::error::{Error, Result};
use crate::matrix::IntMat;
use crate::ring::{Valuation, Zpn};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Normal form over `Z/p^n`: `left * M * right = diag(p^alphas)`.
#[derive(Debug, Clone)]
pub struct LocalSnf {
    pub alphas: Vec<Valuation>,
    pub left: IntMat,
    pub right: IntMat,
}

impl LocalSnf {
    /// Number of diagonal exponents strictly below the precision, the rank
    /// of the row lattice in the sense used for arrangements.
    pub fn rank_below_precision(&self, n: u32) -> usize {
        self.alphas.iter().filter(|a| matches!(a, Valuation::Finite(v) if *v < n)).count()
    }
}

/// Pivot rule: entry of minimal valuation, ties broken by lowest (row, col).
fn find_pivot(m: &IntMat, ring: &Zpn, from: usize) -> Option<(usize, usize, u32)> {
    let mut best: Option<(usize, usize, u32)> = None;
    for i in from..m.rows() {
        for j in from..m.cols() {
            let value = m.at(i, j).to_biguint().expect("reduced entries are non-negative");
            if let Valuation::Finite(v) = ring.valuation_of(&value) {
                match best {
                    Some((_, _, bv)) if bv <= v => {}
                    _ => best = Some((i, j, v)),
                }
            }
        }
    }
    best
}

pub fn snf_local(m: &IntMat, ring: &Zpn) -> LocalSnf {
    let modulus = ring.modulus().clone();
    let p = BigInt::from(ring.p());
    let mut a = m.reduce_mod(&modulus);
    let mut left = IntMat::identity(a.rows());
    let mut right = IntMat::identity(a.cols());
    let steps = a.rows().min(a.cols());
    let mut alphas = Vec::with_capacity(steps);

    for k in 0..steps {
        let Some((pi, pj, v)) = find_pivot(&a, ring, k) else {
            // remaining block is zero mod p^n
            alphas.resize(steps, Valuation::Infinity);
            break;
        };
        a.swap_rows(k, pi);
        left.swap_rows(k, pi);
        a.swap_cols(k, pj);
        right.swap_cols(k, pj);

        // normalize the pivot to the pure power p^v
        let pivot = a.at(k, k).to_biguint().unwrap();
        let power = p.pow(v);
        let unit = (BigInt::from(pivot) / &power).to_biguint().unwrap();
        let unit_inv = BigInt::from(ring.invert(&unit).expect("unit part is invertible"));
        a.scale_row(k, &unit_inv);
        left.scale_row(k, &unit_inv);
        a = a.reduce_mod(&modulus);
        left = left.reduce_mod(&modulus);
        debug_assert_eq!(a.at(k, k), &power);

        // clear the pivot column; minimality of v makes every entry divisible
        for i in k + 1..a.rows() {
            let e = a.at(i, k);
            if e.is_zero() {
                continue;
            }
            let q = -(e / &power);
            a.row_add(i, k, &q);
            left.row_add(i, k, &q);
        }
        // clear the pivot row
        for j in k + 1..a.cols() {
            let e = a.at(k, j);
            if e.is_zero() {
                continue;
            }
            let q = -(e / &power);
            a.col_add(j, k, &q);
            right.col_add(j, k, &q);
        }
        a = a.reduce_mod(&modulus);
        left = left.reduce_mod(&modulus);
        right = right.reduce_mod(&modulus);
        alphas.push(Valuation::Finite(v));
    }
    alphas.resize(steps, Valuation::Infinity);
    LocalSnf { alphas, left, right }
}

/// Smith normal form over `Z`: `left * M * right = diag(d)` with
/// `d[0] | d[1] | ...`, diagonal non-negative, transforms of determinant ±1.
#[derive(Debug, Clone)]
pub struct IntSnf {
    pub diagonal: Vec<BigInt>,
    pub left: IntMat,
    pub right: IntMat,
    pub rank: usize,
}

pub fn snf_int(m: &IntMat) -> IntSnf {
    let mut a = m.clone();
    let mut left = IntMat::identity(a.rows());
    let mut right = IntMat::identity(a.cols());
    let steps = a.rows().min(a.cols());
    let mut k = 0;

    while k < steps {
        // move a nonzero entry of minimal absolute value to (k, k)
        let mut best: Option<(usize, usize)> = None;
        for i in k..a.rows() {
            for j in k..a.cols() {
                if a.at(i, j).is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if a.at(bi, bj).magnitude() <= a.at(i, j).magnitude() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(k, pi);
        left.swap_rows(k, pi);
        a.swap_cols(k, pj);
        right.swap_cols(k, pj);

        loop {
            let mut dirty = false;
            for i in k + 1..a.rows() {
                if a.at(i, k).is_zero() {
                    continue;
                }
                let q = -(a.at(i, k).div_floor(a.at(k, k)));
                a.row_add(i, k, &q);
                left.row_add(i, k, &q);
                if !a.at(i, k).is_zero() {
                    // remainder is smaller than the pivot; promote it
                    a.swap_rows(k, i);
                    left.swap_rows(k, i);
                    dirty = true;
                }
            }
            for j in k + 1..a.cols() {
                if a.at(k, j).is_zero() {
                    continue;
                }
                let q = -(a.at(k, j).div_floor(a.at(k, k)));
                a.col_add(j, k, &q);
                right.col_add(j, k, &q);
                if !a.at(k, j).is_zero() {
                    a.swap_cols(k, j);
                    right.swap_cols(k, j);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }

        // pivot must divide the remaining block; otherwise fold the offending
        // row in and restart the elimination at this pivot
        let mut offending = None;
        'scan: for i in k + 1..a.rows() {
            for j in k + 1..a.cols() {
                if !a.at(i, j).mod_floor(a.at(k, k)).is_zero() {
                    offending = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offending {
            let one = BigInt::one();
            a.row_add(k, i, &one);
            left.row_add(k, i, &one);
            continue;
        }

        if a.at(k, k).is_negative() {
            let minus = BigInt::from(-1);
            a.scale_row(k, &minus);
            left.scale_row(k, &minus);
        }
        k += 1;
    }

    let diagonal: Vec<BigInt> = (0..steps).map(|i| a.at(i, i).clone()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    debug_assert!(diagonal
        .windows(2)
        .all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].mod_floor(&w[0]).is_zero())));
    IntSnf { diagonal, left, right, rank }
}

/// Basis of the integer kernel of `m`, returned as matrix columns.
pub fn kernel_basis(m: &IntMat) -> IntMat {
    if m.rows() == 0 {
        return IntMat::identity(m.cols());
    }
    let snf = snf_int(m);
    let free: Vec<usize> = (0..m.cols())
        .filter(|&j| j >= snf.diagonal.len() || snf.diagonal[j].is_zero())
        .collect();
    snf.right.columns(&free)
}

/// Solve `m * x = rhs` over `Z` for each column of `rhs`; `None` when some
/// column has no integral solution.
pub fn solve(m: &IntMat, rhs: &IntMat) -> Option<IntMat> {
    assert_eq!(m.rows(), rhs.rows());
    let snf = snf_int(m);
    let b = snf.left.mul(rhs);
    let mut y = IntMat::zeros(m.cols(), rhs.cols());
    for c in 0..rhs.cols() {
        for i in 0..m.rows() {
            let bi = b.at(i, c);
            if i < snf.diagonal.len() && !snf.diagonal[i].is_zero() {
                let (q, r) = bi.div_mod_floor(&snf.diagonal[i]);
                if !r.is_zero() {
                    return None;
                }
                y.set(i, c, q);
            } else if !bi.is_zero() {
                return None;
            }
        }
    }
    Some(snf.right.mul(&y))
}

/// True when the square matrix is invertible over `Z/p^n`.
pub fn is_invertible_mod(m: &IntMat, ring: &Zpn) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let snf = snf_local(m, ring);
    snf.alphas.iter().all(|a| *a == Valuation::Finite(0))
}

/// Inverse of a square matrix over `Z/p^n`.
pub fn invert_mod(m: &IntMat, ring: &Zpn) -> Result<IntMat> {
    let k = m.rows();
    if k != m.cols() {
        return Err(Error::NotInvertible { p: ring.p(), n: ring.n() });
    }
    let snf = snf_local(m, ring);
    if !snf.alphas.iter().all(|a| *a == Valuation::Finite(0)) {
        return Err(Error::NotInvertible { p: ring.p(), n: ring.n() });
    }
    // left * M * right = I  =>  M^{-1} = right * left
    Ok(snf.right.mul(&snf.left).reduce_mod(ring.modulus()))
}

/// The exponent valuations of `diag` read off a diagonalized lift.
pub fn diagonal_exponents(snf: &LocalSnf) -> Vec<Valuation> {
    snf.alphas.clone()
}

pub fn biguint_of(v: &BigInt) -> BigUint {
    v.to_biguint().expect("expected a non-negative value")
}
