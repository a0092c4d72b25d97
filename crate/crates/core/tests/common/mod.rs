//! Shared oracles for the integration tests. These deliberately avoid the
//! library's normal-form code paths: ranks come from fraction-free row
//! reduction or finite-field elimination, so they can cross-check the
//! Smith-form machinery.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use tubular::matrix::IntMat;

/// Integer matrix rank by division-free row elimination with gcd trimming.
pub fn elimination_rank(m: &IntMat) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.at(i, j).clone()).collect())
        .collect();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let Some(pivot_row) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            col += 1;
            continue;
        };
        a.swap(rank, pivot_row);
        for i in rank + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let (pa, pb) = (a[rank][col].clone(), a[i][col].clone());
            for j in 0..cols {
                a[i][j] = &a[i][j] * &pa - &a[rank][j] * &pb;
            }
            let mut g = BigInt::zero();
            for j in 0..cols {
                g = g.gcd(&a[i][j]);
            }
            if !g.is_zero() {
                for j in 0..cols {
                    a[i][j] = &a[i][j] / &g;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Rank over the prime field `F_q` by Gaussian elimination.
pub fn rank_mod_q(m: &IntMat, q: u64) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let qi = BigInt::from(q);
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| u64::try_from(m.at(i, j).mod_floor(&qi)).unwrap())
                .collect()
        })
        .collect();
    let inv = |x: u64| -> u64 {
        // q is prime: Fermat inverse
        let mut result = 1u64;
        let mut base = x % q;
        let mut e = q - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        result
    };
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        let Some(p) = (rank..rows).find(|&i| a[i][col] != 0) else {
            col += 1;
            continue;
        };
        a.swap(rank, p);
        let pinv = inv(a[rank][col]);
        for j in 0..cols {
            a[rank][j] = a[rank][j] * pinv % q;
        }
        for i in 0..rows {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + (q - f) * a[rank][j]) % q;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Random integer matrix of determinant +-1, a product of elementary
/// operations on the identity.
pub fn random_unimodular(k: usize, rng: &mut impl Rng) -> IntMat {
    let mut g = IntMat::identity(k);
    for _ in 0..3 * k + 2 {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..k);
                let j = rng.gen_range(0..k);
                if i != j {
                    let c = BigInt::from(rng.gen_range(-2i64..=2));
                    g.row_add(i, j, &c);
                }
            }
            1 => {
                let i = rng.gen_range(0..k);
                let j = rng.gen_range(0..k);
                g.swap_rows(i, j);
            }
            _ => {
                let i = rng.gen_range(0..k);
                g.scale_row(i, &BigInt::from(-1));
            }
        }
    }
    g
}

/// Random unimodular matrix together with its exact inverse, built by
/// applying the same elementary operations to both sides.
pub fn random_unimodular_with_inverse(k: usize, rng: &mut impl Rng) -> (IntMat, IntMat) {
    if k == 0 {
        return (IntMat::identity(0), IntMat::identity(0));
    }
    let mut g = IntMat::identity(k);
    let mut g_inv = IntMat::identity(k);
    for _ in 0..3 * k + 2 {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..k);
                let j = rng.gen_range(0..k);
                if i != j {
                    let c = BigInt::from(rng.gen_range(-2i64..=2));
                    g.row_add(i, j, &c);
                    // (E g)^{-1} = g^{-1} E^{-1}: subtract on the columns
                    g_inv.col_add(j, i, &(-c));
                }
            }
            1 => {
                let i = rng.gen_range(0..k);
                let j = rng.gen_range(0..k);
                g.swap_rows(i, j);
                g_inv.swap_cols(i, j);
            }
            _ => {
                let i = rng.gen_range(0..k);
                g.scale_row(i, &BigInt::from(-1));
                // right-multiplying the inverse negates the column
                for r in 0..k {
                    let v = -g_inv.at(r, i);
                    g_inv.set(r, i, v);
                }
            }
        }
    }
    debug_assert_eq!(g.mul(&g_inv), IntMat::identity(k));
    (g, g_inv)
}

/// gcd of all `k x k` minors of `m`, zero when every minor vanishes.
pub fn minors_gcd(m: &IntMat, k: usize) -> BigInt {
    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    fn det(m: &IntMat, rows: &[usize], cols: &[usize]) -> BigInt {
        if rows.len() == 1 {
            return m.at(rows[0], cols[0]).clone();
        }
        let mut total = BigInt::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = det(m, &rows[1..], &sub_cols);
            let term = m.at(rows[0], c) * minor;
            if pos % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    let mut g = BigInt::zero();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            g = g.gcd(&det(m, &rows, &cols));
        }
    }
    g.abs()
}
