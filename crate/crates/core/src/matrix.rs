//! Dense integer matrices used by the normal-form routines.
//!
//! Entries are arbitrary-precision signed integers; matrices over `Z/p^n`
//! are represented by their canonical lifts with entries in `[0, p^n)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(k: usize) -> IntMat {
        let mut m = IntMat::zeros(k, k);
        for i in 0..k {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> IntMat {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix-vector product on a column vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    /// Entry-wise reduction into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigUint) -> IntMat {
        let mi = BigInt::from(m.clone());
        let mut out = self.clone();
        for v in &mut out.data {
            let mut r = v.mod_floor(&mi);
            if r.is_negative() {
                r += &mi;
            }
            *v = r;
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i += f * row_j
    pub fn row_add(&mut self, i: usize, j: usize, f: &BigInt) {
        for c in 0..self.cols {
            let v = self.at(i, c) + f * self.at(j, c);
            self.set(i, c, v);
        }
    }

    /// col_i += f * col_j
    pub fn col_add(&mut self, i: usize, j: usize, f: &BigInt) {
        for r in 0..self.rows {
            let v = self.at(r, i) + f * self.at(r, j);
            self.set(r, i, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, f: &BigInt) {
        for c in 0..self.cols {
            let v = self.at(i, c) * f;
            self.set(i, c, v);
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    /// Column sub-matrix.
    pub fn columns(&self, idx: &[usize]) -> IntMat {
        let mut out = IntMat::zeros(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_identity() {
        let m = IntMat::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.mul(&IntMat::identity(2)), m);
    }

    #[test]
    fn reduce_mod_handles_negatives() {
        let m = IntMat::from_i64_rows(&[vec![-1, 5]]);
        let r = m.reduce_mod(&BigUint::from(4u32));
        assert_eq!(r.at(0, 0), &BigInt::from(3));
        assert_eq!(r.at(0, 1), &BigInt::from(1));
    }
}
