//! Cochain complexes of finite free modules with integer differentials,
//! over `Z` or `Z/p^m`, and their cohomology via normal forms.

use crate::error::{Error, Result};
use crate::matrix::IntMat;
use crate::snf::{kernel_basis, snf_int, solve};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

/// Coefficient ring of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseRing {
    Int,
    /// `Z/p^m`; the differentials stay integral, reads are made modulo `p^m`.
    ModPrimePower { p: u64, m: u32 },
}

/// A bounded complex `C^0 -> C^1 -> ... -> C^top`. `diffs[i]` is the matrix
/// of `d^i : C^i -> C^{i+1}` acting on column vectors, so it has shape
/// `ranks[i+1] x ranks[i]`.
#[derive(Debug, Clone)]
pub struct CochainComplex {
    pub ranks: Vec<usize>,
    pub diffs: Vec<IntMat>,
    pub base: BaseRing,
}

impl CochainComplex {
    pub fn new(ranks: Vec<usize>, diffs: Vec<IntMat>, base: BaseRing) -> CochainComplex {
        assert_eq!(diffs.len() + 1, ranks.len().max(1), "need one differential per step");
        for (i, d) in diffs.iter().enumerate() {
            assert_eq!(d.rows(), ranks[i + 1], "differential {i} row count");
            assert_eq!(d.cols(), ranks[i], "differential {i} column count");
        }
        CochainComplex { ranks, diffs, base }
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn with_base(mut self, base: BaseRing) -> CochainComplex {
        self.base = base;
        self
    }

    /// Alternating sum of the term ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// One cohomology group, reported as a free rank plus torsion invariants in
/// divisibility order. Over `Z/p^m` "free" counts the summands isomorphic to
/// the full ring `Z/p^m` and torsion lists the strictly smaller cyclic parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl CohomologyGroup {
    pub fn trivial(degree: usize) -> CohomologyGroup {
        CohomologyGroup { degree, free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free_of_rank(&self, r: usize) -> bool {
        self.free_rank == r && self.torsion.is_empty()
    }
}

fn diff_or_empty(c: &CochainComplex, i: usize) -> IntMat {
    if i < c.diffs.len() {
        c.diffs[i].clone()
    } else {
        IntMat::zeros(0, *c.ranks.get(i).unwrap_or(&0))
    }
}

/// Columns spanning `{x : d x = 0 mod p^m}` together with `p^m Z^r`.
fn modular_kernel(d: &IntMat, pm: &BigInt) -> IntMat {
    let r = d.cols();
    if d.rows() == 0 {
        return IntMat::identity(r);
    }
    // kernel of [d | -p^m I] over Z, projected to the x-block
    let mut scaled = IntMat::zeros(d.rows(), d.rows());
    for i in 0..d.rows() {
        scaled.set(i, i, -pm.clone());
    }
    let stacked = d.hconcat(&scaled);
    let ker = kernel_basis(&stacked);
    let mut out = IntMat::zeros(r, ker.cols());
    for j in 0..ker.cols() {
        for i in 0..r {
            out.set(i, j, ker.at(i, j).clone());
        }
    }
    out
}

/// Cohomology of the complex in every degree.
///
/// Fails with `NonComplex` when consecutive differentials do not compose to
/// zero over the base ring.
pub fn cohomology(c: &CochainComplex) -> Result<Vec<CohomologyGroup>> {
    let pm: Option<BigInt> = match &c.base {
        BaseRing::Int => None,
        BaseRing::ModPrimePower { p, m } => Some(BigInt::from(*p).pow(*m)),
    };

    for i in 0..c.diffs.len().saturating_sub(1) {
        let composed = c.diffs[i + 1].mul(&c.diffs[i]);
        let ok = match &pm {
            None => composed.is_zero(),
            Some(pm) => composed.reduce_mod(&pm.to_biguint().unwrap()).is_zero(),
        };
        if !ok {
            return Err(Error::NonComplex { degree: i });
        }
    }

    let mut report = Vec::with_capacity(c.ranks.len());
    for i in 0..c.ranks.len() {
        let d_out = diff_or_empty(c, i);
        let kernel = match &pm {
            None => kernel_basis(&d_out),
            Some(pm) => modular_kernel(&d_out, pm),
        };

        // relation generators inside the kernel: the image of d^{i-1},
        // plus p^m times the ambient basis in the modular case
        let mut relations = if i > 0 {
            c.diffs[i - 1].clone()
        } else {
            IntMat::zeros(c.ranks[i], 0)
        };
        if let Some(pm) = &pm {
            let mut scaled = IntMat::zeros(c.ranks[i], c.ranks[i]);
            for k in 0..c.ranks[i] {
                scaled.set(k, k, pm.clone());
            }
            relations = relations.hconcat(&scaled);
        }

        report.push(quotient_group(i, &kernel, &relations, pm.as_ref()));
    }
    Ok(report)
}

/// Structure of `span(kernel) / span(relations)` where the relation columns
/// are known to lie in the kernel's span.
fn quotient_group(
    degree: usize,
    kernel: &IntMat,
    relations: &IntMat,
    pm: Option<&BigInt>,
) -> CohomologyGroup {
    let s = kernel.cols();
    if s == 0 {
        return CohomologyGroup::trivial(degree);
    }
    let expressed = solve(kernel, relations)
        .expect("image of the previous differential must lie in the kernel");
    let snf = snf_int(&expressed);
    let mut free_rank = s - snf.rank;
    let mut torsion: Vec<BigUint> = snf
        .diagonal
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .map(|d| d.to_biguint().unwrap())
        .collect();
    if let Some(pm) = pm {
        // invariant factors equal to p^m are full free summands of Z/p^m
        let pmu = pm.to_biguint().unwrap();
        let full = torsion.iter().filter(|t| **t == pmu).count();
        free_rank += full;
        torsion.retain(|t| *t != pmu);
    }
    torsion.sort();
    CohomologyGroup { degree, free_rank, torsion }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex_z(ranks: Vec<usize>, diffs: Vec<IntMat>) -> CochainComplex {
        CochainComplex::new(ranks, diffs, BaseRing::Int)
    }

    #[test]
    fn zero_map_two_terms() {
        let c = complex_z(vec![1, 1], vec![IntMat::zeros(1, 1)]);
        let h = cohomology(&c).unwrap();
        assert!(h[0].is_free_of_rank(1));
        assert!(h[1].is_free_of_rank(1));
    }

    #[test]
    fn multiplication_by_two() {
        let c = complex_z(vec![1, 1], vec![IntMat::from_i64_rows(&[vec![2]])]);
        let h = cohomology(&c).unwrap();
        assert!(h[0].is_trivial());
        assert_eq!(h[1].free_rank, 0);
        assert_eq!(h[1].torsion, vec![BigUint::from(2u32)]);
    }

    #[test]
    fn non_complex_is_rejected() {
        let d0 = IntMat::from_i64_rows(&[vec![1]]);
        let d1 = IntMat::from_i64_rows(&[vec![1]]);
        let c = complex_z(vec![1, 1, 1], vec![d0, d1]);
        assert!(matches!(cohomology(&c), Err(Error::NonComplex { degree: 0 })));
    }

    #[test]
    fn circle_complex() {
        // 0 -> Z^2 --(x,y)->(y-x, y-x)--> ... simple rank checks
        let d = IntMat::from_i64_rows(&[vec![-1, 1]]);
        let c = complex_z(vec![2, 1], vec![d]);
        let h = cohomology(&c).unwrap();
        assert!(h[0].is_free_of_rank(1));
        assert!(h[1].is_trivial());
    }

    #[test]
    fn modular_multiplication_by_p() {
        // x -> p*x over Z/p^2: kernel p Z/p^2, image p Z/p^2, H^0 = Z/p, H^1 = Z/p
        let c = CochainComplex::new(
            vec![1, 1],
            vec![IntMat::from_i64_rows(&[vec![3]])],
            BaseRing::ModPrimePower { p: 3, m: 2 },
        );
        let h = cohomology(&c).unwrap();
        assert_eq!(h[0].free_rank, 0);
        assert_eq!(h[0].torsion, vec![BigUint::from(3u32)]);
        assert_eq!(h[1].free_rank, 0);
        assert_eq!(h[1].torsion, vec![BigUint::from(3u32)]);
    }

    #[test]
    fn modular_identity_map_is_acyclic() {
        let c = CochainComplex::new(
            vec![1, 1],
            vec![IntMat::from_i64_rows(&[vec![1]])],
            BaseRing::ModPrimePower { p: 2, m: 4 },
        );
        let h = cohomology(&c).unwrap();
        assert!(h[0].is_trivial());
        assert!(h[1].is_trivial());
    }
}
