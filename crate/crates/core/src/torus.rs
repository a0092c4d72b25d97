//! The integral complex built from the lattices of monomial ratios
//! `z_i / z_j` on the pieces of the standard cover of `P^t`. Its first
//! cohomology is infinite cyclic, generated by the class of the cocycle of
//! all pairwise ratios, and every other degree vanishes.

use crate::complex::{cohomology, BaseRing, CochainComplex, CohomologyGroup};
use crate::error::{Error, Result};
use crate::matrix::IntMat;
use crate::snf::kernel_basis;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub const TORUS_T_CAP: usize = 6;

/// Bases of the ratio lattices, one block per subset of `{0..=t}` of the
/// given size; within a block the basis symbols are `(min I, j)` for the
/// non-minimal `j` of `I`, so the block has rank `|I| - 1`.
#[derive(Debug, Clone)]
pub struct TorusGenerators {
    pub t: usize,
    /// subsets grouped by degree: `blocks[i]` lists the `(i+1)`-subsets
    pub blocks: Vec<Vec<Vec<usize>>>,
    /// per degree, the starting column of each block in the term basis
    pub offsets: Vec<Vec<usize>>,
}

impl TorusGenerators {
    pub fn new(t: usize) -> TorusGenerators {
        let mut blocks: Vec<Vec<Vec<usize>>> = vec![Vec::new(); t + 1];
        for mask in 1u32..(1u32 << (t + 1)) {
            let set: Vec<usize> = (0..=t).filter(|i| mask & (1 << i) != 0).collect();
            blocks[set.len() - 1].push(set);
        }
        let mut offsets = Vec::with_capacity(t + 1);
        for group in &mut blocks {
            group.sort();
            let mut offs = Vec::with_capacity(group.len());
            let mut acc = 0usize;
            for set in group.iter() {
                offs.push(acc);
                acc += set.len() - 1;
            }
            offsets.push(offs);
        }
        TorusGenerators { t, blocks, offsets }
    }

    pub fn term_rank(&self, degree: usize) -> usize {
        self.blocks[degree]
            .iter()
            .map(|set| set.len() - 1)
            .sum()
    }

    /// Column of the symbol `z_j / z_{min I}` inside the degree-`|I|-1`
    /// term, for `j` in `I` distinct from the minimum.
    fn symbol_column(&self, degree: usize, block: usize, set: &[usize], j: usize) -> usize {
        let pos = set.iter().filter(|&&x| x != set[0] && x < j).count();
        self.offsets[degree][block] + pos
    }
}

/// The complex of ratio lattices: degree `i` is the direct sum of the
/// blocks of the `(i+1)`-subsets, the differential is the alternating sum
/// of the inclusions rewritten in the target block bases.
pub fn torus_complex(t: usize) -> Result<CochainComplex> {
    if t < 1 {
        return Err(Error::InvalidArgument("t must be >= 1".into()));
    }
    if t > TORUS_T_CAP {
        return Err(Error::SizeLimit { needed: t.to_string(), cap: TORUS_T_CAP.to_string() });
    }
    let gens = TorusGenerators::new(t);
    let ranks: Vec<usize> = (0..=t).map(|i| gens.term_rank(i)).collect();
    let mut diffs = Vec::with_capacity(t);

    for s in 0..t {
        let mut d = IntMat::zeros(ranks[s + 1], ranks[s]);
        for (tb, target) in gens.blocks[s + 1].iter().enumerate() {
            let m = target[0];
            // adds c * g_{m,x} into the target block, skipping g_{m,m} = 0
            let add = |d: &mut IntMat, x: usize, col: usize, c: &BigInt| {
                if x == m {
                    return;
                }
                let row = gens.symbol_column(s + 1, tb, target, x);
                let v = d.at(row, col) + c;
                d.set(row, col, v);
            };
            for k in 0..target.len() {
                let mut face = target.clone();
                face.remove(k);
                let sb = gens.blocks[s]
                    .binary_search(&face)
                    .expect("face of a subset is a subset");
                let face_min = face[0];
                let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                for &j in face.iter().skip(1) {
                    // source symbol g_{face_min, j} = g_{m, j} - g_{m, face_min}
                    let col = gens.symbol_column(s, sb, &face, j);
                    add(&mut d, j, col, &sign);
                    add(&mut d, face_min, col, &(-&sign));
                }
            }
        }
        diffs.push(d);
    }
    Ok(CochainComplex::new(ranks, diffs, BaseRing::Int))
}

/// Cohomology of the ratio complex, checked against the closed form:
/// infinite cyclic in degree 1, zero elsewhere.
pub fn torus_cohomology(t: usize) -> Result<Vec<CohomologyGroup>> {
    let complex = torus_complex(t)?;
    let groups = cohomology(&complex)?;
    for g in &groups {
        let want = usize::from(g.degree == 1);
        if g.free_rank != want || !g.torsion.is_empty() {
            return Err(Error::PredictionMismatch(format!(
                "t={t}: degree {} has free rank {} and torsion {:?}, expected free rank {want} and no torsion",
                g.degree, g.free_rank, g.torsion
            )));
        }
    }
    Ok(groups)
}

/// The 1-cochain assigning weight one to every pairwise ratio symbol.
pub fn pairwise_ratio_cocycle(t: usize) -> Vec<BigInt> {
    let gens = TorusGenerators::new(t);
    vec![BigInt::one(); gens.term_rank(1)]
}

/// True when the all-ones pairwise cocycle is a cocycle and generates the
/// first cohomology (the degree-one kernel is infinite cyclic on it).
pub fn pairwise_cocycle_generates_h1(t: usize) -> Result<bool> {
    let complex = torus_complex(t)?;
    let c = pairwise_ratio_cocycle(t);
    let kernel = if t >= 2 {
        let image = complex.diffs[1].mul_vec(&c);
        if image.iter().any(|v| !v.is_zero()) {
            return Ok(false);
        }
        kernel_basis(&complex.diffs[1])
    } else {
        IntMat::identity(complex.ranks[1])
    };
    if kernel.cols() != 1 {
        return Ok(false);
    }
    let gen: Vec<BigInt> = kernel.column(0);
    let neg: Vec<BigInt> = gen.iter().map(|v| -v).collect();
    Ok(gen == c || neg == c)
}
