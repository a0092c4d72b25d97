//! Per-multidegree twisted complexes on the standard projective cover, the
//! closed-form ranks of twisted cohomology, and the graded description of
//! the top cohomology of the ball fibrations over `P^t`.

use crate::complex::{cohomology, BaseRing, CochainComplex};
use crate::error::{Error, Result};
use crate::matrix::IntMat;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

/// Exponent vector of a monomial in `t + 1` homogeneous variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `C(a, b)` with the usual vanishing outside `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || a < b {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..b {
        num *= BigUint::from((a - i) as u64);
        den *= BigUint::from((i + 1) as u64);
    }
    num / den
}

/// Number of `parts`-tuples of non-negative integers summing to `j`.
pub fn compositions_count(j: i64, parts: usize) -> BigUint {
    if j < 0 {
        return BigUint::zero();
    }
    if parts == 0 {
        return if j == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(j + parts as i64 - 1, parts as i64 - 1)
}

fn subsets_by_size(t: usize) -> Vec<Vec<Vec<usize>>> {
    // subsets of {0..=t} grouped by cardinality, lexicographic inside a group
    let mut by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(); t + 2];
    for mask in 1u32..(1u32 << (t + 1)) {
        let set: Vec<usize> = (0..=t).filter(|i| mask & (1 << i) != 0).collect();
        by_size[set.len()].push(set);
    }
    for group in &mut by_size {
        group.sort();
    }
    by_size
}

fn allowed(set: &[usize], alpha: &MultiDegree) -> bool {
    let t = alpha.len() - 1;
    (0..=t).all(|i| set.contains(&i) || alpha.0[i] >= 0)
}

/// The summand of the cover's twisted cochain complex attached to one
/// monomial exponent vector: degree `s` has one generator per subset `I` of
/// `{0..=t}` with `|I| = s + 1` whose complement meets only non-negative
/// exponents; the differential is the alternating sum of inclusions.
pub fn twisted_complex(t: usize, alpha: &MultiDegree) -> Result<CochainComplex> {
    if t < 1 {
        return Err(Error::InvalidArgument("t must be >= 1".into()));
    }
    if alpha.len() != t + 1 {
        return Err(Error::InvalidArgument(format!(
            "alpha must have {} coordinates, got {}",
            t + 1,
            alpha.len()
        )));
    }
    let by_size = subsets_by_size(t);
    let mut bases: Vec<Vec<Vec<usize>>> = Vec::with_capacity(t + 1);
    for s in 0..=t {
        bases.push(
            by_size[s + 1]
                .iter()
                .filter(|set| allowed(set, alpha))
                .cloned()
                .collect(),
        );
    }
    let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();

    let mut diffs = Vec::with_capacity(t);
    for s in 0..t {
        let mut d = IntMat::zeros(ranks[s + 1], ranks[s]);
        for (row, target) in bases[s + 1].iter().enumerate() {
            for (k, _) in target.iter().enumerate() {
                let mut face = target.clone();
                face.remove(k);
                if let Ok(col) = bases[s].binary_search(&face) {
                    let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    d.set(row, col, sign);
                }
            }
        }
        diffs.push(d);
    }
    Ok(CochainComplex::new(ranks, diffs, BaseRing::Int))
}

/// Same complex with coefficients reduced into `Z/p^m`.
pub fn twisted_complex_mod(t: usize, alpha: &MultiDegree, p: u64, m: u32) -> Result<CochainComplex> {
    Ok(twisted_complex(t, alpha)?.with_base(BaseRing::ModPrimePower { p, m }))
}

/// Where the cohomology of one multidegree summand sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Concentration {
    DegreeZero,
    TopDegree,
    Acyclic,
}

/// Compute the cohomology of the multidegree summand and check it against
/// the sign rule: degree 0 iff every exponent is non-negative, the top
/// degree iff every exponent is negative, acyclic otherwise.
pub fn twisted_concentration(t: usize, alpha: &MultiDegree) -> Result<Concentration> {
    let complex = twisted_complex(t, alpha)?;
    let groups = cohomology(&complex)?;
    let predicted = if alpha.0.iter().all(|&a| a >= 0) {
        Concentration::DegreeZero
    } else if alpha.0.iter().all(|&a| a <= -1) {
        Concentration::TopDegree
    } else {
        Concentration::Acyclic
    };
    for g in &groups {
        let want_free = match predicted {
            Concentration::DegreeZero if g.degree == 0 => 1,
            Concentration::TopDegree if g.degree == t => 1,
            _ => 0,
        };
        if g.free_rank != want_free || !g.torsion.is_empty() {
            return Err(Error::PredictionMismatch(format!(
                "t={t}, alpha={:?}: degree {} has free rank {} and torsion {:?}, expected free rank {want_free}",
                alpha.0, g.degree, g.free_rank, g.torsion
            )));
        }
    }
    Ok(predicted)
}

/// Rank of the degree-`s` twisted cohomology of `P^t` with twist `k`:
/// `C(k + t, t)` in degree 0 for `k >= 0`, `C(-k - 1, t)` in degree `t` for
/// `k <= -t - 1`, zero elsewhere.
pub fn projective_twist_rank(t: usize, k: i64, s: usize) -> BigUint {
    if s == 0 && k >= 0 {
        binomial(k + t as i64, t as i64)
    } else if s == t && k <= -(t as i64) - 1 {
        binomial(-k - 1, t as i64)
    } else {
        BigUint::zero()
    }
}

/// Graded table of the top cohomology of the fibration with `d - t` fiber
/// variables and twist `k`: the piece in fiber degree `j` has rank
/// `#/{alpha in N^{d-t} : |alpha| = j/} * rank H^t(P^t, O(k - j))`. The full
/// group is a completion; the table is truncated at `degree_cap`.
#[derive(Debug, Clone, Serialize)]
pub struct GradedTable {
    pub d: usize,
    pub t: usize,
    pub k: i64,
    pub rows: Vec<GradedRow>,
    pub truncated_at: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedRow {
    pub degree: i64,
    pub rank: BigUint,
}

pub fn xdt_graded_ht(d: usize, t: usize, k: i64, degree_cap: i64) -> Result<GradedTable> {
    if t < 1 || t > d {
        return Err(Error::InvalidArgument("need 0 < t <= d".into()));
    }
    if degree_cap < t as i64 + 1 + k {
        return Err(Error::InvalidArgument(format!(
            "degree cap {degree_cap} below the first contributing degree {}",
            t as i64 + 1 + k
        )));
    }
    let start = (t as i64 + 1 + k).max(0);
    let mut rows = Vec::new();
    for j in start..=degree_cap {
        let fiber = compositions_count(j, d - t);
        let base = projective_twist_rank(t, k - j, t);
        rows.push(GradedRow { degree: j, rank: fiber * base });
    }
    Ok(GradedTable { d, t, k, rows, truncated_at: degree_cap })
}
