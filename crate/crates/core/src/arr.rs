//! Arrangements of hyperplane tubes: rank, classification of unions as
//! fibration shapes, level projections, compatible families built from
//! integer seeds, interior membership and the subset tables feeding the
//! Mayer-Vietoris bookkeeping.

use crate::error::{Error, Result};
use crate::matrix::IntMat;
use crate::proj::{AlgebraicHyperplane, Hyperplane, ProjPoint};
use crate::ring::{Valuation, Zpn};
use crate::snf::{snf_int, snf_local};
use serde::{Deserialize, Serialize};

pub const SUBSET_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    ClosedTubular,
    OpenTubular,
    Algebraic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Members {
    Tubular(Vec<Hyperplane>),
    Algebraic(Vec<AlgebraicHyperplane>),
}

/// A finite arrangement. Tubular members are stored at their defining level:
/// `order` for the closed flavor, `order + 1` for the open flavor. Members
/// are kept sorted and pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    flavor: Flavor,
    p: u64,
    order: Option<u32>,
    members: Members,
}

impl Arrangement {
    /// Defining level of the members of a tubular arrangement of this
    /// flavor and order.
    pub fn member_level(flavor: Flavor, order: u32) -> u32 {
        match flavor {
            Flavor::ClosedTubular => order,
            Flavor::OpenTubular => order + 1,
            Flavor::Algebraic => unreachable!("algebraic arrangements carry no order"),
        }
    }

    /// Builds a tubular arrangement, merging duplicate members.
    pub fn tubular(flavor: Flavor, order: u32, members: Vec<Hyperplane>) -> Result<Arrangement> {
        if flavor == Flavor::Algebraic {
            return Err(Error::InvalidArgument("use Arrangement::algebraic".into()));
        }
        if members.is_empty() {
            return Err(Error::InvalidArgument("arrangement must be nonempty".into()));
        }
        if order == 0 {
            return Err(Error::InvalidArgument("tubular order must be >= 1".into()));
        }
        let level = Arrangement::member_level(flavor, order);
        let p = members[0].dual().ring().p();
        let dim = members[0].dim();
        for m in &members {
            if m.level() != level {
                return Err(Error::PrecisionTooLow { needed: level, have: m.level() });
            }
            if m.dual().ring().p() != p || m.dim() != dim {
                return Err(Error::RingMismatch);
            }
        }
        let mut members = members;
        members.sort();
        members.dedup();
        Ok(Arrangement { flavor, p, order: Some(order), members: Members::Tubular(members) })
    }

    pub fn algebraic(p: u64, members: Vec<AlgebraicHyperplane>) -> Result<Arrangement> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("arrangement must be nonempty".into()));
        }
        let dim = members[0].dim();
        if members.iter().any(|m| m.dim() != dim) {
            return Err(Error::InvalidArgument("mixed ambient dimensions".into()));
        }
        let mut members = members;
        members.sort();
        members.dedup();
        Ok(Arrangement { flavor: Flavor::Algebraic, p, order: None, members: Members::Algebraic(members) })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn len(&self) -> usize {
        match &self.members {
            Members::Tubular(v) => v.len(),
            Members::Algebraic(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match &self.members {
            Members::Tubular(v) => v[0].dim(),
            Members::Algebraic(v) => v[0].dim(),
        }
    }

    pub fn tubular_members(&self) -> Option<&[Hyperplane]> {
        match &self.members {
            Members::Tubular(v) => Some(v),
            Members::Algebraic(_) => None,
        }
    }

    pub fn algebraic_members(&self) -> Option<&[AlgebraicHyperplane]> {
        match &self.members {
            Members::Algebraic(v) => Some(v),
            Members::Tubular(_) => None,
        }
    }

    /// Stacked dual representatives as rows of an integer matrix.
    pub fn dual_matrix(&self) -> IntMat {
        match &self.members {
            Members::Tubular(v) => {
                IntMat::from_rows(v.iter().map(|h| h.dual().lift()).collect())
            }
            Members::Algebraic(v) => {
                IntMat::from_rows(v.iter().map(|h| h.coords().to_vec()).collect())
            }
        }
    }

    /// Rank of the lattice spanned by the duals: the number of elementary
    /// divisor exponents strictly below the defining precision (tubular), or
    /// the integer rank of the stacked duals (algebraic).
    pub fn rank(&self) -> usize {
        match &self.members {
            Members::Tubular(v) => {
                let level = v[0].level();
                let ring = v[0].dual().ring().clone();
                let snf = snf_local(&self.dual_matrix(), &ring);
                snf.rank_below_precision(level)
            }
            Members::Algebraic(_) => snf_int(&self.dual_matrix()).rank,
        }
    }

    /// Sub-arrangement on the members selected by `idx` (sorted indices).
    pub fn subset(&self, idx: &[usize]) -> Result<Arrangement> {
        match &self.members {
            Members::Tubular(v) => Arrangement::tubular(
                self.flavor,
                self.order.unwrap(),
                idx.iter().map(|&i| v[i].clone()).collect(),
            ),
            Members::Algebraic(v) => {
                Arrangement::algebraic(self.p, idx.iter().map(|&i| v[i].clone()).collect())
            }
        }
    }
}

/// Shape of the union of a closed tubular arrangement: a ball for a single
/// member, otherwise a fibration over `P^t` with closed-ball fibers whose
/// radii are read off the exponent vector `beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniShape {
    Ball,
    Fibration {
        t: usize,
        beta: Vec<u32>,
        alphas: Vec<Valuation>,
        basis_change: IntMat,
    },
}

impl UniShape {
    pub fn beta(&self) -> Option<&[u32]> {
        match self {
            UniShape::Ball => None,
            UniShape::Fibration { beta, .. } => Some(beta),
        }
    }

    pub fn t(&self) -> Option<usize> {
        match self {
            UniShape::Ball => None,
            UniShape::Fibration { t, .. } => Some(*t),
        }
    }
}

/// Classify the union of a closed tubular arrangement.
///
/// Diagonalizes the stacked duals over `Z/p^n` into exponents
/// `alpha_0 <= alpha_1 <= ...` and returns `t + 1 = #{alpha_i < n}` with
/// `beta_i = n - alpha_i` for `i <= t` (positive, nonincreasing). The right
/// transform of the normal form witnesses the change of basis.
pub fn classify_uni(a: &Arrangement) -> Result<UniShape> {
    let members = a
        .tubular_members()
        .filter(|_| a.flavor() == Flavor::ClosedTubular)
        .ok_or_else(|| Error::InvalidArgument("classification needs a closed tubular arrangement".into()))?;
    if members.len() == 1 {
        return Ok(UniShape::Ball);
    }
    let n = a.order().unwrap();
    let ring = members[0].dual().ring().clone();
    let snf = snf_local(&a.dual_matrix(), &ring);
    let t_plus_1 = snf.rank_below_precision(n);
    let beta: Vec<u32> = snf
        .alphas
        .iter()
        .take(t_plus_1)
        .map(|alpha| match alpha {
            Valuation::Finite(v) => n - v,
            Valuation::Infinity => unreachable!("taken below precision"),
        })
        .collect();
    Ok(UniShape::Fibration { t: t_plus_1 - 1, beta, alphas: snf.alphas.clone(), basis_change: snf.right })
}

/// Project a tubular arrangement to a lower order, merging classes.
pub fn project_arrangement(a: &Arrangement, to_order: u32) -> Result<Arrangement> {
    let members = a
        .tubular_members()
        .ok_or_else(|| Error::InvalidArgument("projection needs a tubular arrangement".into()))?;
    let order = a.order().unwrap();
    if to_order == 0 || to_order > order {
        return Err(Error::InvalidArgument(format!(
            "target order {to_order} not in 1..={order}"
        )));
    }
    let level = Arrangement::member_level(a.flavor(), to_order);
    let projected: Result<Vec<Hyperplane>> = members.iter().map(|h| h.project(level)).collect();
    Arrangement::tubular(a.flavor(), to_order, projected?)
}

/// A compatible family: the closed tubular reductions of an algebraic seed
/// at orders `1..=N`, each level the projection of every later one.
#[derive(Debug, Clone)]
pub struct CompatibleFamily {
    pub seed: Arrangement,
    pub levels: Vec<Arrangement>,
}

impl CompatibleFamily {
    pub fn level(&self, order: u32) -> &Arrangement {
        &self.levels[(order - 1) as usize]
    }

    pub fn max_order(&self) -> u32 {
        self.levels.len() as u32
    }
}

/// Build the compatible family of closed tubular arrangements of orders
/// `1..=n_max` from an algebraic seed.
pub fn compatible_family(seed: &Arrangement, n_max: u32) -> Result<CompatibleFamily> {
    let members = seed
        .algebraic_members()
        .ok_or_else(|| Error::InvalidArgument("compatible families start from an algebraic seed".into()))?;
    if n_max == 0 {
        return Err(Error::InvalidArgument("need at least one level".into()));
    }
    let mut levels = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let ring = Zpn::new(seed.p(), n)?;
        let reduced: Result<Vec<Hyperplane>> = members.iter().map(|m| m.reduce(&ring)).collect();
        levels.push(Arrangement::tubular(Flavor::ClosedTubular, n, reduced?)?);
    }
    Ok(CompatibleFamily { seed: seed.clone(), levels })
}

/// Membership of `z` in the interior of a closed tubular arrangement: true
/// iff `z` avoids the open tube of radius `order` around every member, i.e.
/// the pairing valuation stays `<= order` for the canonical dual lifts.
pub fn int_contains(a: &Arrangement, z: &ProjPoint) -> Result<bool> {
    let members = a
        .tubular_members()
        .filter(|_| a.flavor() == Flavor::ClosedTubular)
        .ok_or_else(|| Error::InvalidArgument("interior membership needs a closed tubular arrangement".into()))?;
    let n = a.order().unwrap();
    if z.level() < n + 1 {
        return Err(Error::PrecisionTooLow { needed: n + 1, have: z.level() });
    }
    for h in members {
        if h.lifted_pair_valuation(z)?.at_least(n + 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subsets_of(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1u32 << k)).map(move |mask| {
        (0..k).filter(|i| mask & (1 << i) != 0).collect()
    })
}

/// The nonempty sub-arrangements with `|B| = rank(B) < d + 1`, the index set
/// of the decomposition of bounded sections into simple elements.
pub fn simple_elements(a: &Arrangement) -> Result<Vec<Arrangement>> {
    if a.len() > SUBSET_CAP {
        return Err(Error::SizeLimit {
            needed: format!("2^{}", a.len()),
            cap: format!("2^{SUBSET_CAP}"),
        });
    }
    let d = a.dim();
    let mut out = Vec::new();
    for idx in subsets_of(a.len()) {
        if idx.len() >= d + 1 {
            continue;
        }
        let b = a.subset(&idx)?;
        if b.rank() == idx.len() {
            out.push(b);
        }
    }
    Ok(out)
}

/// One row of the Mayer-Vietoris hypothesis table: for a nonempty subset,
/// its size, rank, and the degree interval `[0, rank - 1]` in which the
/// union of its tubes can carry cohomology. `hypothesis_ok` records
/// `rank <= size`, the bound the iteration needs.
#[derive(Debug, Clone, Serialize)]
pub struct MvRow {
    pub subset: Vec<usize>,
    pub size: usize,
    pub rank: usize,
    pub concentration_upper: usize,
    pub hypothesis_ok: bool,
}

pub fn mv_degree_bounds(a: &Arrangement) -> Result<Vec<MvRow>> {
    if a.len() > SUBSET_CAP {
        return Err(Error::SizeLimit {
            needed: format!("2^{}", a.len()),
            cap: format!("2^{SUBSET_CAP}"),
        });
    }
    let mut rows = Vec::new();
    for idx in subsets_of(a.len()) {
        let b = a.subset(&idx)?;
        let rank = b.rank();
        rows.push(MvRow {
            size: idx.len(),
            rank,
            concentration_upper: rank - 1,
            hypothesis_ok: rank <= idx.len(),
            subset: idx,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::canonicalize_ints;

    fn closed(p: u64, n: u32, duals: &[Vec<i64>]) -> Arrangement {
        let ring = Zpn::new(p, n).unwrap();
        let members = duals
            .iter()
            .map(|c| Hyperplane::from_ints(&ring, c).unwrap())
            .collect();
        Arrangement::tubular(Flavor::ClosedTubular, n, members).unwrap()
    }

    #[test]
    fn rank_single_hyperplane() {
        let a = closed(3, 2, &[vec![1, 0, 0]]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn rank_congruent_pair() {
        // duals e0 and e0 + p^k e1 span O e0 + p^k O e1: rank 2 when k < n
        for (p, n, k) in [(2u64, 3u32, 1i64), (3, 4, 2)] {
            let a = closed(p, n, &[vec![1, 0, 0], vec![1, (p as i64).pow(k as u32), 0]]);
            assert_eq!(a.rank(), 2);
        }
    }

    #[test]
    fn rank_three_lines_in_plane() {
        // e0, e1, e0 + e1 span a rank-2 sublattice (frozen from the integer
        // rank oracle in tests/arr_props.rs)
        let a = closed(3, 2, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn classify_transverse_pair() {
        let n = 3;
        let a = closed(2, n, &[vec![1, 0, 0], vec![0, 1, 0]]);
        match classify_uni(&a).unwrap() {
            UniShape::Fibration { t, beta, .. } => {
                assert_eq!(t, 1);
                assert_eq!(beta, vec![n, n]);
            }
            UniShape::Ball => panic!("expected a fibration"),
        }
    }

    #[test]
    fn classify_congruent_pair() {
        let (p, n, k) = (2u64, 3u32, 1u32);
        let a = closed(p, n, &[vec![1, 0, 0], vec![1, (p as i64).pow(k), 0]]);
        match classify_uni(&a).unwrap() {
            UniShape::Fibration { t, beta, .. } => {
                assert_eq!(t, 1);
                assert_eq!(beta, vec![n, n - k]);
            }
            UniShape::Ball => panic!("expected a fibration"),
        }
    }

    #[test]
    fn classify_three_coordinate_planes() {
        let n = 2;
        let a = closed(3, n, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        match classify_uni(&a).unwrap() {
            UniShape::Fibration { t, beta, .. } => {
                assert_eq!(t, 2);
                assert_eq!(beta, vec![n, n, n]);
            }
            UniShape::Ball => panic!("expected a fibration"),
        }
    }

    #[test]
    fn classify_singleton_is_ball() {
        let a = closed(2, 2, &[vec![1, 0]]);
        assert_eq!(classify_uni(&a).unwrap(), UniShape::Ball);
    }

    #[test]
    fn projection_merges_members() {
        let n = 3;
        let a = closed(2, n, &[vec![1, 0], vec![1, 4]]); // e0 and e0 + p^{n-1} e1
        let b = project_arrangement(&a, n - 1).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b.rank() <= a.rank());
        assert_eq!(project_arrangement(&a, n).unwrap(), a);
    }

    #[test]
    fn family_of_merging_seed() {
        // seed (1,0), (1,p^2): the closed order-n arrangement lives at
        // level n, so the members split first at n = 3
        let p = 2;
        let seed = Arrangement::algebraic(
            p,
            vec![
                AlgebraicHyperplane::from_ints(p, &[1, 0]).unwrap(),
                AlgebraicHyperplane::from_ints(p, &[1, 4]).unwrap(),
            ],
        )
        .unwrap();
        let fam = compatible_family(&seed, 3).unwrap();
        let sizes: Vec<usize> = fam.levels.iter().map(Arrangement::len).collect();
        assert_eq!(sizes, vec![1, 1, 2]);
        // compatibility: project(level m) = level n for n < m
        for m in 1..=3u32 {
            for n in 1..m {
                assert_eq!(project_arrangement(fam.level(m), n).unwrap(), *fam.level(n));
            }
        }
    }

    #[test]
    fn interior_membership() {
        let n = 1;
        let a = closed(2, n, &[vec![1, 0]]);
        let ring_z = Zpn::new(2, n + 1).unwrap();
        let inside = canonicalize_ints(&ring_z, &[1, 0]).unwrap();
        assert!(int_contains(&a, &inside).unwrap());
        let ring_deep = Zpn::new(2, n + 2).unwrap();
        let deep = canonicalize_ints(&ring_deep, &[4, 1]).unwrap(); // l = p^{n+1}
        assert!(!int_contains(&a, &deep).unwrap());
        // boundary: valuation exactly n stays inside the affinoid
        let boundary = canonicalize_ints(&ring_z, &[2, 1]).unwrap();
        assert!(int_contains(&a, &boundary).unwrap());
        // insufficient precision
        let ring_low = Zpn::new(2, n).unwrap();
        let low = canonicalize_ints(&ring_low, &[1, 0]).unwrap();
        assert!(matches!(int_contains(&a, &low), Err(Error::PrecisionTooLow { .. })));
    }

    #[test]
    fn simple_elements_general_position() {
        // three planes in general position in P^2: singletons and pairs
        // qualify, the triple has |B| = 3 = d + 1
        let a = closed(3, 2, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let simple = simple_elements(&a).unwrap();
        assert_eq!(simple.len(), 6);
        assert!(simple.iter().all(|b| b.len() == b.rank() && b.len() < 3));
    }

    #[test]
    fn simple_elements_degenerate_triple() {
        // duals e0, e0 + p^k e1, e0 + 2 p^k e1 over p > 2: the triple has
        // rank 2 != 3 and is excluded
        let (p, n, k) = (3u64, 3u32, 1u32);
        let pk = (p as i64).pow(k);
        let a = closed(p, n, &[vec![1, 0, 0], vec![1, pk, 0], vec![1, 2 * pk, 0]]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.rank(), 2);
        let simple = simple_elements(&a).unwrap();
        // all singletons and pairs qualify; the triple does not
        assert_eq!(simple.len(), 6);
        assert!(simple.iter().all(|b| b.len() <= 2));
    }

    #[test]
    fn simple_elements_singleton() {
        let a = closed(2, 2, &[vec![1, 0]]);
        let simple = simple_elements(&a).unwrap();
        assert_eq!(simple.len(), 1);
        assert_eq!(simple[0], a);
    }

    #[test]
    fn mv_table_pair() {
        let a = closed(2, 2, &[vec![1, 0], vec![0, 1]]);
        let rows = mv_degree_bounds(&a).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.hypothesis_ok));
        let pair = rows.iter().find(|r| r.size == 2).unwrap();
        assert_eq!(pair.rank, 2);
        assert_eq!(pair.concentration_upper, 1);
    }
}
