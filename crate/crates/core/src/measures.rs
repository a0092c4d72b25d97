//! Integer measures on arrangements: the zero-mass lattices, their
//! pushforwards along level projections, coherent towers representing
//! limit measures, symbolic units and their valuation at interior points,
//! and reduction modulo an integer coprime to p.

use crate::arr::{int_contains, project_arrangement, Arrangement, CompatibleFamily, Flavor};
use crate::error::{Error, Result};
use crate::matrix::IntMat;
use crate::proj::ProjPoint;
use crate::ring::Valuation;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A finitely supported integer weight vector on the members of an
/// arrangement, aligned with the arrangement's sorted member order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    pub arrangement: Arrangement,
    pub weights: Vec<BigInt>,
}

impl Measure {
    pub fn new(arrangement: Arrangement, weights: Vec<BigInt>) -> Result<Measure> {
        if weights.len() != arrangement.len() {
            return Err(Error::InvalidArgument(format!(
                "{} weights for {} members",
                weights.len(),
                arrangement.len()
            )));
        }
        Ok(Measure { arrangement, weights })
    }

    pub fn from_ints(arrangement: Arrangement, weights: &[i64]) -> Result<Measure> {
        Measure::new(arrangement, weights.iter().map(|&w| BigInt::from(w)).collect())
    }

    pub fn zero(arrangement: Arrangement) -> Measure {
        let weights = vec![BigInt::zero(); arrangement.len()];
        Measure { arrangement, weights }
    }

    pub fn mass(&self) -> BigInt {
        self.weights.iter().sum()
    }

    pub fn is_zero_mass(&self) -> bool {
        self.mass().is_zero()
    }

    pub fn l1_norm(&self) -> BigInt {
        self.weights.iter().map(|w| w.abs()).sum()
    }
}

/// Basis of the zero-mass lattice: the differences against the least
/// member. The lattice has rank one less than the number of members.
pub fn zero_mass_basis(a: &Arrangement) -> Vec<Measure> {
    let k = a.len();
    (1..k)
        .map(|i| {
            let mut weights = vec![BigInt::zero(); k];
            weights[i] = BigInt::from(1);
            weights[0] = BigInt::from(-1);
            Measure { arrangement: a.clone(), weights }
        })
        .collect()
}

/// Integer matrix whose columns are the zero-mass basis vectors.
pub fn zero_mass_basis_matrix(a: &Arrangement) -> IntMat {
    let k = a.len();
    let mut m = IntMat::zeros(k, k.saturating_sub(1));
    for j in 1..k {
        m.set(0, j - 1, BigInt::from(-1));
        m.set(j, j - 1, BigInt::from(1));
    }
    m
}

/// Sum the weights along the merged member classes of the projection.
pub fn pushforward(mu: &Measure, to_order: u32) -> Result<Measure> {
    let target = project_arrangement(&mu.arrangement, to_order)?;
    let members = mu.arrangement.tubular_members().expect("projection succeeded");
    let target_members = target.tubular_members().expect("tubular projection");
    let level = Arrangement::member_level(target.flavor(), to_order);
    let mut weights = vec![BigInt::zero(); target.len()];
    for (h, w) in members.iter().zip(&mu.weights) {
        let image = h.project(level)?;
        let idx = target_members
            .binary_search(&image)
            .expect("projection of a member is a member of the projection");
        weights[idx] += w;
    }
    Ok(Measure { arrangement: target, weights })
}

/// A preimage choice certifying that pushforward is onto the zero-mass
/// lattice of the projection: one basis vector of the target per column,
/// with an explicit zero-mass preimage.
#[derive(Debug, Clone)]
pub struct SurjectivityCertificate {
    pub to_order: u32,
    pub preimages: Vec<Measure>,
    pub ok: bool,
}

pub fn pushforward_surjectivity(a: &Arrangement, to_order: u32) -> Result<SurjectivityCertificate> {
    let target = project_arrangement(a, to_order)?;
    let members = a.tubular_members().expect("tubular");
    let target_members = target.tubular_members().expect("tubular");
    let level = Arrangement::member_level(target.flavor(), to_order);

    // one source member over each target member
    let mut section: Vec<Option<usize>> = vec![None; target.len()];
    for (i, h) in members.iter().enumerate() {
        let idx = target_members.binary_search(&h.project(level)?).unwrap();
        section[idx].get_or_insert(i);
    }
    let section: Vec<usize> = section
        .into_iter()
        .map(|s| s.expect("projection is onto the target members"))
        .collect();

    let mut preimages = Vec::new();
    let mut ok = true;
    for b in 1..target.len() {
        let mut weights = vec![BigInt::zero(); a.len()];
        weights[section[b]] += 1;
        weights[section[0]] -= 1;
        let mu = Measure { arrangement: a.clone(), weights };
        let image = pushforward(&mu, to_order)?;
        let mut expected = vec![BigInt::zero(); target.len()];
        expected[b] += 1;
        expected[0] -= 1;
        ok &= image.weights == expected && mu.is_zero_mass();
        preimages.push(mu);
    }
    Ok(SurjectivityCertificate { to_order, preimages, ok })
}

/// Coherence of one zero-mass section per level of a compatible family
/// under pushforward, the finite-level presentation of a limit measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceVerdict {
    pub coherent: bool,
    pub first_incoherent_order: Option<u32>,
}

pub fn limit_element(family: &CompatibleFamily, sections: &[Measure]) -> Result<CoherenceVerdict> {
    if sections.len() != family.levels.len() {
        return Err(Error::InvalidArgument(format!(
            "{} sections for {} levels",
            sections.len(),
            family.levels.len()
        )));
    }
    for (lvl, s) in family.levels.iter().zip(sections) {
        if s.arrangement != *lvl {
            return Err(Error::InvalidArgument(
                "section is not supported on the family's level".into(),
            ));
        }
        if !s.is_zero_mass() {
            return Err(Error::InvalidArgument("sections must have zero mass".into()));
        }
    }
    for m in 2..=family.max_order() {
        let pushed = pushforward(&sections[(m - 1) as usize], m - 1)?;
        if pushed != sections[(m - 2) as usize] {
            return Ok(CoherenceVerdict { coherent: false, first_incoherent_order: Some(m) });
        }
    }
    Ok(CoherenceVerdict { coherent: true, first_incoherent_order: None })
}

/// A zero-mass measure read multiplicatively as a product of linear-form
/// powers, a unit on the interior of its supporting arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicUnit {
    measure: Measure,
}

impl SymbolicUnit {
    pub fn new(measure: Measure) -> Result<SymbolicUnit> {
        if !measure.is_zero_mass() {
            return Err(Error::InvalidArgument(
                "symbolic units require zero total mass".into(),
            ));
        }
        Ok(SymbolicUnit { measure })
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }
}

/// Valuation of the unit at an interior point: the weighted sum of the
/// pairing valuations of the member forms. Zero mass makes the value
/// independent of the unit scaling of every representative.
pub fn unit_valuation(u: &SymbolicUnit, z: &ProjPoint) -> Result<BigInt> {
    let a = &u.measure.arrangement;
    if a.flavor() != Flavor::ClosedTubular {
        return Err(Error::InvalidArgument(
            "unit valuation is evaluated on closed tubular arrangements".into(),
        ));
    }
    if !int_contains(a, z)? {
        return Err(Error::PointInTube);
    }
    let members = a.tubular_members().expect("tubular");
    let mut total = BigInt::zero();
    for (h, w) in members.iter().zip(&u.measure.weights) {
        match h.lifted_pair_valuation(z)? {
            Valuation::Finite(v) => total += w * BigInt::from(v),
            // interior membership bounds every pairing valuation
            Valuation::Infinity => unreachable!("interior point pairs finitely"),
        }
    }
    Ok(total)
}

/// Reduce the weights of a zero-mass measure modulo `m`. For a tubular
/// arrangement `m` must be coprime to `p`.
pub fn kummer_reduce(mu: &Measure, m: u64) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(Error::InvalidArgument("modulus must be >= 2".into()));
    }
    let p = mu.arrangement.p();
    if mu.arrangement.flavor() != Flavor::Algebraic && m % p == 0 {
        return Err(Error::BadModulus { m, p });
    }
    if !mu.is_zero_mass() {
        return Err(Error::InvalidArgument("measure must have zero mass".into()));
    }
    let modulus = BigInt::from(m);
    Ok(mu
        .weights
        .iter()
        .map(|w| {
            let r = w.mod_floor(&modulus);
            u64::try_from(r).expect("residue fits")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::{canonicalize_ints, AlgebraicHyperplane, Hyperplane};
    use crate::ring::Zpn;
    use crate::snf::snf_int;
    use num_traits::One;

    fn closed(p: u64, n: u32, duals: &[Vec<i64>]) -> Arrangement {
        let ring = Zpn::new(p, n).unwrap();
        let members = duals
            .iter()
            .map(|c| Hyperplane::from_ints(&ring, c).unwrap())
            .collect();
        Arrangement::tubular(Flavor::ClosedTubular, n, members).unwrap()
    }

    #[test]
    fn zero_mass_rank() {
        let a = closed(2, 2, &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        let basis = zero_mass_basis(&a);
        assert_eq!(basis.len(), 2);
        assert!(basis.iter().all(Measure::is_zero_mass));
        // the kernel of the mass functional has rank |A| - 1
        let mass_map = IntMat::from_i64_rows(&[vec![1; 3]]);
        let ker = crate::snf::kernel_basis(&mass_map);
        assert_eq!(ker.cols(), 2);
        // basis columns are primitive: all invariant factors are 1
        let snf = snf_int(&zero_mass_basis_matrix(&a));
        assert!(snf.diagonal.iter().all(|d| d.is_one()));
    }

    #[test]
    fn singleton_zero_mass_is_trivial() {
        let a = closed(2, 2, &[vec![1, 0]]);
        assert!(zero_mass_basis(&a).is_empty());
    }

    #[test]
    fn pushforward_merges_weights() {
        let n = 3;
        let a = closed(2, n, &[vec![1, 0], vec![1, 4]]);
        let mu = Measure::from_ints(a.clone(), &[1, -1]).unwrap();
        assert!(mu.is_zero_mass());
        let pushed = pushforward(&mu, 2).unwrap();
        assert_eq!(pushed.arrangement.len(), 1);
        assert!(pushed.weights[0].is_zero());
        assert!(pushed.is_zero_mass());
        // no merge: weights carried over
        let same = pushforward(&mu, n).unwrap();
        assert_eq!(same, mu);
    }

    #[test]
    fn surjectivity_certificate() {
        let n = 3;
        let a = closed(2, n, &[vec![1, 0], vec![1, 4], vec![0, 1]]);
        let cert = pushforward_surjectivity(&a, 2).unwrap();
        assert!(cert.ok);
        assert_eq!(cert.preimages.len(), a.len() - 2); // target has 2 members
    }

    #[test]
    fn coherent_and_incoherent_towers() {
        let p = 2;
        let seed = Arrangement::algebraic(
            p,
            vec![
                AlgebraicHyperplane::from_ints(p, &[1, 0]).unwrap(),
                AlgebraicHyperplane::from_ints(p, &[0, 1]).unwrap(),
            ],
        )
        .unwrap();
        let fam = crate::arr::compatible_family(&seed, 3).unwrap();
        let zero: Vec<Measure> = fam.levels.iter().map(|l| Measure::zero(l.clone())).collect();
        assert!(limit_element(&fam, &zero).unwrap().coherent);

        // constant tower on a non-merging family
        let constant: Vec<Measure> = fam
            .levels
            .iter()
            .map(|l| Measure::from_ints(l.clone(), &[1, -1]).unwrap())
            .collect();
        assert!(limit_element(&fam, &constant).unwrap().coherent);

        // deliberate mismatch at order 2
        let mut broken = constant;
        broken[1] = Measure::from_ints(fam.level(2).clone(), &[-1, 1]).unwrap();
        let verdict = limit_element(&fam, &broken).unwrap();
        assert!(!verdict.coherent);
        assert_eq!(verdict.first_incoherent_order, Some(2));
    }

    #[test]
    fn unit_valuation_examples() {
        let n = 2;
        // sorted members: (0,1) then (1,0); the unit is l_{(1,0)} / l_{(0,1)}
        let a = closed(2, n, &[vec![1, 0], vec![0, 1]]);
        let u = SymbolicUnit::new(Measure::from_ints(a.clone(), &[-1, 1]).unwrap()).unwrap();
        let ring = Zpn::new(2, n + 1).unwrap();
        // both valuations zero
        let z = canonicalize_ints(&ring, &[1, 1]).unwrap();
        assert_eq!(unit_valuation(&u, &z).unwrap(), BigInt::zero());
        // valuation n against (1,0), valuation 0 against (0,1)
        let z = canonicalize_ints(&ring, &[4, 1]).unwrap();
        assert_eq!(unit_valuation(&u, &z).unwrap(), BigInt::from(n));
        // a point inside an open tube is rejected
        let deep_ring = Zpn::new(2, n + 2).unwrap();
        let deep = canonicalize_ints(&deep_ring, &[8, 1]).unwrap();
        assert!(matches!(unit_valuation(&u, &deep), Err(Error::PointInTube)));
    }

    #[test]
    fn kummer_examples() {
        let a = closed(2, 2, &[vec![1, 0], vec![0, 1]]);
        let mu = Measure::from_ints(a.clone(), &[3, -3]).unwrap();
        assert_eq!(kummer_reduce(&mu, 3).unwrap(), vec![0, 0]);
        let basis = zero_mass_basis(&a);
        assert_eq!(kummer_reduce(&basis[0], 3).unwrap(), vec![2, 1]);
        // p | m is rejected for tubular supports
        assert!(matches!(kummer_reduce(&mu, 4), Err(Error::BadModulus { .. })));
    }
}
