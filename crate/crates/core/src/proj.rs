//! Points and hyperplanes of `P^d` over `Z/p^n`: canonical representatives,
//! enumeration, level projections, tube membership and the unimodular
//! group action on hyperplanes (identified with their dual points).

use crate::error::{Error, Result};
use crate::matrix::IntMat;
use crate::ring::{TruncElem, Valuation, Zpn};
use crate::snf::invert_mod;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub const DEFAULT_POINT_CAP: u64 = 1_000_000;

/// A point of `P^d(Z/p^n)` in canonical form: the first coordinate of
/// valuation zero equals 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint {
    ring: Zpn,
    coords: Vec<BigUint>,
}

impl ProjPoint {
    pub fn ring(&self) -> &Zpn {
        &self.ring
    }

    pub fn level(&self) -> u32 {
        self.ring.n()
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[BigUint] {
        &self.coords
    }

    pub fn coord_elems(&self) -> Vec<TruncElem> {
        self.coords.iter().map(|c| self.ring.elem(c.clone())).collect()
    }

    /// Canonical integer lift of the coordinates, entries in `[0, p^n)`.
    pub fn lift(&self) -> Vec<BigInt> {
        self.coords.iter().map(|c| BigInt::from(c.clone())).collect()
    }
}

/// Scale a unimodular coordinate vector into canonical form.
pub fn canonicalize(ring: &Zpn, coords: &[BigUint]) -> Result<ProjPoint> {
    assert!(!coords.is_empty(), "empty coordinate vector");
    let reduced: Vec<BigUint> = coords.iter().map(|c| c % ring.modulus()).collect();
    let pivot = reduced
        .iter()
        .position(|c| ring.valuation_of(c) == Valuation::Finite(0))
        .ok_or(Error::NotUnimodular { p: ring.p() })?;
    let inv = ring.invert(&reduced[pivot])?;
    let coords = reduced.iter().map(|c| (c * &inv) % ring.modulus()).collect();
    Ok(ProjPoint { ring: ring.clone(), coords })
}

pub fn canonicalize_ints(ring: &Zpn, coords: &[i64]) -> Result<ProjPoint> {
    let lifted: Vec<BigUint> = coords
        .iter()
        .map(|&c| {
            let m = BigInt::from(ring.modulus().clone());
            let mut r = BigInt::from(c).mod_floor(&m);
            if r.is_negative() {
                r += &m;
            }
            r.to_biguint().unwrap()
        })
        .collect();
    canonicalize(ring, &lifted)
}

/// Closed formula for `|P^d(Z/p^n)|`.
pub fn point_count(d: usize, p: u64, n: u32) -> BigUint {
    let p = BigUint::from(p);
    let total = p.pow(n * (d as u32 + 1)) - p.pow((n - 1) * (d as u32 + 1));
    let units = p.pow(n - 1) * (&p - 1u32);
    &total / &units
}

/// Every point of `P^d(Z/p^n)`, one canonical representative per class, in
/// lexicographic order of the canonical coordinate vectors.
pub fn enumerate_points(d: usize, p: u64, n: u32, cap: u64) -> Result<Vec<ProjPoint>> {
    let ring = Zpn::new(p, n)?;
    if d == 0 {
        return Err(Error::InvalidArgument("dimension d must be >= 1".into()));
    }
    let count = point_count(d, p, n);
    if count > BigUint::from(cap) {
        return Err(Error::SizeLimit { needed: count.to_string(), cap: cap.to_string() });
    }

    // canonical vectors have a pivot index j: coordinates before j are
    // divisible by p, coordinate j is 1, coordinates after j are free
    let modulus = ring.modulus().clone();
    let p_big = BigUint::from(p);
    let mut points = Vec::new();
    let mut multiples_of_p = Vec::new();
    {
        let mut m = BigUint::zero();
        while m < modulus {
            multiples_of_p.push(m.clone());
            m += &p_big;
        }
    }
    let all_residues: Vec<BigUint> = {
        let mut v = Vec::new();
        let mut m = BigUint::zero();
        while m < modulus {
            v.push(m.clone());
            m += 1u32;
        }
        v
    };

    for pivot in 0..=d {
        let mut partial: Vec<Vec<BigUint>> = vec![Vec::new()];
        for pos in 0..=d {
            let choices: &[BigUint] = if pos < pivot {
                &multiples_of_p
            } else if pos == pivot {
                std::slice::from_ref(&all_residues[1])
            } else {
                &all_residues
            };
            let mut next = Vec::with_capacity(partial.len() * choices.len());
            for v in &partial {
                for c in choices {
                    let mut w = v.clone();
                    w.push(c.clone());
                    next.push(w);
                }
            }
            partial = next;
        }
        for coords in partial {
            points.push(ProjPoint { ring: ring.clone(), coords });
        }
    }
    points.sort_by(|a, b| a.coords.cmp(&b.coords));
    Ok(points)
}

/// Reduce a point to a lower level and re-canonicalize. Commutes with
/// canonicalization and composes along chains of levels.
pub fn project_point(x: &ProjPoint, to_level: u32) -> Result<ProjPoint> {
    if to_level == 0 || to_level > x.level() {
        return Err(Error::InvalidArgument(format!(
            "target level {to_level} not in 1..={}",
            x.level()
        )));
    }
    let ring = x.ring.with_precision(to_level)?;
    canonicalize(&ring, x.coords())
}

/// A hyperplane, identified with its dual point class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    dual: ProjPoint,
}

impl Hyperplane {
    pub fn new(dual: ProjPoint) -> Hyperplane {
        Hyperplane { dual }
    }

    pub fn from_ints(ring: &Zpn, coords: &[i64]) -> Result<Hyperplane> {
        Ok(Hyperplane { dual: canonicalize_ints(ring, coords)? })
    }

    pub fn dual(&self) -> &ProjPoint {
        &self.dual
    }

    pub fn level(&self) -> u32 {
        self.dual.level()
    }

    pub fn dim(&self) -> usize {
        self.dual.dim()
    }

    pub fn project(&self, to_level: u32) -> Result<Hyperplane> {
        Ok(Hyperplane { dual: project_point(&self.dual, to_level)? })
    }

    /// Valuation of the linear form of this hyperplane evaluated on `z`,
    /// computed from the canonical lifts in `Z/p^min(levels)`. This is the
    /// representative-independent pairing at the shared precision.
    pub fn pair_valuation(&self, z: &ProjPoint) -> Result<Valuation> {
        if self.dual.ring.p() != z.ring.p() {
            return Err(Error::RingMismatch);
        }
        if self.dim() != z.dim() {
            return Err(Error::InvalidArgument("dimension mismatch".into()));
        }
        let level = self.level().min(z.level());
        let ring = self.dual.ring.with_precision(level)?;
        let sum: BigUint = self
            .dual
            .coords()
            .iter()
            .zip(z.coords())
            .map(|(a, b)| a * b)
            .sum::<BigUint>()
            % ring.modulus();
        Ok(ring.valuation_of(&sum))
    }

    /// Valuation of the pairing evaluated at the point's full precision,
    /// using the canonical integer lift of the dual representative. Beyond
    /// the dual's own level the result depends on that canonical choice.
    pub fn lifted_pair_valuation(&self, z: &ProjPoint) -> Result<Valuation> {
        if self.dual.ring.p() != z.ring.p() {
            return Err(Error::RingMismatch);
        }
        if self.dim() != z.dim() {
            return Err(Error::InvalidArgument("dimension mismatch".into()));
        }
        let ring = &z.ring;
        let sum: BigUint = self
            .dual
            .coords()
            .iter()
            .zip(z.coords())
            .map(|(a, b)| a * b)
            .sum::<BigUint>()
            % ring.modulus();
        Ok(ring.valuation_of(&sum))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TubeFlavor {
    Closed,
    Open,
}

/// Membership of `z` in the tube of radius exponent `n` around `h`.
///
/// The closed tube tests `val(l(z)) >= n` and is determined by the class of
/// `h` at level `n`; the open tube tests `val(l(z)) >= n+1` and needs the
/// class at level `n+1`. The point must carry at least `n+1` digits.
pub fn tube_contains(h: &Hyperplane, z: &ProjPoint, n: u32, flavor: TubeFlavor) -> Result<bool> {
    let needed_h = match flavor {
        TubeFlavor::Closed => n,
        TubeFlavor::Open => n + 1,
    };
    if h.level() < needed_h {
        return Err(Error::PrecisionTooLow { needed: needed_h, have: h.level() });
    }
    if z.level() < n + 1 {
        return Err(Error::PrecisionTooLow { needed: n + 1, have: z.level() });
    }
    let val = h.pair_valuation(z)?;
    Ok(match flavor {
        TubeFlavor::Closed => val.at_least(n),
        TubeFlavor::Open => val.at_least(n + 1),
    })
}

/// Action of an invertible matrix on a hyperplane through its dual: the dual
/// transforms by the inverse transpose, so that `g` maps the tube of `h`
/// onto the tube of `gl_act(g, h)` of the same radius.
pub fn gl_act(g: &IntMat, h: &Hyperplane) -> Result<Hyperplane> {
    let ring = h.dual.ring.clone();
    let k = h.dim() + 1;
    if g.rows() != k || g.cols() != k {
        return Err(Error::InvalidArgument("matrix size must match the ambient dimension".into()));
    }
    let inv_t = invert_mod(g, &ring)?.transpose();
    let lifted = IntMat::from_rows(vec![h.dual.lift()]).transpose();
    let image = inv_t.mul(&lifted).reduce_mod(ring.modulus());
    let coords: Vec<BigUint> = (0..k).map(|i| image.at(i, 0).to_biguint().unwrap()).collect();
    Ok(Hyperplane { dual: canonicalize(&ring, &coords)? })
}

/// Apply an integer matrix to a point at the point's own level.
pub fn apply_matrix_point(g: &IntMat, z: &ProjPoint) -> Result<ProjPoint> {
    let ring = z.ring.clone();
    let k = z.dim() + 1;
    assert_eq!(g.rows(), k);
    assert_eq!(g.cols(), k);
    let lifted = IntMat::from_rows(vec![z.lift()]).transpose();
    let image = g.mul(&lifted).reduce_mod(ring.modulus());
    let coords: Vec<BigUint> = (0..k).map(|i| image.at(i, 0).to_biguint().unwrap()).collect();
    canonicalize(&ring, &coords)
}

/// A hyperplane with exact integer coordinates, unimodular at every level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlgebraicHyperplane {
    coords: Vec<BigInt>,
}

impl AlgebraicHyperplane {
    /// Normalizes the content: divides by the gcd of the entries and makes
    /// the first nonzero entry positive. Fails when every entry is
    /// divisible by `p` (reduction would not be unimodular).
    pub fn new(p: u64, coords: Vec<BigInt>) -> Result<AlgebraicHyperplane> {
        if coords.is_empty() || coords.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("zero vector".into()));
        }
        let mut gcd = BigInt::zero();
        for c in &coords {
            gcd = gcd.gcd(c);
        }
        let mut coords: Vec<BigInt> = coords.iter().map(|c| c / &gcd).collect();
        if coords.iter().find(|c| !c.is_zero()).map(|c| c.is_negative()).unwrap_or(false) {
            for c in &mut coords {
                *c = -c.clone();
            }
        }
        let p_big = BigInt::from(p);
        if coords.iter().all(|c| c.mod_floor(&p_big).is_zero()) {
            return Err(Error::NotUnimodular { p });
        }
        Ok(AlgebraicHyperplane { coords })
    }

    pub fn from_ints(p: u64, coords: &[i64]) -> Result<AlgebraicHyperplane> {
        AlgebraicHyperplane::new(p, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Reduction modulo `p^n`, canonicalized.
    pub fn reduce(&self, ring: &Zpn) -> Result<Hyperplane> {
        let m = BigInt::from(ring.modulus().clone());
        let coords: Vec<BigUint> = self
            .coords
            .iter()
            .map(|c| {
                let mut r = c.mod_floor(&m);
                if r.is_negative() {
                    r += &m;
                }
                r.to_biguint().unwrap()
            })
            .collect();
        Ok(Hyperplane { dual: canonicalize(ring, &coords)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_example() {
        // Frozen from the unit-orbit oracle at p=2, n=2: (3,2) ~ (1,2).
        let ring = Zpn::new(2, 2).unwrap();
        let p = canonicalize_ints(&ring, &[3, 2]).unwrap();
        assert_eq!(p.coords(), &[BigUint::from(1u32), BigUint::from(2u32)]);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let ring = Zpn::new(3, 2).unwrap();
        let p = canonicalize_ints(&ring, &[6, 2, 5]).unwrap();
        let q = canonicalize(&ring, p.coords()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn standard_basis_vector_is_fixed() {
        let ring = Zpn::new(5, 2).unwrap();
        let p = canonicalize_ints(&ring, &[1, 0, 0]).unwrap();
        assert_eq!(p.coords(), &[1u32.into(), 0u32.into(), 0u32.into()]);
    }

    #[test]
    fn non_unimodular_is_rejected() {
        let ring = Zpn::new(2, 1).unwrap();
        assert!(matches!(
            canonicalize_ints(&ring, &[0, 2]),
            Err(Error::NotUnimodular { p: 2 })
        ));
    }

    #[test]
    fn point_counts_small() {
        assert_eq!(point_count(1, 2, 1), BigUint::from(3u32));
        assert_eq!(point_count(1, 2, 2), BigUint::from(6u32));
        assert_eq!(point_count(2, 3, 1), BigUint::from(13u32));
    }

    #[test]
    fn enumeration_matches_count_and_is_sorted() {
        for (d, p, n) in [(1, 2, 1), (1, 2, 2), (2, 3, 1), (1, 3, 2)] {
            let pts = enumerate_points(d, p, n, DEFAULT_POINT_CAP).unwrap();
            assert_eq!(BigUint::from(pts.len()), point_count(d, p, n));
            let mut sorted = pts.clone();
            sorted.sort_by(|a, b| a.coords().cmp(b.coords()));
            assert_eq!(pts, sorted);
            let mut dedup = pts.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), pts.len());
        }
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(enumerate_points(2, 3, 3, 10), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn projection_drops_digits() {
        let ring = Zpn::new(2, 2).unwrap();
        let x = canonicalize_ints(&ring, &[1, 3]).unwrap(); // (1, 1+p)
        let y = project_point(&x, 1).unwrap();
        assert_eq!(y.coords(), &[BigUint::from(1u32), BigUint::from(1u32)]);
        assert_eq!(project_point(&x, 2).unwrap(), x);
    }

    #[test]
    fn closed_tube_examples() {
        let n = 2u32;
        let ring_h = Zpn::new(3, n).unwrap();
        let ring_z = Zpn::new(3, n + 1).unwrap();
        let h = Hyperplane::from_ints(&ring_h, &[1, 0]).unwrap();
        let deep = canonicalize_ints(&ring_z, &[9, 1]).unwrap(); // l(z) = p^n
        assert!(tube_contains(&h, &deep, n, TubeFlavor::Closed).unwrap());
        let outside = canonicalize_ints(&ring_z, &[1, 0]).unwrap();
        assert!(!tube_contains(&h, &outside, n, TubeFlavor::Closed).unwrap());
        // open tube at radius n needs valuation n+1
        let h_open = Hyperplane::from_ints(&ring_z, &[1, 0]).unwrap();
        assert!(!tube_contains(&h_open, &deep, n, TubeFlavor::Open).unwrap());
    }

    #[test]
    fn tube_precision_requirements() {
        let ring = Zpn::new(2, 2).unwrap();
        let h = Hyperplane::from_ints(&ring, &[1, 0]).unwrap();
        let z = canonicalize_ints(&ring, &[0, 1]).unwrap();
        assert!(matches!(
            tube_contains(&h, &z, 2, TubeFlavor::Closed),
            Err(Error::PrecisionTooLow { .. })
        ));
        assert!(matches!(
            tube_contains(&h, &z, 2, TubeFlavor::Open),
            Err(Error::PrecisionTooLow { .. })
        ));
    }

    #[test]
    fn gl_act_identity_and_permutation() {
        let ring = Zpn::new(3, 2).unwrap();
        let h = Hyperplane::from_ints(&ring, &[1, 0, 0]).unwrap();
        let id = IntMat::identity(3);
        assert_eq!(gl_act(&id, &h).unwrap(), h);
        // cyclic permutation e0 -> e1 -> e2 -> e0
        let g = IntMat::from_i64_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        let gh = gl_act(&g, &h).unwrap();
        let expected = Hyperplane::from_ints(&ring, &[0, 1, 0]).unwrap();
        assert_eq!(gh, expected);
    }

    #[test]
    fn gl_act_rejects_singular() {
        let ring = Zpn::new(2, 2).unwrap();
        let h = Hyperplane::from_ints(&ring, &[1, 0]).unwrap();
        let g = IntMat::from_i64_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(matches!(gl_act(&g, &h), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn algebraic_normalization() {
        let h = AlgebraicHyperplane::from_ints(3, &[-2, 4]).unwrap();
        assert_eq!(h.coords(), &[BigInt::from(1), BigInt::from(-2)]);
        // full content divides out, including p-powers: the line through
        // (3, 6) has unimodular generator (1, 2)
        let g = AlgebraicHyperplane::from_ints(3, &[3, 6]).unwrap();
        assert_eq!(g.coords(), &[BigInt::from(1), BigInt::from(2)]);
        assert!(AlgebraicHyperplane::from_ints(3, &[0, 0]).is_err());
    }
}
