//! Brute-force orbit oracles for the projective machinery: enumeration
//! counts, canonical-form bijectivity on unit orbits, projection towers,
//! tube well-definedness and equivariance of the group action.

mod common;

use common::random_unimodular;
use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha12Rng;
use tubular::proj::{
    apply_matrix_point, canonicalize, enumerate_points, gl_act, point_count, project_point,
    tube_contains, Hyperplane, ProjPoint, TubeFlavor, DEFAULT_POINT_CAP,
};
use tubular::ring::{Valuation, Zpn};

/// All unimodular vectors in (Z/p^n)^{d+1}, no identification.
fn all_unimodular(ring: &Zpn, d: usize) -> Vec<Vec<BigUint>> {
    let modulus = ring.modulus().clone();
    let mut vectors: Vec<Vec<BigUint>> = vec![Vec::new()];
    for _ in 0..=d {
        let mut next = Vec::new();
        for v in &vectors {
            let mut c = BigUint::zero();
            while c < modulus {
                let mut w = v.clone();
                w.push(c.clone());
                next.push(w);
                c += 1u32;
            }
        }
        vectors = next;
    }
    vectors
        .into_iter()
        .filter(|v| v.iter().any(|c| ring.valuation_of(c) == Valuation::Finite(0)))
        .collect()
}

fn units(ring: &Zpn) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut c = BigUint::zero();
    while &c < ring.modulus() {
        if ring.valuation_of(&c) == Valuation::Finite(0) {
            out.push(c.clone());
        }
        c += 1u32;
    }
    out
}

/// Orbit counting oracle: group unimodular vectors under unit scaling and
/// compare with the closed formula and the library enumeration. This is
/// the full grid p in {2,3}, d <= 2, n <= 3.
#[test]
fn brute_force_orbit_counts() {
    for p in [2u64, 3] {
        for d in [1usize, 2] {
            for n in [1u32, 2, 3] {
                let ring = Zpn::new(p, n).unwrap();
                let us = units(&ring);
                let mut orbit_reps = std::collections::BTreeSet::new();
                for v in all_unimodular(&ring, d) {
                    let orbit_min = us
                        .iter()
                        .map(|u| {
                            v.iter()
                                .map(|c| (c * u) % ring.modulus())
                                .collect::<Vec<BigUint>>()
                        })
                        .min()
                        .unwrap();
                    orbit_reps.insert(orbit_min);
                }
                let count = point_count(d, p, n);
                assert_eq!(BigUint::from(orbit_reps.len()), count, "p={p} d={d} n={n}");
                let pts = enumerate_points(d, p, n, DEFAULT_POINT_CAP).unwrap();
                assert_eq!(pts.len(), orbit_reps.len(), "p={p} d={d} n={n}");
            }
        }
    }
}

/// canonicalize is constant on unit orbits and injective across orbits,
/// exhaustively at d = 1, p = 2, n = 2.
#[test]
fn canonical_form_separates_orbits() {
    let ring = Zpn::new(2, 2).unwrap();
    let us = units(&ring);
    let vectors = all_unimodular(&ring, 1);
    let mut class_of = std::collections::BTreeMap::new();
    for v in &vectors {
        let canon = canonicalize(&ring, v).unwrap();
        // constant on the orbit
        for u in &us {
            let scaled: Vec<BigUint> = v.iter().map(|c| (c * u) % ring.modulus()).collect();
            assert_eq!(canonicalize(&ring, &scaled).unwrap(), canon);
        }
        // injective across orbits: two vectors with the same canonical form
        // must be unit multiples of one another
        let orbit_min = us
            .iter()
            .map(|u| v.iter().map(|c| (c * u) % ring.modulus()).collect::<Vec<BigUint>>())
            .min()
            .unwrap();
        if let Some(previous) = class_of.insert(canon.coords().to_vec(), orbit_min.clone()) {
            assert_eq!(previous, orbit_min);
        }
    }
    // one canonical form per orbit
    let orbits: std::collections::BTreeSet<_> = class_of.values().collect();
    assert_eq!(orbits.len(), class_of.len());
}

fn random_point(ring: &Zpn, d: usize, rng: &mut impl rand::Rng) -> ProjPoint {
    loop {
        let coords: Vec<BigUint> = (0..=d)
            .map(|_| {
                let m: u64 = rng.gen_range(0..1 << 20);
                BigUint::from(m) % ring.modulus()
            })
            .collect();
        if let Ok(p) = canonicalize(&ring.clone(), &coords) {
            return p;
        }
    }
}

/// project(m -> k) equals project(m -> n -> k) on random points.
#[test]
fn projection_tower_composes() {
    let mut rng = ChaCha12Rng::seed_from_u64(1);
    for _ in 0..200 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let m = rng.gen_range(2..=5u32);
        let ring = Zpn::new(p, m).unwrap();
        let d = rng.gen_range(1..=3usize);
        let x = random_point(&ring, d, &mut rng);
        let n = rng.gen_range(1..=m);
        let k = rng.gen_range(1..=n);
        let direct = project_point(&x, k).unwrap();
        let via = project_point(&project_point(&x, n).unwrap(), k).unwrap();
        assert_eq!(direct, via);
        // projection commutes with canonicalization by construction; the
        // identity projection is the identity
        assert_eq!(project_point(&x, m).unwrap(), x);
    }
}

/// Two duals equal at the defining level give identical closed-tube
/// verdicts; likewise for open tubes one level higher.
#[test]
fn tube_verdicts_depend_only_on_the_class() {
    let mut rng = ChaCha12Rng::seed_from_u64(2);
    for _ in 0..100 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let n = rng.gen_range(1..=3u32);
        let big = Zpn::new(p, n + 2).unwrap();
        let d = rng.gen_range(1..=2usize);

        // a dual at high precision and a perturbation equal at level n
        let h_hi = Hyperplane::new(random_point(&big, d, &mut rng));
        let step = BigUint::from(p).pow(n);
        let perturbed: Vec<BigUint> = h_hi
            .dual()
            .coords()
            .iter()
            .map(|c| {
                let bump: u64 = rng.gen_range(0..3);
                (c + &step * BigUint::from(bump)) % big.modulus()
            })
            .collect();
        let Ok(h2_hi) = canonicalize(&big, &perturbed).map(Hyperplane::new) else { continue };

        let h1 = h_hi.project(n).unwrap();
        let h2 = h2_hi.project(n).unwrap();
        assert_eq!(h1, h2, "perturbation by p^n preserves the level-n class");

        let z = random_point(&big, d, &mut rng);
        // closed verdict at radius n computed through either high-precision
        // representative agrees (both reduce to the same class at level n)
        let v1 = tube_contains(&h_hi, &z, n, TubeFlavor::Closed).unwrap();
        let v2 = tube_contains(&h2_hi, &z, n, TubeFlavor::Closed).unwrap();
        assert_eq!(v1, v2);
        // and the level-n class itself decides
        let v3 = tube_contains(&h1, &z, n, TubeFlavor::Closed).unwrap();
        assert_eq!(v1, v3);

        // open tubes at radius n: perturbations by p^{n+1} preserve verdicts
        let step_open = BigUint::from(p).pow(n + 1);
        let perturbed_open: Vec<BigUint> = h_hi
            .dual()
            .coords()
            .iter()
            .map(|c| (c + &step_open) % big.modulus())
            .collect();
        if let Ok(h3_hi) = canonicalize(&big, &perturbed_open).map(Hyperplane::new) {
            let w1 = tube_contains(&h_hi, &z, n, TubeFlavor::Open).unwrap();
            let w2 = tube_contains(&h3_hi, &z, n, TubeFlavor::Open).unwrap();
            assert_eq!(w1, w2);
        }
    }
}

/// membership(g H, g z) = membership(H, z) for integer unimodular g.
#[test]
fn tube_equivariance_under_gl() {
    let mut rng = ChaCha12Rng::seed_from_u64(3);
    for _ in 0..100 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let n = rng.gen_range(1..=3u32);
        let ring_h = Zpn::new(p, n).unwrap();
        let ring_z = Zpn::new(p, n + 1).unwrap();
        let d = rng.gen_range(1..=2usize);

        let h = Hyperplane::new(random_point(&ring_h, d, &mut rng));
        let z = random_point(&ring_z, d, &mut rng);
        let g = random_unimodular(d + 1, &mut rng);

        let gh = gl_act(&g.reduce_mod(ring_h.modulus()), &h).unwrap();
        let gz = apply_matrix_point(&g.reduce_mod(ring_z.modulus()), &z).unwrap();

        let before = tube_contains(&h, &z, n, TubeFlavor::Closed).unwrap();
        let after = tube_contains(&gh, &gz, n, TubeFlavor::Closed).unwrap();
        assert_eq!(before, after);
    }
}

/// gl_act is a group action: (gh) . x = g . (h . x).
#[test]
fn gl_action_composes() {
    let mut rng = ChaCha12Rng::seed_from_u64(4);
    let ring = Zpn::new(3, 2).unwrap();
    for _ in 0..50 {
        let h = Hyperplane::new(random_point(&ring, 2, &mut rng));
        let g1 = random_unimodular(3, &mut rng).reduce_mod(ring.modulus());
        let g2 = random_unimodular(3, &mut rng).reduce_mod(ring.modulus());
        let lhs = gl_act(&g1.mul(&g2).reduce_mod(ring.modulus()), &h).unwrap();
        let rhs = gl_act(&g1, &gl_act(&g2, &h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
