//! Finite-level models of the restriction maps between nested polyannuli
//! and the filtered-group criterion that forces derived limits of the
//! section towers to vanish.

use crate::error::{Error, Result};
use crate::matrix::IntMat;
use crate::ring::Zpn;
use crate::snf::{kernel_basis, solve};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// One coordinate of a product of annuli and disks: disks only carry an
/// upper exponent bound, annuli carry both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CoordRange {
    Disk { upper: i64 },
    Annulus { lower: i64, upper: i64 },
}

impl CoordRange {
    fn bounds(&self) -> (i64, i64) {
        match *self {
            CoordRange::Disk { upper } => (0, upper),
            CoordRange::Annulus { lower, upper } => (lower, upper),
        }
    }
}

/// A finite truncation of the monomial basis of a product of closed annuli
/// and disks: exponents of disk coordinates are non-negative, annulus
/// coordinates range over a symmetric window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBox {
    pub coords: Vec<CoordRange>,
}

impl MonomialBox {
    pub fn new(coords: Vec<CoordRange>) -> Result<MonomialBox> {
        for c in &coords {
            let (lo, hi) = c.bounds();
            if lo > hi {
                return Err(Error::InvalidArgument(format!("empty range {lo}..={hi}")));
            }
            if let CoordRange::Annulus { lower, .. } = c {
                if *lower > 0 {
                    return Err(Error::InvalidArgument(
                        "annulus ranges must reach non-positive exponents".into(),
                    ));
                }
            }
        }
        Ok(MonomialBox { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// All exponent vectors of the box, lexicographically.
    pub fn monomials(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = vec![Vec::new()];
        for c in &self.coords {
            let (lo, hi) = c.bounds();
            let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
            for v in &out {
                for e in lo..=hi {
                    let mut w = v.clone();
                    w.push(e);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

/// Scaling exponent picked up by one normalized basis monomial under a
/// one-step shrink of all radii: the l1-weight of its exponent vector.
pub fn monomial_shrink_exponent(nu: &[i64]) -> u64 {
    nu.iter().map(|e| e.unsigned_abs()).sum()
}

/// The diagonal restriction data of the box: every monomial paired with its
/// one-step scaling exponent.
pub fn restriction_scaling(b: &MonomialBox) -> Vec<(Vec<i64>, u64)> {
    b.monomials()
        .into_iter()
        .map(|nu| {
            let e = monomial_shrink_exponent(&nu);
            (nu, e)
        })
        .collect()
}

/// Certificate that after `steps` shrink steps every non-constant monomial
/// of the truncated section lattice lands in `p^steps` times the target
/// lattice, verified through the residue ring `Z/p^m`.
#[derive(Debug, Clone, Serialize)]
pub struct RestrictionCertificate {
    pub ok: bool,
    pub steps: u32,
    pub precision: u32,
    pub monomials_checked: usize,
    /// least scaling exponent over the non-constant monomials
    pub min_exponent: Option<u64>,
    pub witness_monomial: Option<Vec<i64>>,
}

pub fn check_restriction_inclusion(
    b: &MonomialBox,
    p: u64,
    m: u32,
    steps: u32,
) -> Result<RestrictionCertificate> {
    if m < 2 {
        return Err(Error::InvalidArgument("coefficient precision must be >= 2".into()));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("need at least one shrink step".into()));
    }
    let ring = Zpn::new(p, m)?;
    let mut ok = true;
    let mut min_exponent: Option<u64> = None;
    let mut witness = None;
    let mut checked = 0usize;
    for (nu, weight) in restriction_scaling(b) {
        if nu.iter().all(|&e| e == 0) {
            continue;
        }
        checked += 1;
        let exponent = weight * steps as u64;
        // the restriction coefficient p^exponent in the residue ring
        let coeff = ring.elem(num_bigint::BigUint::from(p).pow(exponent.min(u64::from(m)) as u32));
        let deep_enough = coeff.valuation().at_least(steps);
        if !deep_enough {
            ok = false;
        }
        if min_exponent.map(|e| exponent < e).unwrap_or(true) {
            min_exponent = Some(exponent);
            witness = Some(nu);
        }
    }
    Ok(RestrictionCertificate {
        ok: ok && min_exponent.map(|e| e >= steps as u64).unwrap_or(true),
        steps,
        precision: m,
        monomials_checked: checked,
        min_exponent,
        witness_monomial: witness,
    })
}

/// A finite-level filtered system of subgroups of `(Z/p^E)^rank`: for each
/// tower level `n` and filtration index `i`, a subgroup given by
/// generators, together with a distinguished subgroup `h`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FilteredSystem {
    pub p: u64,
    pub exponent: u32,
    pub rank: usize,
    /// `groups[n][i]` lists generators, each of length `rank`
    pub groups: Vec<Vec<Vec<Vec<i64>>>>,
    pub h: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilteredWitness {
    pub filtration: usize,
    pub level: usize,
    pub generator: Vec<String>,
}

/// Outcome of the finite-level model check.
#[derive(Debug, Clone, Serialize)]
pub struct FilteredVerdict {
    pub ok: bool,
    pub inclusion_ok: bool,
    pub iterated_ok: bool,
    pub intersection_ok: bool,
    pub cocycle_ok: bool,
    pub inclusions_checked: usize,
    pub cocycles_checked: usize,
    pub witness: Option<FilteredWitness>,
}

struct Ambient {
    modulus: BigInt,
    rank: usize,
}

impl Ambient {
    fn generator_matrix(&self, gens: &[Vec<BigInt>]) -> IntMat {
        // columns: the generators, then the scaled ambient basis
        let mut m = IntMat::zeros(self.rank, gens.len() + self.rank);
        for (j, g) in gens.iter().enumerate() {
            for i in 0..self.rank {
                m.set(i, j, g[i].clone());
            }
        }
        for i in 0..self.rank {
            m.set(i, gens.len() + i, self.modulus.clone());
        }
        m
    }

    fn contains(&self, gens: &[Vec<BigInt>], x: &[BigInt]) -> bool {
        let m = self.generator_matrix(gens);
        let rhs = IntMat::from_rows(x.iter().map(|v| vec![v.clone()]).collect());
        solve(&m, &rhs).is_some()
    }

    fn subgroup_of(&self, inner: &[Vec<BigInt>], outer: &[Vec<BigInt>]) -> bool {
        inner.iter().all(|g| self.contains(outer, g))
    }

    /// Generators of the intersection of two subgroups.
    fn intersection(&self, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let ma = self.generator_matrix(a);
        let mb = self.generator_matrix(b);
        // solve ma * y = mb * z: kernel of [ma | -mb]
        let mut neg = mb.clone();
        for i in 0..neg.rows() {
            for j in 0..neg.cols() {
                let v = -neg.at(i, j);
                neg.set(i, j, v);
            }
        }
        let stacked = ma.hconcat(&neg);
        let ker = kernel_basis(&stacked);
        let mut gens = Vec::new();
        for c in 0..ker.cols() {
            let y: Vec<BigInt> = (0..ma.cols()).map(|i| ker.at(i, c).clone()).collect();
            let v = ma.mul_vec(&y);
            let reduced: Vec<BigInt> = v
                .iter()
                .map(|x| num_integer::Integer::mod_floor(x, &self.modulus))
                .collect();
            if reduced.iter().any(|x| !x.is_zero()) {
                gens.push(reduced);
            }
        }
        gens
    }
}

fn to_big(v: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    v.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Check the shift condition `G^(i)_{n+c} <= H + G^(i+1)_n` on every
/// representable pair, then the finite-level consequences: the iterated
/// inclusions, the tail intersection landing in `H` up to the reachable
/// filtration depth, and an explicit cobounding chain for a deterministic
/// family of cocycles.
pub fn check_filtered_condition(sys: &FilteredSystem, c: u32) -> Result<FilteredVerdict> {
    if c == 0 {
        return Err(Error::InvalidArgument("shift constant c must be >= 1".into()));
    }
    let levels = sys.groups.len();
    if levels == 0 {
        return Err(Error::MalformedSystem("no levels".into()));
    }
    let depth = sys.groups[0].len();
    if depth == 0 || sys.groups.iter().any(|g| g.len() != depth) {
        return Err(Error::MalformedSystem("ragged filtration depth".into()));
    }
    let amb = Ambient { modulus: BigInt::from(sys.p).pow(sys.exponent), rank: sys.rank };
    let g: Vec<Vec<Vec<Vec<BigInt>>>> = sys
        .groups
        .iter()
        .map(|level| level.iter().map(|gens| to_big(gens)).collect())
        .collect();
    let h = to_big(&sys.h);

    // well-formedness: towers decrease along n and along i, h sits inside
    // every level
    for n in 0..levels {
        for i in 0..depth {
            if n + 1 < levels && !amb.subgroup_of(&g[n + 1][i], &g[n][i]) {
                return Err(Error::MalformedSystem(format!(
                    "G({i})_{} is not contained in G({i})_{}",
                    n + 1,
                    n
                )));
            }
            if i + 1 < depth && !amb.subgroup_of(&g[n][i + 1], &g[n][i]) {
                return Err(Error::MalformedSystem(format!(
                    "G({})_{n} is not contained in G({i})_{n}",
                    i + 1
                )));
            }
        }
        if !amb.subgroup_of(&h, &g[n][0]) {
            return Err(Error::MalformedSystem(format!("H is not contained in G(0)_{n}")));
        }
    }

    let sum = |a: &[Vec<BigInt>], b: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        a.iter().chain(b.iter()).cloned().collect()
    };

    // main inclusion
    let mut witness = None;
    let mut inclusions_checked = 0usize;
    'outer: for i in 0..depth.saturating_sub(1) {
        for n in 0..levels.saturating_sub(c as usize) {
            inclusions_checked += 1;
            let target = sum(&h, &g[n][i + 1]);
            for gen in &g[n + c as usize][i] {
                if !amb.contains(&target, gen) {
                    witness = Some(FilteredWitness {
                        filtration: i,
                        level: n,
                        generator: gen.iter().map(BigInt::to_string).collect(),
                    });
                    break 'outer;
                }
            }
        }
    }
    let inclusion_ok = witness.is_none();

    // iterated inclusion G^(i)_{n+kc} <= H + G^(i+k)_n
    let mut iterated_ok = inclusion_ok;
    if inclusion_ok {
        'iter: for i in 0..depth {
            for k in 1..depth.saturating_sub(i) {
                for n in 0..levels.saturating_sub(k * c as usize) {
                    let target = sum(&h, &g[n][i + k]);
                    if !amb.subgroup_of(&g[n + k * c as usize][i], &target) {
                        iterated_ok = false;
                        break 'iter;
                    }
                }
            }
        }
    }

    // the tail of the tower meets H + the deepest reachable filtration
    let reach = ((levels - 1) / c as usize).min(depth - 1);
    let mut tail = g[0][0].clone();
    for level in g.iter().skip(1) {
        tail = amb.intersection(&tail, &level[0]);
    }
    let intersection_ok = amb.subgroup_of(&tail, &sum(&h, &g[0][reach]));

    // cocycle surrogate: for sampled cocycles (f_n), extract h_n in H with
    // f_n - h_n inside every reachable filtration window, which makes the
    // telescoping partial sums an explicit cobounding chain
    let mut cocycle_ok = true;
    let mut cocycles_checked = 0usize;
    if inclusion_ok {
        let mut samples: Vec<Vec<Vec<BigInt>>> = Vec::new();
        for n0 in 0..levels {
            for gen in &g[n0][0] {
                // supported at a single level
                let mut f = vec![vec![BigInt::zero(); sys.rank]; levels];
                f[n0] = gen.clone();
                samples.push(f.clone());
                // constant up to its defining level
                for fmid in f.iter_mut().take(n0) {
                    *fmid = gen.clone();
                }
                samples.push(f);
            }
        }
        'cocycles: for f in samples {
            cocycles_checked += 1;
            for (m_idx, fm) in f.iter().enumerate() {
                // f_m must split as h + (element of every window G^(k(n))_n)
                let mut window = g[m_idx][0].clone();
                for n in 0..=m_idx {
                    let k = (((m_idx - n) / c as usize)).min(depth - 1);
                    window = amb.intersection(&window, &g[n][k]);
                }
                if !amb.contains(&sum(&h, &window), fm) {
                    cocycle_ok = false;
                    break 'cocycles;
                }
            }
        }
    } else {
        cocycle_ok = false;
    }

    Ok(FilteredVerdict {
        ok: inclusion_ok && iterated_ok && intersection_ok && cocycle_ok,
        inclusion_ok,
        iterated_ok,
        intersection_ok,
        cocycle_ok,
        inclusions_checked,
        cocycles_checked,
        witness,
    })
}
