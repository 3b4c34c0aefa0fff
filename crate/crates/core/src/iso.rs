//! Isomorphism of affine toric varieties as lattice equivalence of cones.
//!
//! Two cones are equivalent when some `g ∈ GL_n(Z)` maps one onto the other.
//! Each cone is first split as (saturated span) ⊕ (complement); the torus
//! ranks must agree and the full-dimensional parts are compared by matching
//! a basis of rays against every ordered choice of rays of the target.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::error::{Result, ToricError};
use crate::lattice::{rank_of, splitting_map, IntMatrix, LatticeMap, LatticePoint};
use crate::monoid::weight_monoid;

/// Why two cones are not equivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    AmbientRank { left: usize, right: usize },
    Dimension { left: usize, right: usize },
    RayCount { left: usize, right: usize },
    Multiplicity,
    Fingerprint,
    Exhausted,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::AmbientRank { left, right } => write!(f, "ambient ranks differ ({left} vs {right})"),
            Refutation::Dimension { left, right } => write!(f, "span dimensions differ ({left} vs {right})"),
            Refutation::RayCount { left, right } => write!(f, "extremal ray counts differ ({left} vs {right})"),
            Refutation::Multiplicity => write!(f, "multiplicities differ"),
            Refutation::Fingerprint => write!(f, "invariant fingerprints differ"),
            Refutation::Exhausted => write!(f, "no lattice map sends one ray set onto the other"),
        }
    }
}

/// Outcome of [`cones_equivalent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoWitness {
    /// A unimodular `g` with `g(σ1) = σ2`.
    Equivalent(LatticeMap),
    NotEquivalent(Refutation),
}

impl IsoWitness {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, IsoWitness::Equivalent(_))
    }

    pub fn map(&self) -> Option<&LatticeMap> {
        match self {
            IsoWitness::Equivalent(g) => Some(g),
            IsoWitness::NotEquivalent(_) => None,
        }
    }
}

/// Invariants preserved by `GL_n(Z)`; equal fingerprints are necessary for
/// equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeFingerprint {
    pub ambient_rank: usize,
    pub dim: usize,
    pub ray_count: usize,
    pub multiplicity: BigInt,
    /// Sorted multiplicities of the facets.
    pub facet_multiplicities: Vec<BigInt>,
    /// Hilbert basis size of `σ^∨ ∩ M` modulo units; `None` for the torus.
    pub dual_hilbert_size: Option<usize>,
}

pub fn cone_fingerprint(sigma: &Cone) -> Result<ConeFingerprint> {
    if !sigma.is_strongly_convex() {
        return Err(ToricError::NotStronglyConvex);
    }
    let mut facet_multiplicities: Vec<BigInt> = sigma
        .facet_ray_sets()
        .into_iter()
        .map(|set| {
            let rays: Vec<LatticePoint> = set.iter().map(|&i| sigma.rays()[i].clone()).collect();
            Cone::from_generators(sigma.ambient_rank(), &rays).map(|c| c.multiplicity())
        })
        .collect::<Result<_>>()?;
    facet_multiplicities.sort();
    let monoid = weight_monoid(sigma)?;
    Ok(ConeFingerprint {
        ambient_rank: sigma.ambient_rank(),
        dim: sigma.dim(),
        ray_count: sigma.rays().len(),
        multiplicity: sigma.multiplicity(),
        facet_multiplicities,
        dual_hilbert_size: if monoid.is_group() { None } else { Some(monoid.hilbert_basis().len()) },
    })
}

/// `σ` moved into `Z^d × 0` by a unimodular change of coordinates.
struct SplitCone {
    basis_change: LatticeMap,
    dim: usize,
    rays: Vec<LatticePoint>,
}

fn split(sigma: &Cone) -> Result<SplitCone> {
    let n = sigma.ambient_rank();
    let (b, d) = splitting_map(sigma.rays(), n)?;
    let rays = sigma
        .rays()
        .iter()
        .map(|r| {
            let img = b.apply(r);
            debug_assert!(img.coords()[d..].iter().all(Zero::is_zero));
            LatticePoint::new(img.coords()[..d].to_vec())
        })
        .collect();
    Ok(SplitCone { basis_change: b, dim: d, rays })
}

/// Decides whether some `g ∈ GL_n(Z)` maps `σ1` onto `σ2`.
pub fn cones_equivalent(sigma1: &Cone, sigma2: &Cone) -> Result<IsoWitness> {
    use IsoWitness::NotEquivalent;
    if !sigma1.is_strongly_convex() || !sigma2.is_strongly_convex() {
        return Err(ToricError::NotStronglyConvex);
    }
    let n = sigma1.ambient_rank();
    if n != sigma2.ambient_rank() {
        return Ok(NotEquivalent(Refutation::AmbientRank { left: n, right: sigma2.ambient_rank() }));
    }
    if sigma1.dim() != sigma2.dim() {
        return Ok(NotEquivalent(Refutation::Dimension { left: sigma1.dim(), right: sigma2.dim() }));
    }
    if sigma1.rays().len() != sigma2.rays().len() {
        return Ok(NotEquivalent(Refutation::RayCount { left: sigma1.rays().len(), right: sigma2.rays().len() }));
    }
    if sigma1.multiplicity() != sigma2.multiplicity() {
        return Ok(NotEquivalent(Refutation::Multiplicity));
    }
    if cone_fingerprint(sigma1)? != cone_fingerprint(sigma2)? {
        return Ok(NotEquivalent(Refutation::Fingerprint));
    }

    let s1 = split(sigma1)?;
    let s2 = split(sigma2)?;
    let d = s1.dim;
    let Some(inner) = match_split_rays(&s1.rays, &s2.rays, d) else {
        return Ok(NotEquivalent(Refutation::Exhausted));
    };
    // g = B2^{-1} · (g' ⊕ I) · B1
    let mut block = IntMatrix::identity(n);
    let mut rows: Vec<Vec<BigInt>> = block.rows().to_vec();
    for (i, row) in rows.iter_mut().enumerate().take(d) {
        for (j, x) in row.iter_mut().enumerate().take(d) {
            *x = inner.get(i, j).clone();
        }
    }
    block = IntMatrix::from_rows(rows, n)?;
    let b2inv = s2.basis_change.inverse().expect("unimodular");
    let g = b2inv.compose(&LatticeMap::unimodular(block)?).compose(&s1.basis_change);
    if !verify_witness(&g, sigma1, sigma2)? {
        return Err(ToricError::Internal("constructed witness does not map the cones onto each other".into()));
    }
    Ok(IsoWitness::Equivalent(g))
}

/// `g' ∈ GL_d(Z)` mapping the ray set `r1` onto `r2`, if any. The first
/// success in lexicographic order of target tuples is returned.
fn match_split_rays(r1: &[LatticePoint], r2: &[LatticePoint], d: usize) -> Option<IntMatrix> {
    if d == 0 {
        return Some(IntMatrix::identity(0));
    }
    // A basis of Q^d among the source rays, chosen greedily.
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..r1.len() {
        basis.push(i);
        let pts: Vec<LatticePoint> = basis.iter().map(|&k| r1[k].clone()).collect();
        if rank_of(&pts) < basis.len() {
            basis.pop();
        }
        if basis.len() == d {
            break;
        }
    }
    let source = IntMatrix::from_columns(&basis.iter().map(|&k| r1[k].clone()).collect::<Vec<_>>(), d).ok()?;
    let source_inv = source.rational_inverse()?;
    let mut target_set = r2.to_vec();
    target_set.sort();

    let mut choice: Vec<usize> = Vec::with_capacity(d);
    let mut used = vec![false; r2.len()];
    search(&mut choice, &mut used, r1, r2, &target_set, &source_inv, d)
}

fn search(
    choice: &mut Vec<usize>,
    used: &mut [bool],
    r1: &[LatticePoint],
    r2: &[LatticePoint],
    target_set: &[LatticePoint],
    source_inv: &[Vec<num_rational::BigRational>],
    d: usize,
) -> Option<IntMatrix> {
    if choice.len() == d {
        let target: Vec<LatticePoint> = choice.iter().map(|&k| r2[k].clone()).collect();
        let t = IntMatrix::from_columns(&target, d).ok()?;
        // g' = T · S^{-1}, required integral and unimodular.
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                let x: num_rational::BigRational = (0..d)
                    .map(|k| num_rational::BigRational::from_integer(t.get(i, k).clone()) * &source_inv[k][j])
                    .sum();
                if !x.is_integer() {
                    return None;
                }
                row.push(x.to_integer());
            }
            rows.push(row);
        }
        let g = IntMatrix::from_rows(rows, d).ok()?;
        if !g.det().abs().is_one() {
            return None;
        }
        let mut image: Vec<LatticePoint> = r1.iter().map(|r| g.apply(r)).collect();
        image.sort();
        return (image == target_set).then_some(g);
    }
    for k in 0..r2.len() {
        if used[k] {
            continue;
        }
        used[k] = true;
        choice.push(k);
        let found = search(choice, used, r1, r2, target_set, source_inv, d);
        choice.pop();
        used[k] = false;
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Whether `g` is unimodular and `g(σ1) = σ2`, checked on ray sets and,
/// for full-dimensional cones, on facet normals (which move by `g^{-T}`).
pub fn verify_witness(g: &LatticeMap, sigma1: &Cone, sigma2: &Cone) -> Result<bool> {
    if !g.is_unimodular() || g.rank() != sigma1.ambient_rank() || g.rank() != sigma2.ambient_rank() {
        return Ok(false);
    }
    let mut rays: Vec<LatticePoint> = sigma1.rays().iter().map(|r| g.apply(r)).collect();
    rays.sort();
    if rays != sigma2.rays() {
        return Ok(false);
    }
    if sigma1.is_full_dimensional() {
        let dual = g.dual().expect("unimodular");
        let mut normals: Vec<LatticePoint> = sigma1.facet_normals().iter().map(|u| dual.apply(u)).collect();
        normals.sort();
        let mut expected = sigma2.facet_normals().to_vec();
        expected.sort();
        if normals != expected {
            return Ok(false);
        }
    }
    Ok(&Cone::from_generators(sigma1.ambient_rank(), &rays)? == sigma2)
}

/// `σ1^∨ ∩ M = σ2^∨ ∩ M`, by mutual inclusion of dual generators. By
/// biduality this holds exactly when `σ1 = σ2`.
pub fn weight_monoids_equal(sigma1: &Cone, sigma2: &Cone) -> Result<bool> {
    if sigma1.ambient_rank() != sigma2.ambient_rank() {
        return Err(ToricError::RankMismatch { expected: sigma1.ambient_rank(), found: sigma2.ambient_rank() });
    }
    let d1 = sigma1.dual();
    let d2 = sigma2.dual();
    Ok(d1.generators().iter().all(|m| d2.contains(m)) && d2.generators().iter().all(|m| d1.contains(m)))
}
