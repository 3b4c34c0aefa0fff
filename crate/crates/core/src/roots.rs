//! Demazure roots of an affine toric variety.
//!
//! For an extremal ray `ρ` of `σ` with primitive generator `v_ρ`,
//! `S_ρ = { m ∈ M : <m, v_ρ> = −1, <m, v_μ> >= 0 for every other ray μ }`.
//! These are the weights of the root subgroups normalized by the torus. The
//! sets are infinite, so the API offers membership, bounded enumeration and
//! a deterministic single-root search.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{Result, ToricError};
use crate::lattice::{quotient_structure, rank_of, IntMatrix, LatticePoint, QuotientStructure};
use crate::monoid::invariant_subalgebra;

/// A weight `e ∈ S_ρ` for the ray `ρ = rays()[ray_index]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DemazureRoot {
    pub ray_index: usize,
    pub weight: LatticePoint,
}

fn require_pointed(sigma: &Cone) -> Result<()> {
    if sigma.is_strongly_convex() {
        Ok(())
    } else {
        Err(ToricError::NotStronglyConvex)
    }
}

fn root_test(sigma: &Cone, ray: usize, m: &LatticePoint) -> bool {
    sigma.rays().iter().enumerate().all(|(i, v)| {
        let p = m.dot(v);
        if i == ray {
            p == -BigInt::one()
        } else {
            !p.is_negative()
        }
    })
}

/// `m ∈ S_ρ` for `ρ = rays()[ray]`.
pub fn is_root(sigma: &Cone, ray: usize, m: &LatticePoint) -> Result<bool> {
    require_pointed(sigma)?;
    sigma.ray(ray)?;
    m.check_rank(sigma.ambient_rank())?;
    Ok(root_test(sigma, ray, m))
}

impl DemazureRoot {
    /// Validates `weight ∈ S_ρ`.
    pub fn new(sigma: &Cone, ray_index: usize, weight: LatticePoint) -> Result<Self> {
        if !is_root(sigma, ray_index, &weight)? {
            return Err(ToricError::NotARoot { ray: ray_index, weight: weight.to_string() });
        }
        Ok(DemazureRoot { ray_index, weight })
    }
}

/// Calls `f` on every point of the slice `<m, v> = −1` with `‖m‖∞ <= bound`.
fn for_each_in_slice(v: &LatticePoint, bound: i64, mut f: impl FnMut(LatticePoint)) {
    let n = v.rank();
    // Solve for the last coordinate with nonzero entry in v.
    let k = (0..n).rev().find(|&i| !v.coords()[i].is_zero()).expect("nonzero ray");
    let vk = &v.coords()[k];
    let b = BigInt::from(bound);
    let free: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let mut counter = vec![-bound; free.len()];
    loop {
        let mut coords = vec![BigInt::zero(); n];
        let mut rest = -BigInt::one();
        for (slot, &i) in free.iter().enumerate() {
            coords[i] = BigInt::from(counter[slot]);
            rest -= &coords[i] * &v.coords()[i];
        }
        if (&rest % vk).is_zero() {
            let mk = rest / vk;
            if mk.abs() <= b {
                coords[k] = mk;
                f(LatticePoint::new(coords));
            }
        }
        let mut i = 0;
        loop {
            if i == counter.len() {
                return;
            }
            counter[i] += 1;
            if counter[i] <= bound {
                break;
            }
            counter[i] = -bound;
            i += 1;
        }
    }
}

/// All roots with `‖e‖∞ <= bound`, grouped by ray in ray order and
/// lexicographically sorted within each ray.
pub fn enumerate_roots(sigma: &Cone, bound: u32) -> Result<Vec<DemazureRoot>> {
    require_pointed(sigma)?;
    let mut out: Vec<DemazureRoot> = Vec::new();
    for (ray, v) in sigma.rays().iter().enumerate() {
        let mut found = Vec::new();
        for_each_in_slice(v, bound as i64, |m| {
            if root_test(sigma, ray, &m) {
                found.push(m);
            }
        });
        found.sort();
        out.extend(found.into_iter().map(|weight| DemazureRoot { ray_index: ray, weight }));
    }
    // The S_ρ are pairwise disjoint: a weight pairing to −1 with one ray
    // pairs nonnegatively with all others.
    let mut weights: Vec<&LatticePoint> = out.iter().map(|r| &r.weight).collect();
    weights.sort();
    assert!(weights.windows(2).all(|w| w[0] != w[1]), "root sets for distinct rays overlap");
    Ok(out)
}

/// The root of least `∞`-norm for the given ray, ties broken
/// lexicographically. `S_ρ` is never empty for an extremal ray of a
/// strongly convex cone, so the search terminates.
pub fn find_root(sigma: &Cone, ray: usize) -> Result<DemazureRoot> {
    require_pointed(sigma)?;
    if sigma.is_zero() {
        return Err(ToricError::IsTorus);
    }
    let v = sigma.ray(ray)?;
    let mut bound = 1i64;
    loop {
        let mut best: Option<LatticePoint> = None;
        for_each_in_slice(v, bound, |m| {
            if root_test(sigma, ray, &m) && best.as_ref().is_none_or(|b| m < *b) {
                best = Some(m);
            }
        });
        if let Some(weight) = best {
            return Ok(DemazureRoot { ray_index: ray, weight });
        }
        bound += 1;
    }
}

/// Whether `X_σ` is the torus, i.e. `σ = {0}`; equivalently, no roots exist.
pub fn is_torus(sigma: &Cone) -> bool {
    sigma.is_zero()
}

/// A family of `n` roots on the ray of `e0`: `e0, e0 + a_2, …, e0 + a_n`
/// with `a_j ∈ σ^∨ ∩ ρ^⊥ ∩ M` linearly independent. The weights are
/// linearly independent and the corresponding root subgroups commute.
pub fn commuting_root_family(sigma: &Cone, e0: &DemazureRoot) -> Result<Vec<DemazureRoot>> {
    require_pointed(sigma)?;
    if !sigma.is_full_dimensional() {
        return Err(ToricError::NotFullDimensional);
    }
    let n = sigma.ambient_rank();
    if !is_root(sigma, e0.ray_index, &e0.weight)? {
        return Err(ToricError::NotARoot { ray: e0.ray_index, weight: e0.weight.to_string() });
    }
    let invariants = invariant_subalgebra(sigma, e0.ray_index)?;
    let mut chosen: Vec<LatticePoint> = Vec::new();
    for a in invariants.hilbert_basis() {
        if chosen.len() + 1 == n {
            break;
        }
        chosen.push(a.clone());
        if rank_of(&chosen) < chosen.len() {
            chosen.pop();
        }
    }
    if chosen.len() + 1 != n {
        return Err(ToricError::Internal(format!(
            "invariant monoid has rank {} < {} inside the ray's orthogonal",
            chosen.len(),
            n - 1
        )));
    }
    let mut family = vec![e0.clone()];
    for a in &chosen {
        let weight = &e0.weight + a;
        debug_assert!(root_test(sigma, e0.ray_index, &weight));
        family.push(DemazureRoot { ray_index: e0.ray_index, weight });
    }
    Ok(family)
}

/// Determinant of the weight matrix of a family of `n` roots in rank `n`.
pub fn family_determinant(family: &[DemazureRoot], n: usize) -> Result<BigInt> {
    let weights: Vec<LatticePoint> = family.iter().map(|r| r.weight.clone()).collect();
    let m = IntMatrix::from_points(&weights, n)?;
    if !m.is_square() {
        return Err(ToricError::RankMismatch { expected: n, found: m.nrows() });
    }
    Ok(m.det())
}

/// Character group of `ker(e) ⊂ T`: `Z^n / Z e`. Torsion-free exactly
/// when `e` is primitive, i.e. when the kernel is connected.
pub fn root_kernel(e: &LatticePoint) -> Result<QuotientStructure> {
    if e.is_zero() {
        return Err(ToricError::ZeroVector);
    }
    quotient_structure(std::slice::from_ref(e), e.rank())
}
