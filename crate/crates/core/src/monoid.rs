//! Affine monoids `C ∩ M`: Hilbert bases, membership and the invariant
//! subalgebras `σ^∨ ∩ ρ^⊥ ∩ M`.
//!
//! Hilbert bases are computed from a pulling triangulation of the cone: every
//! irreducible element is either a ray generator or a lattice point of the
//! half-open fundamental parallelepiped of some simplicial piece, so the
//! candidate set is finite and is reduced by pairwise subtraction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cone::Cone;
use crate::error::{Result, ToricError};
use crate::lattice::{rank_of, saturation_basis, smith_normal_form, splitting_map, IntMatrix, LatticePoint};

/// The monoid `C ∩ M` of a rational cone `C`.
///
/// The unit group is `lin(C) ∩ M`, represented by `units`; the remaining
/// generators `hilbert_basis` are irreducible modulo units. For pointed
/// cones `units` is empty and `hilbert_basis` is the Hilbert basis proper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMonoid {
    cone: Cone,
    hilbert_basis: Vec<LatticePoint>,
    units: Vec<LatticePoint>,
}

impl AffineMonoid {
    /// `C ∩ M` for any rational cone; lineality is split off as units.
    pub fn of_cone(cone: &Cone) -> Self {
        let n = cone.ambient_rank();
        if cone.is_strongly_convex() {
            let hilbert_basis = hilbert_basis(cone).expect("pointed cone");
            return AffineMonoid { cone: cone.clone(), hilbert_basis, units: vec![] };
        }
        let units = cone.lineality().to_vec();
        let (b, l) = splitting_map(&units, n).expect("ranks checked");
        // Quotient coordinates are the last n - l coordinates of b.
        let quotient_rays: Vec<LatticePoint> =
            cone.rays().iter().map(|r| LatticePoint::new(b.apply(r).coords()[l..].to_vec())).collect();
        let quotient = Cone::from_generators(n - l, &quotient_rays).expect("ranks checked");
        let binv = b.inverse().expect("unimodular");
        let mut lifted: Vec<LatticePoint> = hilbert_basis(&quotient)
            .expect("quotient by lineality is pointed")
            .into_iter()
            .map(|h| {
                let mut c = vec![BigInt::zero(); l];
                c.extend(h.into_coords());
                binv.apply(&LatticePoint::new(c))
            })
            .collect();
        lifted.sort();
        AffineMonoid { cone: cone.clone(), hilbert_basis: lifted, units }
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn hilbert_basis(&self) -> &[LatticePoint] {
        &self.hilbert_basis
    }

    /// Basis of the group of units.
    pub fn units(&self) -> &[LatticePoint] {
        &self.units
    }

    /// Every element is invertible (the cone is a linear subspace), as for
    /// the character lattice of a torus.
    pub fn is_group(&self) -> bool {
        self.cone.rays().is_empty()
    }

    /// Monoid generators: the Hilbert basis and `±` the units.
    pub fn generators(&self) -> Vec<LatticePoint> {
        let mut g = self.hilbert_basis.clone();
        for u in &self.units {
            g.push(u.clone());
            g.push(-u);
        }
        g
    }

    pub fn contains(&self, m: &LatticePoint) -> bool {
        self.cone.contains(m)
    }

    /// [`monoid_membership`] against the stored basis; pointed monoids only.
    pub fn decompose(&self, m: &LatticePoint) -> Result<Option<Decomposition>> {
        if !self.units.is_empty() {
            return Err(ToricError::NotPointed);
        }
        m.check_rank(self.cone.ambient_rank())?;
        Ok(decompose(m, &self.cone, &self.hilbert_basis))
    }
}

/// Hilbert basis of `C ∩ Z^n` for a pointed cone `C`, lexicographically sorted.
pub fn hilbert_basis(cone: &Cone) -> Result<Vec<LatticePoint>> {
    if !cone.is_strongly_convex() {
        return Err(ToricError::NotPointed);
    }
    if cone.rays().is_empty() {
        return Ok(vec![]);
    }
    let n = cone.ambient_rank();
    let mut candidates: BTreeSet<LatticePoint> = cone.rays().iter().cloned().collect();
    for simplex in pulling_triangulation(cone) {
        let gens: Vec<LatticePoint> = simplex.iter().map(|&i| cone.rays()[i].clone()).collect();
        candidates.extend(parallelepiped_points(&gens, n).into_iter().filter(|p| !p.is_zero()));
    }
    let candidates: Vec<LatticePoint> = candidates.into_iter().collect();
    let basis = candidates
        .iter()
        .filter(|x| !candidates.iter().any(|y| y != *x && cone.contains(&(*x - y))))
        .cloned()
        .collect();
    Ok(basis)
}

/// A pulling triangulation of a pointed cone, as sets of ray indices.
pub fn pulling_triangulation(cone: &Cone) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..cone.rays().len()).collect();
    pull(cone, &all, cone.dim())
}

fn pull(cone: &Cone, face: &[usize], dim: usize) -> Vec<Vec<usize>> {
    if face.len() == dim {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    // Facets of a face are its intersections with facets of the cone that
    // drop the dimension by exactly one.
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for u in cone.facet_normals() {
        let tight: Vec<usize> = face.iter().copied().filter(|&i| u.dot(&cone.rays()[i]).is_zero()).collect();
        if tight.len() == face.len() || tight.contains(&apex) {
            continue;
        }
        let pts: Vec<LatticePoint> = tight.iter().map(|&i| cone.rays()[i].clone()).collect();
        if rank_of(&pts) + 1 == dim {
            facets.insert(tight);
        }
    }
    let mut out = Vec::new();
    for f in facets {
        for mut s in pull(cone, &f, dim - 1) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// Lattice points `Σ λ_i w_i` with `0 <= λ_i < 1`, for linearly independent
/// generators `w_i`. There are exactly `index(Z w ⊂ span ∩ Z^n)` of them.
pub fn parallelepiped_points(gens: &[LatticePoint], n: usize) -> Vec<LatticePoint> {
    let w = IntMatrix::from_points(gens, n).expect("ranks checked");
    // W = U D V; λ W is integral iff μ = λ U has μ_i d_i ∈ Z.
    let snf = smith_normal_form(&w);
    let diag = snf.diagonal();
    assert_eq!(diag.len(), gens.len(), "generators must be linearly independent");
    let uinv = snf.u.inverse().expect("unimodular");
    let d = gens.len();
    let mut out = Vec::new();
    let mut counter = vec![BigInt::zero(); d];
    loop {
        let mu: Vec<BigRational> =
            (0..d).map(|i| BigRational::new(counter[i].clone(), diag[i].clone())).collect();
        let mut point = vec![BigRational::zero(); n];
        for j in 0..d {
            let mut lambda: BigRational = (0..d)
                .map(|i| &mu[i] * BigRational::from_integer(uinv.matrix().get(i, j).clone()))
                .sum();
            lambda = &lambda - lambda.floor();
            for (k, c) in gens[j].coords().iter().enumerate() {
                point[k] += &lambda * c;
            }
        }
        out.push(LatticePoint::new(point.into_iter().map(|x| x.to_integer()).collect()));

        // Odometer over Π [0, d_i).
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            counter[i] += 1;
            if counter[i] < diag[i] {
                break;
            }
            counter[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// A decomposition of a monoid element over the Hilbert basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// `(basis element, multiplicity)` pairs with positive multiplicity.
    pub terms: Vec<(LatticePoint, BigInt)>,
}

impl Decomposition {
    pub fn sum(&self, n: usize) -> LatticePoint {
        self.terms.iter().fold(LatticePoint::zero(n), |acc, (h, k)| &acc + &h.scale(k))
    }
}

/// Decomposes `m` over the Hilbert basis of the pointed cone `C`, or returns
/// `None` if `m ∉ C ∩ M`. Greedy in lexicographic basis order, taking as
/// many copies of each element as possible and backing off only if that
/// strands a remainder; decompositions are not unique.
pub fn monoid_membership(m: &LatticePoint, cone: &Cone) -> Result<Option<Decomposition>> {
    m.check_rank(cone.ambient_rank())?;
    let basis = hilbert_basis(cone)?;
    Ok(decompose(m, cone, &basis))
}

pub(crate) fn decompose(m: &LatticePoint, cone: &Cone, basis: &[LatticePoint]) -> Option<Decomposition> {
    if !cone.contains(m) {
        return None;
    }
    let mut terms = Vec::new();
    // The first branch explored is the plain greedy pass; backtracking only
    // kicks in when greedy strands a remainder.
    let found = descend(m.clone(), cone, basis, &mut terms);
    assert!(found, "lattice point of the cone not generated by its Hilbert basis");
    Some(Decomposition { terms })
}

fn descend(rest: LatticePoint, cone: &Cone, basis: &[LatticePoint], terms: &mut Vec<(LatticePoint, BigInt)>) -> bool {
    if rest.is_zero() {
        return true;
    }
    let Some((h, tail)) = basis.split_first() else { return false };
    // Largest k with rest - k h still in the cone.
    let mut k: Option<BigInt> = None;
    for u in cone.facet_normals() {
        let uh = u.dot(h);
        if uh.is_positive() {
            let bound = u.dot(&rest).div_floor(&uh);
            k = Some(match k {
                Some(k) if k <= bound => k,
                _ => bound,
            });
        }
    }
    let mut k = k.expect("nonzero element of a pointed cone");
    while !k.is_negative() {
        if k.is_zero() {
            return descend(rest, cone, tail, terms);
        }
        terms.push((h.clone(), k.clone()));
        if descend(&rest - &h.scale(&k), cone, tail, terms) {
            return true;
        }
        terms.pop();
        k -= 1;
    }
    false
}

/// The weight monoid `σ^∨ ∩ M` of the affine toric variety of `σ`. For the
/// torus (`σ = {0}`) this is the whole lattice, flagged as a group.
pub fn weight_monoid(sigma: &Cone) -> Result<AffineMonoid> {
    if !sigma.is_strongly_convex() {
        return Err(ToricError::NotStronglyConvex);
    }
    Ok(AffineMonoid::of_cone(&sigma.dual()))
}

/// `σ^∨ ∩ ρ^⊥ ∩ M` for the extremal ray `ρ = rays()[ray]`: the exponents of
/// the invariant ring of the root subgroups attached to `ρ`.
pub fn invariant_subalgebra(sigma: &Cone, ray: usize) -> Result<AffineMonoid> {
    if !sigma.is_strongly_convex() {
        return Err(ToricError::NotStronglyConvex);
    }
    let v = sigma.ray(ray)?;
    let face = sigma.dual().face_orthogonal_to(v)?;
    Ok(AffineMonoid::of_cone(&face))
}

/// Whether two families generate the same subgroup of `Z^n`.
pub fn same_subgroup(a: &[LatticePoint], b: &[LatticePoint], n: usize) -> Result<bool> {
    Ok(crate::lattice::subgroup_basis(a, n)? == crate::lattice::subgroup_basis(b, n)?)
}

/// `ρ^⊥ ∩ M` as a Hermite basis.
pub fn orthogonal_lattice(v: &LatticePoint) -> Vec<LatticePoint> {
    crate::lattice::integer_kernel(std::slice::from_ref(v), v.rank()).expect("ranks checked")
}

/// Group generated by a monoid (Hilbert basis together with units).
pub fn generated_group(monoid: &AffineMonoid) -> Vec<LatticePoint> {
    let n = monoid.cone().ambient_rank();
    crate::lattice::subgroup_basis(&monoid.generators(), n).expect("ranks checked")
}

/// Saturated lattice of the span of the monoid.
pub fn span_lattice(monoid: &AffineMonoid) -> Vec<LatticePoint> {
    let n = monoid.cone().ambient_rank();
    saturation_basis(&monoid.generators(), n).expect("ranks checked")
}
