//! Rational polyhedral cones and their duals.
//!
//! A [`Cone`] stores both descriptions: extremal rays (plus a lineality
//! basis) and facet normals (plus span equations). Both are computed with an
//! integer double description method, so the dual cone is obtained by
//! swapping the two descriptions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};
use crate::lattice::{project_off, rank_of, saturation_basis, smith_normal_form, IntMatrix, LatticePoint};

/// A rational polyhedral cone in `Q^n`.
///
/// Rays are primitive and lexicographically sorted; when the cone has a
/// lineality space, rays are taken orthogonal to it. Facet normals satisfy
/// `<u, x> >= 0` on the cone and equations `<w, x> = 0` cut out its span.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<LatticePoint>,
    lineality: Vec<LatticePoint>,
    facet_normals: Vec<LatticePoint>,
    equations: Vec<LatticePoint>,
}

impl Cone {
    /// The cone generated by `generators`. Generators need not be primitive
    /// or extremal; zero and repeated vectors are ignored.
    pub fn from_generators(ambient_rank: usize, generators: &[LatticePoint]) -> Result<Self> {
        for g in generators {
            g.check_rank(ambient_rank)?;
        }
        let (dual_lin, dual_rays) = double_description(ambient_rank, generators);
        let mut inequalities = dual_rays.clone();
        for l in &dual_lin {
            inequalities.push(l.clone());
            inequalities.push(-l);
        }
        let (lin, rays) = double_description(ambient_rank, &inequalities);
        let (lineality, rays) = canonical(ambient_rank, lin, rays);
        let (equations, facet_normals) = canonical(ambient_rank, dual_lin, dual_rays);
        Ok(Cone { ambient_rank, rays, lineality, facet_normals, equations })
    }

    pub fn from_i64_rays(ambient_rank: usize, rays: &[&[i64]]) -> Result<Self> {
        let gens: Vec<LatticePoint> = rays.iter().map(|r| LatticePoint::from_i64s(r)).collect();
        Self::from_generators(ambient_rank, &gens)
    }

    /// The zero cone `{0}`.
    pub fn zero(ambient_rank: usize) -> Self {
        Self::from_generators(ambient_rank, &[]).expect("empty generator list")
    }

    /// The positive orthant, i.e. the cone of affine space `A^n`.
    pub fn orthant(ambient_rank: usize) -> Self {
        let gens: Vec<LatticePoint> = (0..ambient_rank).map(|i| LatticePoint::unit(ambient_rank, i)).collect();
        Self::from_generators(ambient_rank, &gens).expect("unit vectors")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Primitive generators of the extremal rays, lexicographically sorted.
    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    /// Alias of [`Cone::rays`].
    pub fn extremal_rays(&self) -> Vec<LatticePoint> {
        self.rays.clone()
    }

    /// Hermite basis of the lattice points of the lineality space.
    pub fn lineality(&self) -> &[LatticePoint] {
        &self.lineality
    }

    pub fn facet_normals(&self) -> &[LatticePoint] {
        &self.facet_normals
    }

    pub fn equations(&self) -> &[LatticePoint] {
        &self.equations
    }

    /// Rays followed by `±` each lineality basis vector.
    pub fn generators(&self) -> Vec<LatticePoint> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(-l);
        }
        g
    }

    pub fn ray(&self, index: usize) -> Result<&LatticePoint> {
        self.rays.get(index).ok_or(ToricError::RayIndexOutOfRange { index, count: self.rays.len() })
    }

    pub fn ray_index(&self, v: &LatticePoint) -> Option<usize> {
        self.rays.binary_search(v).ok()
    }

    /// `σ^∨ = {u : <u, v> >= 0 for all v in σ}`.
    pub fn dual(&self) -> Cone {
        Cone {
            ambient_rank: self.ambient_rank,
            rays: self.facet_normals.clone(),
            lineality: self.equations.clone(),
            facet_normals: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.rank() == self.ambient_rank
            && self.equations.iter().all(|w| w.dot(p).is_zero())
            && self.facet_normals.iter().all(|u| !u.dot(p).is_negative())
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.ambient_rank - self.equations.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// `σ ∩ (−σ) = {0}`.
    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// Whether the rays extend to a basis of `span(σ) ∩ Z^n`. Only strongly
    /// convex cones can be smooth.
    pub fn is_smooth(&self) -> bool {
        self.is_strongly_convex() && self.rays.len() == self.dim() && self.multiplicity().is_one()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_strongly_convex() && self.rays.len() == self.dim()
    }

    /// Index of the group generated by the rays inside `span(σ) ∩ Z^n`.
    pub fn multiplicity(&self) -> BigInt {
        if self.rays.is_empty() {
            return BigInt::from(1);
        }
        let m = IntMatrix::from_points(&self.rays, self.ambient_rank).expect("ranks checked");
        smith_normal_form(&m).diagonal().iter().product()
    }

    /// `σ_ρ`: the cone spanned by every extremal ray except `rays()[index]`.
    pub fn face_complement(&self, index: usize) -> Result<Cone> {
        self.ray(index)?;
        let others: Vec<LatticePoint> =
            self.rays.iter().enumerate().filter(|&(i, _)| i != index).map(|(_, r)| r.clone()).collect();
        Cone::from_generators(self.ambient_rank, &others)
    }

    /// Facets as sorted lists of ray indices, one per facet normal.
    pub fn facet_ray_sets(&self) -> Vec<Vec<usize>> {
        self.facet_normals
            .iter()
            .map(|u| (0..self.rays.len()).filter(|&i| u.dot(&self.rays[i]).is_zero()).collect())
            .collect()
    }

    /// `σ ∩ u^⊥` for `u` in the dual cone, as a cone.
    pub fn face_orthogonal_to(&self, u: &LatticePoint) -> Result<Cone> {
        u.check_rank(self.ambient_rank)?;
        let mut gens: Vec<LatticePoint> = self.rays.iter().filter(|r| u.dot(r).is_zero()).cloned().collect();
        for l in &self.lineality {
            if u.dot(l).is_zero() {
                gens.push(l.clone());
                gens.push(-l);
            }
        }
        Cone::from_generators(self.ambient_rank, &gens)
    }

    /// `Z`-basis of `span(σ) ∩ Z^n`.
    pub fn span_lattice(&self) -> Vec<LatticePoint> {
        saturation_basis(&self.generators(), self.ambient_rank).expect("ranks checked")
    }
}

/// Rays and lineality of `{x ∈ Q^n : <a, x> >= 0 for all a in constraints}`,
/// computed with the double description method in integer arithmetic.
pub fn double_description(n: usize, constraints: &[LatticePoint]) -> (Vec<LatticePoint>, Vec<LatticePoint>) {
    let mut lineality: Vec<LatticePoint> = (0..n).map(|i| LatticePoint::unit(n, i)).collect();
    let mut rays: Vec<LatticePoint> = Vec::new();
    let mut processed: Vec<LatticePoint> = Vec::new();

    for a in constraints {
        if a.is_zero() {
            continue;
        }
        let a = a.primitive_part().expect("nonzero");
        if processed.contains(&a) {
            continue;
        }

        if let Some(idx) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            // The constraint cuts the lineality space: one direction of
            // `l0` becomes a ray, everything else is moved into `a^⊥`.
            let mut l0 = lineality.remove(idx);
            if a.dot(&l0).is_negative() {
                l0 = -&l0;
            }
            let s0 = a.dot(&l0);
            let shear = |v: &LatticePoint| -> Option<LatticePoint> {
                let w = &v.scale(&s0) - &l0.scale(&a.dot(v));
                w.primitive_part().ok()
            };
            lineality = lineality.iter().filter_map(shear).collect();
            rays = rays.iter().filter_map(shear).collect();
            rays.push(l0.primitive_part().expect("nonzero"));
        } else {
            let values: Vec<BigInt> = rays.iter().map(|r| a.dot(r)).collect();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
            let mut next: Vec<LatticePoint> =
                (0..rays.len()).filter(|&i| !values[i].is_negative()).map(|i| rays[i].clone()).collect();
            if let (false, Some(target)) = (pos.is_empty() || neg.is_empty(), n.checked_sub(lineality.len() + 2)) {
                let tight: Vec<Vec<bool>> =
                    rays.iter().map(|r| processed.iter().map(|c| c.dot(r).is_zero()).collect()).collect();
                for &p in &pos {
                    for &q in &neg {
                        let common: Vec<LatticePoint> = processed
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| tight[p][k] && tight[q][k])
                            .map(|(_, c)| c.clone())
                            .collect();
                        if common.len() < target || rank_of(&common) != target {
                            continue;
                        }
                        let w = &rays[q].scale(&values[p]) - &rays[p].scale(&values[q]);
                        if let Ok(w) = w.primitive_part() {
                            next.push(w);
                        }
                    }
                }
            }
            next.sort();
            next.dedup();
            rays = next;
        }
        processed.push(a);
    }
    (lineality, rays)
}

/// Canonical form: saturated Hermite lineality basis and primitive rays
/// projected orthogonally off the lineality space, sorted and deduplicated.
fn canonical(n: usize, lineality: Vec<LatticePoint>, rays: Vec<LatticePoint>) -> (Vec<LatticePoint>, Vec<LatticePoint>) {
    let lin = saturation_basis(&lineality, n).expect("ranks checked");
    let rays: BTreeSet<LatticePoint> = rays.iter().filter_map(|r| project_off(r, &lin)).collect();
    (lin, rays.into_iter().collect())
}
