//! Root subgroups as exponentials of homogeneous locally nilpotent
//! derivations, and their replicas `f·u`.
//!
//! A root `e ∈ S_ρ` gives the derivation `∂(χ^m) = <m, v_ρ> χ^{m+e}` of
//! `k[σ^∨ ∩ M]`, whose kernel is spanned by the monomials of
//! `σ^∨ ∩ ρ^⊥ ∩ M`. For an invariant `f`, `f∂` is again locally nilpotent
//! and `exp(f∂)` is the replica `f·u` of the root subgroup `u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::cone::Cone;
use crate::error::{Result, ToricError};
use crate::lattice::LatticePoint;
use crate::lattice::{quotient_structure, QuotientStructure};
use crate::monoid::{invariant_subalgebra, weight_monoid};
use crate::roots::{is_root, root_kernel, DemazureRoot};

/// A Laurent polynomial `Σ c_m χ^m` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonomialFunction {
    terms: BTreeMap<LatticePoint, BigRational>,
}

impl MonomialFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · χ^m`.
    pub fn monomial(m: LatticePoint, c: BigRational) -> Self {
        let mut f = Self::zero();
        f.add_term(m, c);
        f
    }

    pub fn character(m: LatticePoint) -> Self {
        Self::monomial(m, BigRational::one())
    }

    /// The constant `c` on a rank-`n` torus.
    pub fn constant(n: usize, c: BigRational) -> Self {
        Self::monomial(LatticePoint::zero(n), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (LatticePoint, BigRational)>) -> Self {
        let mut f = Self::zero();
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn add_term(&mut self, m: LatticePoint, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &BigRational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &LatticePoint) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn pow(&self, k: u32, n: usize) -> Self {
        (0..k).fold(Self::constant(n, BigRational::one()), |acc, _| &acc * self)
    }

    /// Fails unless every exponent lies in `cone`.
    pub fn check_support(&self, cone: &Cone) -> Result<()> {
        for m in self.support() {
            if !cone.contains(m) {
                return Err(ToricError::SupportOutsideCone(m.to_string()));
            }
        }
        Ok(())
    }
}

impl Add for &MonomialFunction {
    type Output = MonomialFunction;
    fn add(self, rhs: &MonomialFunction) -> MonomialFunction {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MonomialFunction {
    type Output = MonomialFunction;
    fn neg(self) -> MonomialFunction {
        MonomialFunction { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &MonomialFunction {
    type Output = MonomialFunction;
    fn sub(self, rhs: &MonomialFunction) -> MonomialFunction {
        self + &-rhs
    }
}

impl Mul for &MonomialFunction {
    type Output = MonomialFunction;
    fn mul(self, rhs: &MonomialFunction) -> MonomialFunction {
        let mut out = MonomialFunction::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for MonomialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x^{m}")?;
        }
        Ok(())
    }
}

fn rational(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// `∂g` for the homogeneous derivation of the root. Every exponent of `g`
/// must lie in `σ^∨`; the output does as well.
pub fn lnd_apply(sigma: &Cone, root: &DemazureRoot, g: &MonomialFunction) -> Result<MonomialFunction> {
    let dual = sigma.dual();
    g.check_support(&dual)?;
    let v = sigma.ray(root.ray_index)?;
    let out = derive(v, &root.weight, g);
    for m in out.support() {
        if !dual.contains(m) {
            return Err(ToricError::SupportOutsideCone(m.to_string()));
        }
    }
    Ok(out)
}

fn derive(v: &LatticePoint, e: &LatticePoint, g: &MonomialFunction) -> MonomialFunction {
    let mut out = MonomialFunction::zero();
    for (m, c) in g.terms() {
        let k = m.dot(v);
        if !k.is_zero() {
            out.add_term(m + e, c * rational(k));
        }
    }
    out
}

/// The automorphism `exp(f∂)` of `k[σ^∨ ∩ M]` for a root `e ∈ S_ρ` and an
/// invariant `f ∈ k[σ^∨ ∩ ρ^⊥ ∩ M]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplicaAutomorphism {
    cone: Cone,
    root: DemazureRoot,
    f: MonomialFunction,
}

impl ReplicaAutomorphism {
    pub fn new(sigma: &Cone, root: DemazureRoot, f: MonomialFunction) -> Result<Self> {
        if !is_root(sigma, root.ray_index, &root.weight)? {
            return Err(ToricError::NotARoot { ray: root.ray_index, weight: root.weight.to_string() });
        }
        let v = sigma.ray(root.ray_index)?;
        f.check_support(&sigma.dual())?;
        for m in f.support() {
            m.check_rank(sigma.ambient_rank())?;
            if !m.dot(v).is_zero() {
                return Err(ToricError::NotInvariant(m.to_string()));
            }
        }
        Ok(ReplicaAutomorphism { cone: sigma.clone(), root, f })
    }

    /// The root subgroup element `exp(c∂)` itself.
    pub fn root_subgroup(sigma: &Cone, root: DemazureRoot, c: BigRational) -> Result<Self> {
        let n = sigma.ambient_rank();
        Self::new(sigma, root, MonomialFunction::constant(n, c))
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn root(&self) -> &DemazureRoot {
        &self.root
    }

    pub fn f(&self) -> &MonomialFunction {
        &self.f
    }

    fn ray(&self) -> &LatticePoint {
        &self.cone.rays()[self.root.ray_index]
    }

    /// `exp(−f∂)`.
    pub fn inverse(&self) -> Self {
        ReplicaAutomorphism { cone: self.cone.clone(), root: self.root.clone(), f: -&self.f }
    }

    /// `Σ_k f^k ∂^k(g) / k!`, a finite sum by local nilpotency.
    pub fn apply(&self, g: &MonomialFunction) -> Result<MonomialFunction> {
        g.check_support(&self.cone.dual())?;
        Ok(self.apply_unchecked(g))
    }

    fn apply_unchecked(&self, g: &MonomialFunction) -> MonomialFunction {
        let v = self.ray();
        let mut result = g.clone();
        let mut term = g.clone();
        let mut k = BigInt::zero();
        loop {
            k += 1;
            // f is ∂-invariant, so (f∂)^k = f^k ∂^k.
            let next = &self.f * &derive(v, &self.root.weight, &term);
            if next.is_zero() {
                return result;
            }
            term = next.scale(&BigRational::new(BigInt::one(), k.clone()));
            result = &result + &term;
        }
    }
}

/// `(r1 ∘ r2)(g) = r1(r2(g))` on functions.
pub fn compose_apply(
    r1: &ReplicaAutomorphism,
    r2: &ReplicaAutomorphism,
    g: &MonomialFunction,
) -> Result<MonomialFunction> {
    if r1.cone != r2.cone {
        return Err(ToricError::ConeMismatch);
    }
    r1.apply(&r2.apply(g)?)
}

/// Monomials of the generators of `k[σ^∨ ∩ M]` (Hilbert basis and units
/// with their inverses). Algebra endomorphisms agree iff they agree here.
pub fn coordinate_generators(sigma: &Cone) -> Result<Vec<LatticePoint>> {
    Ok(weight_monoid(sigma)?.generators())
}

/// Whether `r1 ∘ r2 = r2 ∘ r1`, decided on the generators of `k[X]`.
pub fn replica_commutes(r1: &ReplicaAutomorphism, r2: &ReplicaAutomorphism) -> Result<bool> {
    if r1.cone != r2.cone {
        return Err(ToricError::ConeMismatch);
    }
    for h in coordinate_generators(&r1.cone)? {
        let g = MonomialFunction::character(h);
        if compose_apply(r1, r2, &g)? != compose_apply(r2, r1, &g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether two automorphisms given as closures agree on the generators.
pub fn agree_on_generators(
    sigma: &Cone,
    a: impl Fn(&MonomialFunction) -> Result<MonomialFunction>,
    b: impl Fn(&MonomialFunction) -> Result<MonomialFunction>,
) -> Result<bool> {
    for h in coordinate_generators(sigma)? {
        let g = MonomialFunction::character(h);
        if a(&g)? != b(&g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A torus point `t ∈ T = (k^*)^n`, given by its coordinates `t_i = χ^{e_i}(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement(Vec<BigRational>);

impl TorusElement {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.iter().any(Zero::is_zero) {
            return Err(ToricError::ZeroCharacterValue);
        }
        Ok(TorusElement(values))
    }

    pub fn identity(n: usize) -> Self {
        TorusElement(vec![BigRational::one(); n])
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        TorusElement(self.0.iter().map(|x| x.recip()).collect())
    }

    /// `χ^m(t) = Π t_i^{m_i}`.
    pub fn character_value(&self, m: &LatticePoint) -> BigRational {
        let mut acc = BigRational::one();
        for (t, k) in self.0.iter().zip(m.coords()) {
            acc *= Pow::pow(t, k.clone());
        }
        acc
    }

    /// Action on functions: `χ^m ↦ χ^m(t) χ^m`.
    pub fn act(&self, g: &MonomialFunction) -> MonomialFunction {
        MonomialFunction::from_terms(g.terms().map(|(m, c)| (m.clone(), c * self.character_value(m))))
    }
}

/// The replica `t ∘ r ∘ t^{-1}`, where `t` acts on functions by
/// `χ^m ↦ χ^m(t) χ^m`. Conjugation rescales each term `c χ^a` of `f` by
/// `χ^{a+e}(t)`; in particular the root subgroup parameter is scaled by the
/// character `χ^e(t)` of its weight.
pub fn torus_conjugate(t: &TorusElement, r: &ReplicaAutomorphism) -> Result<ReplicaAutomorphism> {
    if t.values().len() != r.cone.ambient_rank() {
        return Err(ToricError::RankMismatch { expected: r.cone.ambient_rank(), found: t.values().len() });
    }
    let e = &r.root.weight;
    let f = MonomialFunction::from_terms(r.f.terms().map(|(a, c)| (a.clone(), c * t.character_value(&(a + e)))));
    ReplicaAutomorphism::new(&r.cone, r.root.clone(), f)
}

/// `t ∘ r ∘ t^{-1}` evaluated directly on a function.
pub fn conjugate_apply(t: &TorusElement, r: &ReplicaAutomorphism, g: &MonomialFunction) -> Result<MonomialFunction> {
    Ok(t.act(&r.apply(&t.inverse().act(g))?))
}

/// The two computable ingredients behind the dense open `DU`-orbit: the
/// kernel `D = ker(e)` is connected, and `{e} ∪ (σ^∨ ∩ ρ^⊥ ∩ M)` spans `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuOrbitCertificate {
    pub kernel: QuotientStructure,
    pub kernel_connected: bool,
    pub invariant_generators: Vec<LatticePoint>,
    pub span_quotient: QuotientStructure,
    pub faithful: bool,
}

impl DuOrbitCertificate {
    pub fn passed(&self) -> bool {
        self.kernel_connected && self.faithful
    }
}

pub fn du_orbit_certificate(sigma: &Cone, root: &DemazureRoot) -> Result<DuOrbitCertificate> {
    if !sigma.is_full_dimensional() {
        return Err(ToricError::NotFullDimensional);
    }
    if !is_root(sigma, root.ray_index, &root.weight)? {
        return Err(ToricError::NotARoot { ray: root.ray_index, weight: root.weight.to_string() });
    }
    let n = sigma.ambient_rank();
    let kernel = root_kernel(&root.weight)?;
    let invariants = invariant_subalgebra(sigma, root.ray_index)?;
    let invariant_generators = invariants.generators();
    let mut span = invariant_generators.clone();
    span.push(root.weight.clone());
    let span_quotient = quotient_structure(&span, n)?;
    Ok(DuOrbitCertificate {
        kernel_connected: kernel.is_torsion_free(),
        kernel,
        invariant_generators,
        faithful: span_quotient.is_trivial(),
        span_quotient,
    })
}

/// Rational from a pair of machine integers, for tests and examples.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Number of applications of `∂` that kill `χ^m`, namely `<m, v_ρ> + 1`.
pub fn nilpotency_order(sigma: &Cone, root: &DemazureRoot, m: &LatticePoint) -> Result<BigInt> {
    let v = sigma.ray(root.ray_index)?;
    let k = m.dot(v);
    if k.is_negative() {
        return Err(ToricError::SupportOutsideCone(m.to_string()));
    }
    Ok(k + 1)
}
