use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

use toric_aut::format::{
    function_from_terms, map_rows, terms_of_function, ConeSpec, FanSpec, JsonInt, JsonRational, QuotientSpec,
    TermSpec,
};
use toric_aut::iso::{cone_fingerprint, cones_equivalent, IsoWitness};
use toric_aut::monoid::{self, invariant_subalgebra, monoid_membership, AffineMonoid};
use toric_aut::replica::{du_orbit_certificate, replica_commutes, torus_conjugate, ReplicaAutomorphism, TorusElement};
use toric_aut::roots::{self, DemazureRoot};
use toric_aut::surface::{self, CompleteFan2D};
use toric_aut::{Cone, LatticeMap};

use crate::input::cone_of;
use crate::{Failure, Report};

type Out = Result<Value, Failure>;

fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

fn monoid_json(m: &AffineMonoid) -> Value {
    json!({"hilbert_basis": m.hilbert_basis(), "units": m.units(), "is_group": m.is_group()})
}

fn root_json(sigma: &Cone, e: &DemazureRoot) -> Value {
    json!({"ray_index": e.ray_index, "ray": sigma.rays()[e.ray_index], "weight": e.weight})
}

pub fn dual(sigma: &Cone) -> Out {
    Ok(serde_json::to_value(ConeSpec::from_cone(&sigma.dual())).expect("serializable"))
}

pub fn rays(sigma: &Cone) -> Out {
    Ok(json!({
        "ambient_rank": sigma.ambient_rank(),
        "dim": sigma.dim(),
        "rays": sigma.rays(),
        "lineality": sigma.lineality(),
        "facet_normals": sigma.facet_normals(),
        "equations": sigma.equations(),
        "strongly_convex": sigma.is_strongly_convex(),
        "smooth": sigma.is_smooth(),
    }))
}

pub fn hilbert(c: &Cone) -> Out {
    Ok(monoid_json(&AffineMonoid::of_cone(c)))
}

#[derive(Deserialize)]
pub struct MemberRequest {
    cone: ConeSpec,
    point: toric_aut::LatticePoint,
}

pub fn member(req: MemberRequest) -> Out {
    let c = cone_of(&req.cone)?;
    let found = monoid_membership(&req.point, &c)?;
    Ok(match found {
        Some(d) => json!({
            "member": true,
            "decomposition": d.terms.iter().map(|(h, k)| json!({"element": h, "multiplicity": JsonInt(k.clone())})).collect::<Vec<_>>(),
        }),
        None => json!({"member": false, "decomposition": null}),
    })
}

pub fn weight_monoid(sigma: &Cone) -> Out {
    Ok(monoid_json(&monoid::weight_monoid(sigma)?))
}

pub fn invariants(sigma: &Cone, ray: usize) -> Out {
    Ok(monoid_json(&invariant_subalgebra(sigma, ray)?))
}

pub fn roots(sigma: &Cone, bound: u32) -> Out {
    let found = roots::enumerate_roots(sigma, bound)?;
    Ok(json!({"bound": bound, "roots": found.iter().map(|e| root_json(sigma, e)).collect::<Vec<_>>()}))
}

pub fn find_root(sigma: &Cone, ray: usize) -> Out {
    Ok(root_json(sigma, &roots::find_root(sigma, ray)?))
}

pub fn is_torus(sigma: &Cone) -> Out {
    Ok(json!({"is_torus": roots::is_torus(sigma)}))
}

pub fn family(sigma: &Cone, ray: usize) -> Out {
    let e0 = roots::find_root(sigma, ray)?;
    let fam = roots::commuting_root_family(sigma, &e0)?;
    let det = roots::family_determinant(&fam, sigma.ambient_rank())?;
    Ok(json!({
        "family": fam.iter().map(|e| root_json(sigma, e)).collect::<Vec<_>>(),
        "determinant": JsonInt(det),
    }))
}

#[derive(Deserialize)]
pub struct ReplicaSpec {
    root: DemazureRoot,
    f: Vec<TermSpec>,
}

impl ReplicaSpec {
    fn build(&self, sigma: &Cone) -> Result<ReplicaAutomorphism, Failure> {
        Ok(ReplicaAutomorphism::new(sigma, self.root.clone(), function_from_terms(&self.f))?)
    }
}

#[derive(Deserialize)]
pub struct ApplyRequest {
    cone: ConeSpec,
    #[serde(flatten)]
    replica: ReplicaSpec,
    g: Vec<TermSpec>,
}

pub fn replica_apply(req: ApplyRequest) -> Out {
    let sigma = cone_of(&req.cone)?;
    let r = req.replica.build(&sigma)?;
    let image = r.apply(&function_from_terms(&req.g))?;
    Ok(json!({"image": terms_of_function(&image)}))
}

#[derive(Deserialize)]
pub struct CommuteRequest {
    cone: ConeSpec,
    first: ReplicaSpec,
    second: ReplicaSpec,
}

pub fn replica_commute(req: CommuteRequest) -> Out {
    let sigma = cone_of(&req.cone)?;
    let (a, b) = (req.first.build(&sigma)?, req.second.build(&sigma)?);
    Ok(json!({"commute": replica_commutes(&a, &b)?}))
}

#[derive(Deserialize)]
pub struct ConjugateRequest {
    cone: ConeSpec,
    #[serde(flatten)]
    replica: ReplicaSpec,
    t: Vec<JsonRational>,
}

pub fn replica_conjugate(req: ConjugateRequest) -> Out {
    let sigma = cone_of(&req.cone)?;
    let r = req.replica.build(&sigma)?;
    let t = TorusElement::new(req.t.into_iter().map(|x| x.0).collect())?;
    let c = torus_conjugate(&t, &r)?;
    Ok(json!({"root": c.root(), "f": terms_of_function(c.f())}))
}

pub fn du_cert(sigma: &Cone, ray: usize) -> Out {
    let e = roots::find_root(sigma, ray)?;
    let cert = du_orbit_certificate(sigma, &e)?;
    Ok(json!({
        "root": root_json(sigma, &e),
        "kernel": QuotientSpec::from(&cert.kernel),
        "kernel_connected": cert.kernel_connected,
        "invariant_generators": cert.invariant_generators,
        "span_quotient": QuotientSpec::from(&cert.span_quotient),
        "spans_lattice": cert.faithful,
        "passed": cert.passed(),
    }))
}

fn rows_json(g: &LatticeMap) -> Value {
    json!(map_rows(g))
}

pub fn iso(a: &Cone, b: &Cone) -> Out {
    Ok(match cones_equivalent(a, b)? {
        IsoWitness::Equivalent(g) => json!({"equivalent": true, "map": rows_json(&g), "reason": null}),
        IsoWitness::NotEquivalent(why) => json!({"equivalent": false, "map": null, "reason": why.to_string()}),
    })
}

pub fn fingerprint(sigma: &Cone) -> Out {
    let f = cone_fingerprint(sigma)?;
    Ok(json!({
        "ambient_rank": f.ambient_rank,
        "dim": f.dim,
        "ray_count": f.ray_count,
        "multiplicity": JsonInt(f.multiplicity),
        "facet_multiplicities": ints(&f.facet_multiplicities),
        "dual_hilbert_size": f.dual_hilbert_size,
    }))
}

pub fn tower(steps: usize, cap: usize, report: Option<Report>, svg: Option<&str>) -> Out {
    let fan = surface::tower(steps, cap)?;
    let mut out = match report {
        None => serde_json::to_value(FanSpec::from_fan(&fan)).expect("serializable"),
        Some(Report::Selfint) => selfint(&fan)?,
        Some(Report::Picard) => picard(&fan)?,
        Some(Report::Aut) => fan_aut(&fan)?,
    };
    out["level"] = json!(steps);
    if let Some(path) = svg {
        std::fs::write(path, surface::fan_svg(&fan, 480)).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
        out["svg"] = json!(path);
    }
    Ok(out)
}

pub fn selfint(fan: &CompleteFan2D) -> Out {
    let d = surface::self_intersections(fan)?;
    let negative = surface::negative_ray_report(fan)?;
    Ok(json!({
        "rays": fan.rays(),
        "self_intersections": ints(&d),
        "negative": negative.iter().map(|(v, x)| json!({"ray": v, "self_intersection": JsonInt(x.clone())})).collect::<Vec<_>>(),
    }))
}

pub fn picard(fan: &CompleteFan2D) -> Out {
    if !fan.is_smooth() {
        return Err(toric_aut::ToricError::NotSmooth.into());
    }
    Ok(json!({"picard_rank": surface::picard_rank(fan)}))
}

pub fn fan_aut(fan: &CompleteFan2D) -> Out {
    let maps = surface::fan_automorphisms(fan);
    Ok(json!({
        "order": maps.len(),
        "is_group": surface::is_group(&maps),
        "maps": maps.iter().map(rows_json).collect::<Vec<_>>(),
    }))
}
