//! Browser demo. Each export takes and returns JSON text so the page needs
//! no bindings beyond strings; the same functions are plain Rust natively.

mod draw;

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use toric_aut::format::{function_from_terms, terms_of_function, ConeSpec, JsonInt, TermSpec};
use toric_aut::monoid::{weight_monoid, AffineMonoid};
use toric_aut::replica::{coordinate_generators, MonomialFunction, ReplicaAutomorphism};
use toric_aut::{roots, surface, Cone, LatticePoint};

use draw::{xy, Panel};

/// Deeper towers work but take seconds and draw thousands of rays.
pub const WEB_TOWER_CAP: usize = 8;

const PANEL: f64 = 320.0;

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// The fan of the `steps`-th corner blow-up of P², drawn, with its
/// self-intersection numbers and automorphism count.
pub fn tower_view(steps: usize) -> Result<Value, String> {
    let fan = surface::tower(steps, WEB_TOWER_CAP).map_err(text)?;
    let d = surface::self_intersections(&fan).map_err(text)?;
    let aut = surface::fan_automorphisms(&fan);
    Ok(json!({
        "steps": steps,
        "rays": fan.rays(),
        "self_intersections": d.into_iter().map(JsonInt).collect::<Vec<_>>(),
        "picard_rank": surface::picard_rank(&fan),
        "automorphisms": aut.len(),
        "svg": surface::fan_svg(&fan, 480),
    }))
}

fn view_radius(points: &[&LatticePoint]) -> i64 {
    let far = points.iter().map(|p| {
        let (x, y) = xy(p);
        x.abs().max(y.abs())
    });
    (far.fold(3.0, f64::max) as i64 + 1).min(10)
}

fn cone_svg(sigma: &Cone, hilbert: &AffineMonoid, dual: &AffineMonoid, found: &[roots::DemazureRoot]) -> String {
    let mut shown: Vec<&LatticePoint> = hilbert.hilbert_basis().iter().chain(dual.hilbert_basis()).collect();
    shown.extend(found.iter().map(|e| &e.weight));
    let r = view_radius(&shown);
    let left = Panel { origin: 0.0, size: PANEL, r };
    let right = Panel { origin: PANEL + 10.0, size: PANEL, r };
    let dual_cone = sigma.dual();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{PANEL}" viewBox="0 0 {w} {PANEL}">"#,
        w = 2.0 * PANEL + 10.0
    );
    left.frame(&mut out, "σ ⊂ N: Hilbert basis");
    left.cone(&mut out, sigma, "#37a");
    left.grid(&mut out, |p| sigma.contains(p));
    for h in hilbert.hilbert_basis() {
        left.mark(&mut out, h, "#37a", false);
    }
    right.frame(&mut out, "σ^∨ ⊂ M: generators and roots");
    right.cone(&mut out, &dual_cone, "#a73");
    right.grid(&mut out, |p| dual_cone.contains(p));
    for h in dual.hilbert_basis().iter().chain(dual.units()) {
        right.mark(&mut out, h, "#a73", false);
    }
    for e in found {
        right.mark(&mut out, &e.weight, "#c22", true);
    }
    out.push_str("</svg>\n");
    out
}

/// Dual cone, both Hilbert bases and the roots of a cone in the plane.
pub fn cone_view(payload: &str) -> Result<Value, String> {
    let spec: ConeSpec = serde_json::from_str(payload).map_err(text)?;
    if spec.ambient_rank != 2 {
        return Err("the explorer draws cones in the plane; use ambient_rank 2".into());
    }
    let sigma = spec.to_cone().map_err(text)?;
    let hilbert = AffineMonoid::of_cone(&sigma);
    let dual = AffineMonoid::of_cone(&sigma.dual());
    let (found, torus) = if sigma.is_strongly_convex() {
        let r = view_radius(&dual.hilbert_basis().iter().collect::<Vec<_>>());
        (roots::enumerate_roots(&sigma, r as u32).map_err(text)?, roots::is_torus(&sigma))
    } else {
        (Vec::new(), false)
    };
    Ok(json!({
        "cone": ConeSpec::from_cone(&sigma),
        "dual": ConeSpec::from_cone(&sigma.dual()),
        "smooth": sigma.is_smooth(),
        "multiplicity": JsonInt(sigma.multiplicity()),
        "hilbert_basis": hilbert.hilbert_basis(),
        "dual_hilbert_basis": dual.hilbert_basis(),
        "dual_units": dual.units(),
        "is_torus": torus,
        "roots": found.iter().map(|e| json!({"ray": sigma.rays()[e.ray_index], "weight": e.weight})).collect::<Vec<_>>(),
        "svg": cone_svg(&sigma, &hilbert, &dual, &found),
    }))
}

#[derive(Deserialize)]
struct ReplicaRequest {
    cone: ConeSpec,
    #[serde(default)]
    ray: usize,
    /// Defaults to the constant 1, i.e. the root subgroup itself.
    #[serde(default)]
    f: Option<Vec<TermSpec>>,
}

fn variable(i: usize, n: usize) -> String {
    match (n, i) {
        (..=3, _) => ["x", "y", "z"][i].to_string(),
        _ => format!("x{}", i + 1),
    }
}

/// `χ^m` as a Laurent monomial in x, y, z.
fn monomial(m: &LatticePoint) -> String {
    let n = m.rank();
    let parts: Vec<String> = m
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| if e.is_one() { variable(i, n) } else { format!("{}^{}", variable(i, n), e) })
        .collect();
    parts.join(" ")
}

/// A readable rendering such as `x + 3/2 y^2 x^-1`.
pub fn pretty(f: &MonomialFunction) -> String {
    let mut out = String::new();
    for (i, (m, c)) in f.terms().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        let a: BigRational = c.abs();
        let mono = monomial(m);
        match (a.is_one(), mono.is_empty()) {
            (true, true) => out.push('1'),
            (true, false) => out.push_str(&mono),
            (false, true) => out.push_str(&a.to_string()),
            (false, false) => {
                let _ = write!(out, "{a} {mono}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The replica `exp(f∂)` for the least root of the chosen ray, evaluated on
/// the monomial generators of the coordinate ring.
pub fn replica_view(payload: &str) -> Result<Value, String> {
    let req: ReplicaRequest = serde_json::from_str(payload).map_err(text)?;
    let sigma = req.cone.to_cone().map_err(text)?;
    let n = sigma.ambient_rank();
    let root = roots::find_root(&sigma, req.ray).map_err(text)?;
    let f = match &req.f {
        Some(terms) => function_from_terms(terms),
        None => MonomialFunction::constant(n, BigRational::from_integer(BigInt::one())),
    };
    let r = ReplicaAutomorphism::new(&sigma, root.clone(), f.clone()).map_err(text)?;
    let invariants = toric_aut::monoid::invariant_subalgebra(&sigma, req.ray).map_err(text)?;
    let mut images = Vec::new();
    for m in coordinate_generators(&sigma).map_err(text)? {
        let g = MonomialFunction::character(m.clone());
        let image = r.apply(&g).map_err(text)?;
        images.push(json!({
            "m": m,
            "generator": pretty(&g),
            "image": terms_of_function(&image),
            "text": pretty(&image),
        }));
    }
    Ok(json!({
        "root": {"ray_index": root.ray_index, "ray": sigma.rays()[root.ray_index], "weight": root.weight},
        "f": pretty(&f),
        "weight_monoid": weight_monoid(&sigma).map_err(text)?.hilbert_basis(),
        "invariant_generators": invariants.hilbert_basis(),
        "images": images,
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = towerView)]
pub fn tower_view_js(steps: usize) -> Result<String, JsValue> {
    to_js(tower_view(steps))
}

#[wasm_bindgen(js_name = coneView)]
pub fn cone_view_js(payload: &str) -> Result<String, JsValue> {
    to_js(cone_view(payload))
}

#[wasm_bindgen(js_name = replicaView)]
pub fn replica_view_js(payload: &str) -> Result<String, JsValue> {
    to_js(replica_view(payload))
}
