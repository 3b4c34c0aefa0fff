//! Small SVG helpers for the plane pictures.

use std::fmt::Write;

use num_traits::ToPrimitive;
use toric_aut::{Cone, LatticePoint};

pub fn xy(p: &LatticePoint) -> (f64, f64) {
    let c = p.coords();
    (c[0].to_f64().unwrap_or(0.0), c[1].to_f64().unwrap_or(0.0))
}

/// Keeps the part of a convex polygon where `<u, p> >= 0`.
fn clip(poly: &[(f64, f64)], u: (f64, f64)) -> Vec<(f64, f64)> {
    let side = |p: &(f64, f64)| u.0 * p.0 + u.1 * p.1;
    let mut out = Vec::new();
    for (i, p) in poly.iter().enumerate() {
        let q = &poly[(i + 1) % poly.len()];
        let (sp, sq) = (side(p), side(q));
        if sp >= 0.0 {
            out.push(*p);
        }
        if (sp >= 0.0) != (sq >= 0.0) {
            let t = sp / (sp - sq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

/// One square panel showing `[-r, r]^2`, with lattice points, a shaded cone
/// and highlighted points.
pub struct Panel {
    pub origin: f64,
    pub size: f64,
    pub r: i64,
}

impl Panel {
    fn scale(&self) -> f64 {
        self.size / (2 * self.r + 2) as f64
    }

    pub fn at(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let s = self.scale();
        let c = self.size / 2.0;
        (self.origin + c + x * s, c - y * s)
    }

    pub fn frame(&self, out: &mut String, title: &str) {
        let _ = writeln!(
            out,
            r##"<rect x="{:.1}" y="0" width="{:.1}" height="{:.1}" fill="#fff" stroke="#999"/>"##,
            self.origin, self.size, self.size
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="16" font-size="13" font-family="sans-serif">{title}</text>"#,
            self.origin + 8.0
        );
    }

    pub fn cone(&self, out: &mut String, cone: &Cone, fill: &str) {
        let r = self.r as f64 + 0.5;
        if cone.is_full_dimensional() {
            let mut poly = vec![(-r, -r), (r, -r), (r, r), (-r, r)];
            for u in cone.facet_normals() {
                poly = clip(&poly, xy(u));
            }
            let d: Vec<String> = poly.iter().map(|&p| self.at(p)).map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
            let _ = writeln!(out, r#"<polygon points="{}" fill="{fill}" fill-opacity="0.3" stroke="none"/>"#, d.join(" "));
        }
        let mut directions: Vec<LatticePoint> = cone.rays().to_vec();
        for l in cone.lineality() {
            directions.push(l.clone());
            directions.push(LatticePoint::new(l.coords().iter().map(|c| -c).collect()));
        }
        let (ox, oy) = self.at((0.0, 0.0));
        for v in &directions {
            let (x, y) = xy(v);
            let k = r / x.abs().max(y.abs());
            let (ex, ey) = self.at((x * k, y * k));
            let _ = writeln!(out, r#"<line x1="{ox:.1}" y1="{oy:.1}" x2="{ex:.1}" y2="{ey:.1}" stroke="{fill}" stroke-width="2"/>"#);
        }
    }

    pub fn grid(&self, out: &mut String, inside: impl Fn(&LatticePoint) -> bool) {
        for a in -self.r..=self.r {
            for b in -self.r..=self.r {
                let p = LatticePoint::from_i64s(&[a, b]);
                let (x, y) = self.at((a as f64, b as f64));
                let (rad, fill) = if inside(&p) { (2.5, "#234") } else { (1.2, "#bbb") };
                let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="{rad}" fill="{fill}"/>"#);
            }
        }
    }

    pub fn mark(&self, out: &mut String, p: &LatticePoint, color: &str, square: bool) {
        let (a, b) = xy(p);
        if a.abs() > self.r as f64 || b.abs() > self.r as f64 {
            return;
        }
        let (x, y) = self.at((a, b));
        if square {
            let _ = writeln!(
                out,
                r#"<rect x="{:.1}" y="{:.1}" width="9" height="9" fill="none" stroke="{color}" stroke-width="2"><title>{p}</title></rect>"#,
                x - 4.5,
                y - 4.5
            );
        } else {
            let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="5" fill="{color}"><title>{p}</title></circle>"#);
        }
    }
}
