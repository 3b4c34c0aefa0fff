//! Complete fans in `Z^2`, corner blow-ups and the tower `X_0 ← X_1 ← X_2 ← …`
//! obtained from `P^2` by blowing up every torus-fixed point at each step.
//!
//! For a smooth complete fan with rays `v_0, …, v_{r-1}` in counterclockwise
//! order, `v_{i-1} + v_{i+1} = a_i v_i` and the invariant curve `D_i` has
//! `D_i^2 = -a_i`.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, ToricError};
use crate::lattice::{IntMatrix, LatticeMap, LatticePoint};

/// Default bound on [`tower`] depth: level 12 already has 12288 rays.
pub const DEFAULT_TOWER_CAP: usize = 12;

/// A complete fan in `Z^2`, stored as its primitive rays in counterclockwise
/// cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteFan2D {
    rays: Vec<LatticePoint>,
}

fn det2(a: &LatticePoint, b: &LatticePoint) -> BigInt {
    let (a, b) = (a.coords(), b.coords());
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// 0 for the half-open upper half-plane (including the positive x-axis).
fn half(v: &LatticePoint) -> u8 {
    let (x, y) = (&v.coords()[0], &v.coords()[1]);
    if y.is_positive() || (y.is_zero() && x.is_positive()) {
        0
    } else {
        1
    }
}

/// Strictly increasing angle from `a` to `b` within `[0, 2π)` measured from
/// the positive x-axis.
fn angle_increases(a: &LatticePoint, b: &LatticePoint) -> bool {
    match half(a).cmp(&half(b)) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => det2(a, b).is_positive(),
    }
}

impl CompleteFan2D {
    /// Validates a cyclically ordered ray list. Clockwise input is reversed.
    pub fn new(rays: Vec<LatticePoint>) -> Result<Self> {
        if rays.len() < 3 {
            return Err(ToricError::InvalidFan(format!("a complete fan needs at least 3 rays, got {}", rays.len())));
        }
        for v in &rays {
            v.check_rank(2)?;
            if !v.is_primitive() {
                return Err(ToricError::InvalidFan(format!("ray {v} is not primitive")));
            }
        }
        let r = rays.len();
        let signs: Vec<BigInt> = (0..r).map(|i| det2(&rays[i], &rays[(i + 1) % r])).collect();
        let mut rays = rays;
        if signs.iter().all(Signed::is_negative) {
            rays.reverse();
        } else if !signs.iter().all(Signed::is_positive) {
            return Err(ToricError::InvalidFan("consecutive rays must turn strictly counterclockwise".into()));
        }
        // Every step turns by less than π, so the fan is complete exactly
        // when the rays wind around once.
        let wraps = (0..r).filter(|&i| !angle_increases(&rays[i], &rays[(i + 1) % r])).count();
        if wraps != 1 {
            return Err(ToricError::InvalidFan(format!("rays wind around the origin {wraps} times")));
        }
        Ok(CompleteFan2D { rays })
    }

    pub fn from_i64_rays(rays: &[[i64; 2]]) -> Result<Self> {
        Self::new(rays.iter().map(|v| LatticePoint::from_i64s(v)).collect())
    }

    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// `det(v_i, v_{i+1})` for each `i`.
    pub fn corner_determinants(&self) -> Vec<BigInt> {
        let r = self.rays.len();
        (0..r).map(|i| det2(&self.rays[i], &self.rays[(i + 1) % r])).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.corner_determinants().iter().all(One::is_one)
    }

    /// The same fan with the lexicographically least ray first.
    pub fn canonical(&self) -> CompleteFan2D {
        let start = (0..self.rays.len()).min_by(|&i, &j| self.rays[i].cmp(&self.rays[j])).unwrap_or(0);
        let mut rays = self.rays.clone();
        rays.rotate_left(start);
        CompleteFan2D { rays }
    }

    /// Equality of fans regardless of the starting ray.
    pub fn same_fan(&self, other: &CompleteFan2D) -> bool {
        self.canonical() == other.canonical()
    }

    /// Inserts `v_i + v_{i+1}` after `v_i`.
    pub fn blow_up_corner(&self, i: usize) -> Result<CompleteFan2D> {
        let r = self.rays.len();
        if i >= r {
            return Err(ToricError::RayIndexOutOfRange { index: i, count: r });
        }
        if !det2(&self.rays[i], &self.rays[(i + 1) % r]).is_one() {
            return Err(ToricError::NotSmooth);
        }
        let mut rays = self.rays.clone();
        rays.insert(i + 1, &self.rays[i] + &self.rays[(i + 1) % r]);
        Ok(CompleteFan2D { rays })
    }
}

/// The fan of `P^2`: `(1,0), (0,1), (-1,-1)`.
pub fn projective_plane_fan() -> CompleteFan2D {
    CompleteFan2D { rays: vec![LatticePoint::from_i64s(&[1, 0]), LatticePoint::from_i64s(&[0, 1]), LatticePoint::from_i64s(&[-1, -1])] }
}

/// The integers `a_i` with `v_{i-1} + v_{i+1} = a_i v_i`.
pub fn neighbor_coefficients(fan: &CompleteFan2D) -> Result<Vec<BigInt>> {
    if !fan.is_smooth() {
        return Err(ToricError::NotSmooth);
    }
    let rays = fan.rays();
    let r = rays.len();
    Ok((0..r)
        .map(|i| {
            let s = &rays[(i + r - 1) % r] + &rays[(i + 1) % r];
            // Smoothness makes (v_i, v_{i+1}) a basis, so a_i = det(s, v_{i+1}).
            let a = det2(&s, &rays[(i + 1) % r]);
            debug_assert_eq!(rays[i].scale(&a), s);
            a
        })
        .collect())
}

/// `D_i^2 = -a_i` for every ray, in fan order.
pub fn self_intersections(fan: &CompleteFan2D) -> Result<Vec<BigInt>> {
    Ok(neighbor_coefficients(fan)?.into_iter().map(|a| -a).collect())
}

/// Blows up every torus-fixed point: each `v_i + v_{i+1}` is inserted
/// between `v_i` and `v_{i+1}`.
pub fn blow_up_all_corners(fan: &CompleteFan2D) -> Result<CompleteFan2D> {
    if !fan.is_smooth() {
        return Err(ToricError::NotSmooth);
    }
    let r = fan.len();
    let mut rays = Vec::with_capacity(2 * r);
    for i in 0..r {
        rays.push(fan.rays[i].clone());
        rays.push(&fan.rays[i] + &fan.rays[(i + 1) % r]);
    }
    let out = CompleteFan2D { rays };
    debug_assert!(out.is_smooth());
    Ok(out)
}

/// The fan of `X_i`, with depth bounded by `cap`.
pub fn tower(i: usize, cap: usize) -> Result<CompleteFan2D> {
    if i > cap {
        return Err(ToricError::TowerCapExceeded { requested: i, cap });
    }
    let mut fan = projective_plane_fan();
    for _ in 0..i {
        fan = blow_up_all_corners(&fan)?;
        if !fan.is_smooth() {
            return Err(ToricError::Internal("corner blow-up produced a singular fan".into()));
        }
    }
    Ok(fan)
}

/// Rank of the Picard group of a smooth complete toric surface.
pub fn picard_rank(fan: &CompleteFan2D) -> usize {
    fan.len() - 2
}

/// Rays whose invariant curve has negative self-intersection.
pub fn negative_ray_report(fan: &CompleteFan2D) -> Result<Vec<(LatticePoint, BigInt)>> {
    Ok(fan.rays().iter().cloned().zip(self_intersections(fan)?).filter(|(_, d)| d.is_negative()).collect())
}

/// All `g ∈ GL_2(Z)` permuting the rays, sorted by matrix entries.
///
/// A symmetry is fixed by where it sends the basis `(v_0, v_1)`: to some
/// adjacent pair in either orientation. The neighbor coefficients must then
/// match along the induced relabeling, which rules out most candidates
/// before the ray set is checked.
pub fn fan_automorphisms(fan: &CompleteFan2D) -> Vec<LatticeMap> {
    let rays = fan.rays();
    let r = rays.len();
    let coefficients = neighbor_coefficients(fan).ok();
    let set: HashSet<&LatticePoint> = rays.iter().collect();
    let source = IntMatrix::from_columns(&rays[..2], 2).expect("rank 2");
    let Some(source_inv) = source.rational_inverse() else { return Vec::new() };

    let mut out: Vec<LatticeMap> = Vec::new();
    for j in 0..r {
        for reversed in [false, true] {
            let image = |k: usize| if reversed { (j + 1 + r - k) % r } else { (j + k) % r };
            if let Some(a) = &coefficients {
                if (0..r).any(|k| a[k] != a[image(k)]) {
                    continue;
                }
            }
            let target = IntMatrix::from_columns(&[rays[image(0)].clone(), rays[image(1)].clone()], 2).expect("rank 2");
            let Some(g) = integral_product(&target, &source_inv) else { continue };
            let Ok(g) = LatticeMap::unimodular(g) else { continue };
            if rays.iter().all(|v| set.contains(&g.apply(v))) {
                out.push(g);
            }
        }
    }
    out.sort_by(|a, b| a.matrix().rows().cmp(b.matrix().rows()));
    out.dedup();
    out
}

fn integral_product(t: &IntMatrix, s_inv: &[Vec<num_rational::BigRational>]) -> Option<IntMatrix> {
    let n = t.nrows();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let x: num_rational::BigRational =
                (0..n).map(|k| num_rational::BigRational::from_integer(t.get(i, k).clone()) * &s_inv[k][j]).sum();
            if !x.is_integer() {
                return None;
            }
            row.push(x.to_integer());
        }
        rows.push(row);
    }
    IntMatrix::from_rows(rows, n).ok()
}

/// Whether a finite list of maps is closed under composition and inverses
/// and contains the identity.
pub fn is_group(maps: &[LatticeMap]) -> bool {
    let Some(first) = maps.first() else { return false };
    let set: HashSet<&LatticeMap> = maps.iter().collect();
    set.contains(&LatticeMap::identity(first.rank()))
        && maps.iter().all(|g| g.inverse().is_some_and(|h| set.contains(&h)))
        && maps.iter().all(|g| maps.iter().all(|h| set.contains(&g.compose(h))))
}

/// An SVG drawing of the fan: rays scaled to a common length, labelled by
/// self-intersection when the fan is smooth.
pub fn fan_svg(fan: &CompleteFan2D, size: u32) -> String {
    let c = f64::from(size) / 2.0;
    let reach = c * 0.8;
    let labels = self_intersections(fan).ok();
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#);
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#fff"/>"##);
    let points: Vec<(f64, f64)> = fan
        .rays()
        .iter()
        .map(|v| {
            let x = v.coords()[0].to_f64().unwrap_or(0.0);
            let y = v.coords()[1].to_f64().unwrap_or(0.0);
            let len = x.hypot(y).max(f64::MIN_POSITIVE);
            (c + reach * x / len, c - reach * y / len)
        })
        .collect();
    for (i, (x, y)) in points.iter().enumerate() {
        let (nx, ny) = points[(i + 1) % points.len()];
        let _ = writeln!(
            out,
            r##"<path d="M{c:.2},{c:.2} L{x:.2},{y:.2} L{nx:.2},{ny:.2} Z" fill="{}" fill-opacity="0.25" stroke="none"/>"##,
            if i % 2 == 0 { "#8ab" } else { "#cde" }
        );
    }
    let small = points.len() <= 48;
    for (i, (x, y)) in points.iter().enumerate() {
        let _ = writeln!(out, r##"<line x1="{c:.2}" y1="{c:.2}" x2="{x:.2}" y2="{y:.2}" stroke="#234" stroke-width="1"/>"##);
        if small {
            let lx = c + (x - c) * 1.1;
            let ly = c + (y - c) * 1.1;
            let text = match &labels {
                Some(d) => format!("{} ({})", fan.rays()[i], d[i]),
                None => fan.rays()[i].to_string(),
            };
            let _ = writeln!(
                out,
                r#"<text x="{lx:.2}" y="{ly:.2}" font-size="10" font-family="monospace" text-anchor="middle">{text}</text>"#
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
