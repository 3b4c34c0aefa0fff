//! Seeded generators and brute-force oracles shared by the integration tests.
//! The oracles work in machine integers and use only definitions, never the
//! library's normal forms or double description.

#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use toric_aut::surface::{projective_plane_fan, CompleteFan2D};
use toric_aut::{Cone, IntMatrix, LatticeMap, LatticePoint};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn pt(c: &[i64]) -> LatticePoint {
    LatticePoint::from_i64s(c)
}

pub fn to_i64(p: &LatticePoint) -> Vec<i64> {
    p.coords().iter().map(|c| c.to_i64().expect("small test coordinates")).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A random strongly convex cone in `Z^n` with 1..=n+2 generators of entries
/// in `[-3, 3]`; optionally required to be full-dimensional.
pub fn random_cone(rng: &mut StdRng, n: usize, full_dimensional: bool) -> Cone {
    loop {
        let count = rng.gen_range(if full_dimensional { n } else { 1 }..=n + 2);
        let gens: Vec<LatticePoint> = (0..count)
            .map(|_| LatticePoint::new((0..n).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect()))
            .filter(|v| !v.is_zero())
            .collect();
        let Ok(cone) = Cone::from_generators(n, &gens) else { continue };
        if cone.is_strongly_convex() && !cone.is_zero() && (!full_dimensional || cone.is_full_dimensional()) {
            return cone;
        }
    }
}

/// A random element of `GL_n(Z)` with entries bounded by `max_entry`, built
/// from elementary moves.
pub fn random_unimodular(rng: &mut StdRng, n: usize, max_entry: i64) -> LatticeMap {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..rng.gen_range(0..3 * n + 2) {
        let mut next = m.clone();
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if i == j {
                    continue;
                }
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                for k in 0..n {
                    next[i][k] += s * m[j][k];
                }
            }
            1 if n > 1 => {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                next.swap(i, j);
            }
            _ => {
                let i = rng.gen_range(0..n);
                for x in next[i].iter_mut() {
                    *x = -*x;
                }
            }
        }
        if next.iter().flatten().all(|x| x.abs() <= max_entry) {
            m = next;
        }
    }
    let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
    LatticeMap::unimodular(IntMatrix::from_i64_rows(&rows)).expect("elementary moves preserve |det| = 1")
}

pub fn image_cone(g: &LatticeMap, sigma: &Cone) -> Cone {
    let rays: Vec<LatticePoint> = sigma.rays().iter().map(|r| g.apply(r)).collect();
    Cone::from_generators(sigma.ambient_rank(), &rays).unwrap()
}

/// `P^2` followed by `steps` single-corner blow-ups at random corners.
pub fn random_fan(rng: &mut StdRng, steps: usize) -> CompleteFan2D {
    let mut fan = projective_plane_fan();
    for _ in 0..steps {
        let i = rng.gen_range(0..fan.len());
        fan = fan.blow_up_corner(i).unwrap();
    }
    fan
}

/// Every integer vector in `[-b, b]^n`.
pub fn box_points(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// `C ∩ Z^n` membership straight from the inequalities of a cone given by
/// facet normals and equations.
pub fn satisfies(normals: &[Vec<i64>], equations: &[Vec<i64>], x: &[i64]) -> bool {
    normals.iter().all(|u| dot(u, x) >= 0) && equations.iter().all(|u| dot(u, x) == 0)
}

/// Hilbert basis of a full-dimensional pointed cone `C` by enumeration.
///
/// With `u` the sum of the normals of `C` (positive on `C \ 0`), every
/// Hilbert basis element has degree at most the sum of the ray degrees, so
/// it suffices to list the cone points up to that degree and keep the ones
/// that are not a sum of two nonzero cone points.
pub fn brute_hilbert_basis(cone: &Cone) -> Vec<Vec<i64>> {
    let n = cone.ambient_rank();
    let normals: Vec<Vec<i64>> = cone.facet_normals().iter().map(to_i64).collect();
    let rays: Vec<Vec<i64>> = cone.rays().iter().map(to_i64).collect();
    let mut u = vec![0i64; n];
    for w in &normals {
        for (a, b) in u.iter_mut().zip(w) {
            *a += b;
        }
    }
    let degrees: Vec<i64> = rays.iter().map(|r| dot(&u, r)).collect();
    assert!(degrees.iter().all(|&d| d > 0));
    let max_degree: i64 = degrees.iter().sum();
    // The degree-bounded slice is the convex hull of 0 and the rays scaled
    // to max_degree, which bounds every coordinate.
    let reach = rays
        .iter()
        .zip(&degrees)
        .map(|(r, d)| r.iter().map(|x| x.abs()).max().unwrap() * max_degree / d + 1)
        .max()
        .unwrap();
    let points: Vec<Vec<i64>> = box_points(n, reach)
        .into_iter()
        .filter(|x| x.iter().any(|&c| c != 0) && satisfies(&normals, &[], x) && dot(&u, x) <= max_degree)
        .collect();
    let set: HashSet<&Vec<i64>> = points.iter().collect();
    let mut basis: Vec<Vec<i64>> = points
        .iter()
        .filter(|x| {
            !points.iter().any(|y| {
                let diff: Vec<i64> = x.iter().zip(y.iter()).map(|(a, b)| a - b).collect();
                diff.iter().any(|&c| c != 0) && dot(&u, y) < dot(&u, x) && set.contains(&diff)
            })
        })
        .cloned()
        .collect();
    basis.sort();
    basis
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        k => (0..k)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Structure of `Z^n / span(gens)` from determinantal divisors: `d_k` is the
/// gcd of all `k × k` minors, the rank is the largest `k` with `d_k ≠ 0`,
/// and the invariant factors are the ratios `d_k / d_{k-1}` that exceed 1.
pub fn determinantal_quotient(gens: &[Vec<i64>], n: usize) -> (usize, Vec<i64>) {
    let mut divisors = vec![1i64];
    for k in 1..=n.min(gens.len()) {
        let mut g = 0;
        for rows in subsets(gens.len(), k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<i64>> = rows.iter().map(|&r| cols.iter().map(|&c| gens[r][c]).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let factors = divisors.windows(2).map(|w| w[1] / w[0]).filter(|&f| f > 1).collect();
    (n - rank, factors)
}

/// For a full-rank sublattice `L ⊂ Z^n` of small index, the number of
/// elements of `Z^n / L` killed by `k`, for each `k` in `1..=N` where
/// `N·Z^n ⊂ L`: enumerates `(Z/N)^n` and the image of `L` in it.
pub fn torsion_profile(gens: &[Vec<i64>], n: usize, big_n: i64) -> Vec<usize> {
    let modp = |x: i64| x.rem_euclid(big_n);
    let mut sub: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier = vec![vec![0i64; n]];
    sub.insert(vec![0; n]);
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| modp(a + b)).collect();
            if sub.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let all = box_points(n, big_n).into_iter().filter(|x| x.iter().all(|&c| (0..big_n).contains(&c))).collect::<Vec<_>>();
    (1..=big_n)
        .map(|k| {
            let killed = all.iter().filter(|x| sub.contains(&x.iter().map(|&c| modp(k * c)).collect::<Vec<_>>())).count();
            killed / sub.len()
        })
        .collect()
}

/// `#{x ∈ ⊕ Z/d_j : kx = 0} = Π gcd(k, d_j)`.
pub fn expected_torsion_profile(factors: &[i64], big_n: i64) -> Vec<usize> {
    (1..=big_n).map(|k| factors.iter().map(|&d| gcd(k, d) as usize).product()).collect()
}

/// All `g ∈ GL_2(Z)` with entries in `[-2, 2]` permuting the rays; for the
/// tower fans every symmetry lies in that box.
pub fn brute_fan_automorphisms(fan: &CompleteFan2D) -> Vec<[i64; 4]> {
    let rays: Vec<Vec<i64>> = fan.rays().iter().map(to_i64).collect();
    let set: HashSet<&Vec<i64>> = rays.iter().collect();
    let mut out = Vec::new();
    for a in -2i64..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                for d in -2..=2 {
                    if (a * d - b * c).abs() != 1 {
                        continue;
                    }
                    if rays.iter().all(|v| set.contains(&vec![a * v[0] + b * v[1], c * v[0] + d * v[1]])) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Demazure roots of the cone by scanning `[-b, b]^n` with the pairing
/// definition only.
pub fn brute_roots(cone: &Cone, ray: usize, b: i64) -> Vec<Vec<i64>> {
    let rays: Vec<Vec<i64>> = cone.rays().iter().map(to_i64).collect();
    let mut out: Vec<Vec<i64>> = box_points(cone.ambient_rank(), b)
        .into_iter()
        .filter(|m| rays.iter().enumerate().all(|(i, v)| if i == ray { dot(m, v) == -1 } else { dot(m, v) >= 0 }))
        .collect();
    out.sort();
    out
}
