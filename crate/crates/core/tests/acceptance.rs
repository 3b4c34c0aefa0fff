//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the report is always printed; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use toric_aut::iso::{cone_fingerprint, cones_equivalent, verify_witness, weight_monoids_equal};
use toric_aut::lattice::quotient_structure;
use toric_aut::monoid::{generated_group, invariant_subalgebra, orthogonal_lattice, same_subgroup};
use toric_aut::replica::{
    agree_on_generators, compose_apply, du_orbit_certificate, replica_commutes, MonomialFunction, ReplicaAutomorphism,
};
use toric_aut::roots::{commuting_root_family, enumerate_roots, family_determinant, find_root, is_root, root_kernel};
use toric_aut::surface::{
    fan_automorphisms, is_group, neighbor_coefficients, picard_rank, self_intersections, tower, CompleteFan2D,
    DEFAULT_TOWER_CAP,
};
use toric_aut::{Cone, LatticePoint};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn c1_hexagon() -> Outcome {
    let start = Instant::now();
    let x1 = tower(1, DEFAULT_TOWER_CAP).map_err(|e| e.to_string())?;
    let d = self_intersections(&x1).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(x1.len() == 6, || format!("{} rays", x1.len()))?;
    check(d.iter().all(|x| *x == BigInt::from(-1)), || format!("self-intersections {d:?}"))?;
    within(Duration::from_millis(100), elapsed)?;
    Ok(format!("6 rays, all D^2 = -1 ({elapsed:.2?})"))
}

fn c2_dichotomy() -> Outcome {
    let start = Instant::now();
    let mut ranks = Vec::new();
    for i in 2..=6 {
        let prev = tower(i - 1, DEFAULT_TOWER_CAP).map_err(|e| e.to_string())?;
        let fan = tower(i, DEFAULT_TOWER_CAP).map_err(|e| e.to_string())?;
        let inherited: BTreeSet<&LatticePoint> = prev.rays().iter().collect();
        let d = self_intersections(&fan).map_err(|e| e.to_string())?;
        for (v, x) in fan.rays().iter().zip(&d) {
            if inherited.contains(v) {
                check(*x < BigInt::from(-1), || format!("level {i}: inherited ray {v} has D^2 = {x}"))?;
            } else {
                check(*x == BigInt::from(-1), || format!("level {i}: new ray {v} has D^2 = {x}"))?;
            }
        }
        let rank = picard_rank(&fan);
        check(rank == 3 * (1 << i) - 2, || format!("level {i}: Picard rank {rank}"))?;
        ranks.push(rank);
    }
    check(ranks.windows(2).all(|w| w[0] < w[1]), || format!("ranks {ranks:?} not increasing"))?;
    let elapsed = start.elapsed();
    within(Duration::from_secs(1), elapsed)?;
    Ok(format!("levels 2..6 split into D^2 < -1 / D^2 = -1, Picard ranks {ranks:?} ({elapsed:.2?})"))
}

fn c3_symmetry() -> Outcome {
    let start = Instant::now();
    let mut orders = Vec::new();
    for i in 1..=6 {
        let fan = tower(i, DEFAULT_TOWER_CAP).map_err(|e| e.to_string())?;
        let g = fan_automorphisms(&fan);
        check(g.len() == 12, || format!("level {i}: {} automorphisms", g.len()))?;
        check(is_group(&g), || format!("level {i}: not closed under composition/inverse"))?;
        orders.push(g.len());
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(5), elapsed)?;
    Ok(format!("orders {orders:?}, each a group ({elapsed:.2?})"))
}

fn surface_identity(fan: &CompleteFan2D) -> Result<(), String> {
    let a: BigInt = neighbor_coefficients(fan).map_err(|e| e.to_string())?.iter().sum();
    let r = fan.len() as i64;
    check(a == BigInt::from(3 * r - 12), || format!("sum a_i = {a} for {r} rays"))
}

fn c4_surface_identity() -> Outcome {
    for i in 0..=6 {
        surface_identity(&tower(i, DEFAULT_TOWER_CAP).map_err(|e| e.to_string())?)?;
    }
    let mut r = rng(4);
    for _ in 0..100 {
        let steps = r.gen_range(0..=20);
        surface_identity(&random_fan(&mut r, steps))?;
    }
    Ok("tower levels 0..6 and 100 random blow-up fans".into())
}

fn c5_affine_space_roots() -> Outcome {
    for n in 1..=3 {
        let sigma = Cone::orthant(n);
        let roots = enumerate_roots(&sigma, 3).map_err(|e| e.to_string())?;
        let mut seen = BTreeSet::new();
        for rho in 0..n {
            // Rays are stored sorted, so ray `rho` is the unit vector e_j.
            let j = to_i64(&sigma.rays()[rho]).iter().position(|&x| x == 1).ok_or("orthant ray is not a unit vector")?;
            let mine: Vec<Vec<i64>> = roots.iter().filter(|e| e.ray_index == rho).map(|e| to_i64(&e.weight)).collect();
            let expected: Vec<Vec<i64>> = {
                let mut v: Vec<Vec<i64>> = box_points(n, 3)
                    .into_iter()
                    .filter(|m| m[j] == -1 && (0..n).all(|k| k == j || m[k] >= 0))
                    .collect();
                v.sort();
                v
            };
            check(mine == expected, || format!("A^{n}, ray {rho}: {mine:?} vs {expected:?}"))?;
            check(mine == brute_roots(&sigma, rho, 3), || format!("A^{n}, ray {rho}: box scan disagrees"))?;
            for m in mine {
                check(seen.insert(m.clone()), || format!("A^{n}: {m:?} appears for two rays"))?;
            }
        }
    }
    Ok("A^1, A^2, A^3 at bound 3 match the closed form and the box scan; sets disjoint".into())
}

fn random_cones(seed: u64, count: usize) -> Vec<Cone> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(1..=3);
            random_cone(&mut r, n, true)
        })
        .collect()
}

fn c6_root_families() -> Outcome {
    for sigma in random_cones(6, 50) {
        let n = sigma.ambient_rank();
        let e0 = find_root(&sigma, 0).map_err(|e| e.to_string())?;
        let family = commuting_root_family(&sigma, &e0).map_err(|e| e.to_string())?;
        check(family.len() == n, || format!("family of {} in rank {n}", family.len()))?;
        let det = family_determinant(&family, n).map_err(|e| e.to_string())?;
        check(!det.is_zero(), || "weights are dependent".into())?;
        let mut reps = Vec::new();
        for e in &family {
            check(is_root(&sigma, e.ray_index, &e.weight).map_err(|e| e.to_string())?, || format!("{} is no root", e.weight))?;
            reps.push(
                ReplicaAutomorphism::root_subgroup(&sigma, e.clone(), BigRational::one()).map_err(|e| e.to_string())?,
            );
        }
        for a in &reps {
            for b in &reps {
                check(replica_commutes(a, b).map_err(|e| e.to_string())?, || "root subgroups do not commute".into())?;
            }
        }
    }
    Ok("50 random cones: n independent roots, pairwise commuting".into())
}

fn c7_dense_orbit() -> Outcome {
    for sigma in random_cones(6, 50) {
        for ray in 0..sigma.rays().len() {
            let e = find_root(&sigma, ray).map_err(|e| e.to_string())?;
            let kernel = root_kernel(&e.weight).map_err(|e| e.to_string())?;
            check(kernel.is_torsion_free(), || format!("ker({}) is disconnected", e.weight))?;
            let cert = du_orbit_certificate(&sigma, &e).map_err(|e| e.to_string())?;
            check(cert.passed(), || format!("certificate failed for {}", e.weight))?;
        }
    }
    Ok("50 random cones: every found root has connected kernel and a passing certificate".into())
}

fn random_invariant(r: &mut impl Rng, gens: &[LatticePoint], n: usize) -> MonomialFunction {
    let mut f = MonomialFunction::zero();
    for _ in 0..r.gen_range(1..=3) {
        let mut m = LatticePoint::zero(n);
        for _ in 0..r.gen_range(0..=4) {
            m = &m + &gens[r.gen_range(0..gens.len())];
        }
        f.add_term(m, BigRational::new(BigInt::from(r.gen_range(-5..=5)), BigInt::from(r.gen_range(1..=4))));
    }
    f
}

fn c8_abelian_replicas() -> Outcome {
    let cones = [Cone::orthant(2), Cone::from_i64_rays(2, &[&[1, 0], &[1, 2]]).map_err(|e| e.to_string())?];
    let mut r = rng(8);
    let mut checked = 0;
    for sigma in &cones {
        for _ in 0..50 {
            let ray = r.gen_range(0..sigma.rays().len());
            let e = find_root(sigma, ray).map_err(|e| e.to_string())?;
            let gens = invariant_subalgebra(sigma, ray).map_err(|e| e.to_string())?.generators();
            let f1 = random_invariant(&mut r, &gens, 2);
            let f2 = random_invariant(&mut r, &gens, 2);
            let mk = |f: MonomialFunction| ReplicaAutomorphism::new(sigma, e.clone(), f).map_err(|e| e.to_string());
            let (r1, r2, sum) = (mk(f1.clone())?, mk(f2.clone())?, mk(&f1 + &f2)?);
            let law = agree_on_generators(sigma, |g| compose_apply(&r1, &r2, g), |g| sum.apply(g)).map_err(|e| e.to_string())?;
            check(law, || format!("exp({f1}∂)∘exp({f2}∂) != exp(({f1} + {f2})∂)"))?;
            check(replica_commutes(&r1, &r2).map_err(|e| e.to_string())?, || "replicas do not commute".into())?;
            checked += 1;
        }
    }
    Ok(format!("{checked} random pairs on A^2 and the A_1 cone"))
}

fn c9_isomorphism() -> Outcome {
    let start = Instant::now();
    let mut r = rng(9);
    for _ in 0..100 {
        let n = r.gen_range(1..=3);
        let sigma = random_cone(&mut r, n, false);
        let g0 = random_unimodular(&mut r, n, 5);
        let tau = image_cone(&g0, &sigma);
        let w = cones_equivalent(&sigma, &tau).map_err(|e| e.to_string())?;
        let g = w.map().ok_or("equivalent pair refuted")?;
        check(verify_witness(g, &sigma, &tau).map_err(|e| e.to_string())?, || "witness does not verify".into())?;
        check(weight_monoids_equal(&sigma, &tau).map_err(|e| e.to_string())? == (sigma == tau), || {
            "weight monoid comparison disagrees with cone equality".into()
        })?;
    }
    let mut refuted = 0;
    while refuted < 100 {
        let n = r.gen_range(1..=3);
        let a = random_cone(&mut r, n, false);
        let b = random_cone(&mut r, n, false);
        if cone_fingerprint(&a).map_err(|e| e.to_string())? == cone_fingerprint(&b).map_err(|e| e.to_string())? {
            continue;
        }
        check(!cones_equivalent(&a, &b).map_err(|e| e.to_string())?.is_equivalent(), || "distinct pair accepted".into())?;
        check(weight_monoids_equal(&a, &b).map_err(|e| e.to_string())? == (a == b), || {
            "weight monoid comparison disagrees with cone equality".into()
        })?;
        refuted += 1;
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(30), elapsed)?;
    Ok(format!("100 equivalent pairs witnessed, 100 distinct pairs refuted ({elapsed:.2?})"))
}

fn c10_span_facet() -> Outcome {
    let mut r = rng(10);
    let mut rays = 0;
    for _ in 0..50 {
        let n = r.gen_range(1..=3);
        let sigma = random_cone(&mut r, n, false);
        for (i, v) in sigma.rays().iter().enumerate() {
            let inv = invariant_subalgebra(&sigma, i).map_err(|e| e.to_string())?;
            let equal = same_subgroup(&generated_group(&inv), &orthogonal_lattice(v), n).map_err(|e| e.to_string())?;
            check(equal, || format!("ray {v}: invariant monoid generates a proper subgroup"))?;
            rays += 1;
        }
    }
    Ok(format!("50 random cones, {rays} rays"))
}

fn c11_quotients() -> Outcome {
    let mut r = rng(11);
    let mut enumerated = 0;
    for _ in 0..50 {
        let n = r.gen_range(1..=3);
        let k = r.gen_range(1..=4);
        let gens: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| r.gen_range(-4..=4)).collect()).collect();
        let points: Vec<LatticePoint> = gens.iter().map(|g| pt(g)).collect();
        let q = quotient_structure(&points, n).map_err(|e| e.to_string())?;
        let (free, factors) = determinantal_quotient(&gens, n);
        let mine: Vec<i64> = q.invariant_factors.iter().map(|d| i64::try_from(d).unwrap()).collect();
        check(q.free_rank == free && mine == factors, || {
            format!("{gens:?}: got ({}, {mine:?}), expected ({free}, {factors:?})", q.free_rank)
        })?;
        if free == 0 {
            let index: i64 = factors.iter().product();
            if index <= 64 {
                // N = largest invariant factor kills the quotient.
                let big_n = factors.last().copied().unwrap_or(1);
                check(torsion_profile(&gens, n, big_n) == expected_torsion_profile(&mine, big_n), || {
                    format!("{gens:?}: coset enumeration disagrees")
                })?;
                enumerated += 1;
            }
        }
    }
    Ok(format!("50 random lists; {enumerated} finite quotients also checked by coset enumeration"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("hexagon reproduction", c1_hexagon),
        ("tower dichotomy", c2_dichotomy),
        ("constant symmetry", c3_symmetry),
        ("surface identity", c4_surface_identity),
        ("roots of affine space", c5_affine_space_roots),
        ("commuting root families", c6_root_families),
        ("dense orbit ingredients", c7_dense_orbit),
        ("abelian replica law", c8_abelian_replicas),
        ("isomorphism decider", c9_isomorphism),
        ("invariants span the ray orthogonal", c10_span_facet),
        ("quotient structure", c11_quotients),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
