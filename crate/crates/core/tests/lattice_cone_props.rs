mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use toric_aut::lattice::{quotient_structure, smith_normal_form, subgroup_basis};
use toric_aut::monoid::{
    generated_group, hilbert_basis, AffineMonoid, invariant_subalgebra, monoid_membership, orthogonal_lattice, same_subgroup,
};
use toric_aut::roots::enumerate_roots;
use toric_aut::{Cone, IntMatrix, LatticePoint};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn as_points(rows: &[Vec<i64>]) -> Vec<LatticePoint> {
    rows.iter().map(|r| pt(r)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_recomposes(rows in small_matrix()) {
        let a = IntMatrix::from_points(&as_points(&rows), rows[0].len()).unwrap();
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.matrix().mul(&s.d).mul(s.v.matrix()), a);
        prop_assert!(s.u.det().abs().is_one());
        prop_assert!(s.v.det().abs().is_one());
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|d| d.is_positive()));
        prop_assert!(diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn quotient_matches_determinantal_divisors(rows in small_matrix()) {
        let n = rows[0].len();
        let q = quotient_structure(&as_points(&rows), n).unwrap();
        let (free, factors) = determinantal_quotient(&rows, n);
        prop_assert_eq!(q.free_rank, free);
        prop_assert_eq!(q.invariant_factors, factors.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn quotient_is_invariant_under_coordinate_change(rows in small_matrix(), seed in any::<u64>()) {
        let n = rows[0].len();
        let g = random_unimodular(&mut rng(seed), n, 5);
        let gens = as_points(&rows);
        let moved: Vec<LatticePoint> = gens.iter().map(|p| g.apply(p)).collect();
        prop_assert_eq!(quotient_structure(&gens, n).unwrap(), quotient_structure(&moved, n).unwrap());
    }

    #[test]
    fn subgroup_basis_generates_the_same_group(rows in small_matrix()) {
        let n = rows[0].len();
        let basis = subgroup_basis(&as_points(&rows), n).unwrap();
        let basis_rows: Vec<Vec<i64>> = basis.iter().map(to_i64).collect();
        prop_assert_eq!(determinantal_quotient(&basis_rows, n), determinantal_quotient(&rows, n));
        // Adding any input point to the basis changes nothing.
        for p in as_points(&rows) {
            let mut more = basis.clone();
            more.push(p);
            prop_assert_eq!(quotient_structure(&more, n).unwrap(), quotient_structure(&basis, n).unwrap());
        }
    }

    #[test]
    fn biduality(seed in any::<u64>(), n in 1usize..=3) {
        let sigma = random_cone(&mut rng(seed), n, false);
        prop_assert_eq!(sigma.dual().dual(), sigma);
    }

    #[test]
    fn rays_are_order_and_repetition_independent(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let sigma = random_cone(&mut r, n, false);
        let mut gens = sigma.generators();
        gens.extend(sigma.rays().iter().map(|v| v.scale(&BigInt::from(2))));
        gens.reverse();
        let again = Cone::from_generators(n, &gens).unwrap();
        prop_assert_eq!(&again, &sigma);
        prop_assert_eq!(Cone::from_generators(n, &sigma.extremal_rays()).unwrap(), sigma);
    }

    #[test]
    fn rays_are_tight_exactly_on_their_facets(seed in any::<u64>(), n in 2usize..=3) {
        let sigma = random_cone(&mut rng(seed), n, true);
        let sets = sigma.facet_ray_sets();
        for (i, v) in sigma.rays().iter().enumerate() {
            for (u, set) in sigma.facet_normals().iter().zip(&sets) {
                let p = u.dot(v);
                prop_assert!(!p.is_negative());
                prop_assert_eq!(p.is_zero(), set.contains(&i));
            }
        }
    }

    #[test]
    fn facet_membership_agrees_with_ray_combinations(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let sigma = random_cone(&mut r, n, true);
        let rays: Vec<Vec<i64>> = sigma.rays().iter().map(to_i64).collect();
        let points = box_points(n, if n == 2 { 7 } else { 3 });
        prop_assert!(points.len() >= 200);
        for x in points.iter().take(400) {
            let by_facets = sigma.contains(&pt(x));
            prop_assert_eq!(by_facets, in_ray_cone(&rays, x), "point {:?}", x);
        }
    }

    #[test]
    fn hilbert_basis_matches_enumeration(seed in any::<u64>(), n in 2usize..=3) {
        let sigma = random_cone(&mut rng(seed), n, true);
        let dual = sigma.dual();
        let basis: Vec<Vec<i64>> = hilbert_basis(&dual).unwrap().iter().map(to_i64).collect();
        let mut sorted = basis.clone();
        sorted.sort();
        prop_assert_eq!(sorted, brute_hilbert_basis(&dual));
    }

    #[test]
    fn hilbert_basis_generates_and_is_minimal(seed in any::<u64>(), n in 2usize..=3) {
        let sigma = random_cone(&mut rng(seed), n, true);
        let dual = sigma.dual();
        let monoid = AffineMonoid::of_cone(&dual);
        let basis = monoid.hilbert_basis().to_vec();
        let normals: Vec<Vec<i64>> = dual.facet_normals().iter().map(to_i64).collect();
        for x in box_points(n, if n == 2 { 8 } else { 4 }) {
            let p = pt(&x);
            let found = monoid.decompose(&p).unwrap();
            prop_assert_eq!(found.is_some(), satisfies(&normals, &[], &x));
            if let Some(d) = found {
                prop_assert_eq!(d.sum(n), p);
                prop_assert!(d.terms.iter().all(|(h, k)| k.is_positive() && basis.contains(h)));
            }
        }
        // Dropping any element loses it from the generated monoid.
        for (i, h) in basis.iter().enumerate() {
            let others: Vec<LatticePoint> =
                basis.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, b)| b.clone()).collect();
            prop_assert!(!generated_by(h, &others, &dual));
        }
        // The one-shot entry point agrees with the stored basis.
        let probe = basis.iter().fold(LatticePoint::zero(n), |acc, h| &acc + h);
        prop_assert_eq!(monoid_membership(&probe, &dual).unwrap(), monoid.decompose(&probe).unwrap());
    }

    #[test]
    fn hilbert_basis_is_equivariant(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let sigma = random_cone(&mut r, n, true);
        let g = random_unimodular(&mut r, n, 4);
        let c = sigma.dual();
        let gc = image_cone(&g, &c);
        let mut moved: Vec<LatticePoint> = hilbert_basis(&c).unwrap().iter().map(|h| g.apply(h)).collect();
        moved.sort();
        let mut direct = hilbert_basis(&gc).unwrap();
        direct.sort();
        prop_assert_eq!(moved, direct);
    }

    #[test]
    fn invariant_monoid_generates_ray_orthogonal(seed in any::<u64>(), n in 2usize..=3) {
        let sigma = random_cone(&mut rng(seed), n, true);
        for (i, v) in sigma.rays().iter().enumerate() {
            let inv = invariant_subalgebra(&sigma, i).unwrap();
            prop_assert!(same_subgroup(&generated_group(&inv), &orthogonal_lattice(v), n).unwrap());
            let q = quotient_structure(&inv.generators(), n).unwrap();
            prop_assert_eq!(q.free_rank, 1);
            prop_assert!(q.is_torsion_free());
        }
    }

    #[test]
    fn torus_iff_no_roots(seed in any::<u64>(), n in 1usize..=3, zero in any::<bool>()) {
        let sigma = if zero { Cone::zero(n) } else { random_cone(&mut rng(seed), n, false) };
        prop_assert_eq!(sigma.is_zero(), enumerate_roots(&sigma, 3).unwrap().is_empty());
    }
}

/// Carathéodory: `x` lies in the cone of full rank iff it is a nonnegative
/// combination of some `n` linearly independent rays; solved by Cramer.
fn in_ray_cone(rays: &[Vec<i64>], x: &[i64]) -> bool {
    let n = x.len();
    let det = |cols: &[&Vec<i64>]| -> i64 {
        let m: Vec<Vec<i64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        if n == 2 {
            m[0][0] * m[1][1] - m[0][1] * m[1][0]
        } else {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
    };
    let x = x.to_vec();
    let idx: Vec<usize> = (0..rays.len()).collect();
    let choose = |k: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|s: Vec<usize>| {
                    let start = s.last().map_or(0, |&l| l + 1);
                    idx[start..].iter().map(move |&i| {
                        let mut t = s.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        out
    };
    choose(n).into_iter().any(|s| {
        let cols: Vec<&Vec<i64>> = s.iter().map(|&i| &rays[i]).collect();
        let d = det(&cols);
        d != 0
            && (0..n).all(|j| {
                let mut replaced = cols.clone();
                replaced[j] = &x;
                let dj = det(&replaced);
                dj == 0 || (dj > 0) == (d > 0)
            })
    })
}

/// Whether `h` is a nonnegative integer combination of `gens` by search
/// over multiplicities bounded by the cone's facet inequalities.
fn generated_by(h: &LatticePoint, gens: &[LatticePoint], cone: &Cone) -> bool {
    if h.is_zero() {
        return true;
    }
    let Some((g, rest)) = gens.split_first() else { return false };
    let mut k = BigInt::zero();
    loop {
        let left = h - &g.scale(&k);
        if !cone.contains(&left) {
            return false;
        }
        if generated_by(&left, rest, cone) {
            return true;
        }
        k += 1;
    }
}
