use std::collections::BTreeSet;

use horocalc_core::catalog::{quadric_completion, standard_cone, toric};
use horocalc_core::fan::{decolorize, faces, interior_simplices, is_complete, orbits, triangulate, validate_fan};
use horocalc_core::roots::{Family, SimpleType};
use horocalc_core::stringy::{
    check_smooth, closed_form_euler, compute_omega, cone_interior_sum, e_polynomial, euler, lattice_sum,
    series_counts, series_oracle, stringy_e, stringy_euler, weighted_sr_poincare,
};
use horocalc_core::{Cone, NodeSubset, QRat};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rays `(x, y, 1)` over a random lattice polygon; the cone is always Gorenstein.
fn polygon_cone() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::btree_set((-2i64..=2, -2i64..=2), 4..8).prop_filter_map("need a 3-d cone", |pts| {
        let rays: Vec<Vec<i64>> = pts.into_iter().map(|(x, y)| vec![x, y, 1]).collect();
        let c = Cone::new(3, rays);
        if c.dim() != 3 {
            return None;
        }
        let extreme: BTreeSet<usize> = (0..c.rays().len()).collect::<BTreeSet<_>>()
            .difference(&c.non_extreme_rays().into_iter().collect())
            .copied()
            .collect();
        Some(extreme.iter().map(|&k| c.rays()[k].clone()).collect())
    })
}

fn count_box(r: i64, mut f: impl FnMut(&[i64])) {
    for x in -r..=r {
        for y in -r..=r {
            for z in 0..=r {
                f(&[x, y, z]);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn triangulation_tiles_the_interior(rays in polygon_cone()) {
        let c = Cone::new(3, rays);
        let pieces: Vec<Cone> = interior_simplices(&c)
            .into_iter()
            .map(|s| Cone::new(3, s.iter().map(|&k| c.rays()[k].clone()).collect()))
            .collect();
        for s in triangulate(&c) {
            prop_assert_eq!(s.len(), 3);
        }
        let mut bad = 0;
        count_box(6, |n| {
            let inside = c.contains_in_relative_interior(n);
            let hits = pieces.iter().filter(|p| p.contains_in_relative_interior(n)).count();
            if (inside && hits != 1) || (!inside && hits != 0) {
                bad += 1;
            }
        });
        prop_assert_eq!(bad, 0);
    }

    #[test]
    fn interior_sum_independent_of_ray_order(rays in polygon_cone(), shift in 0usize..8) {
        let mut rotated = rays.clone();
        let k = shift % rotated.len();
        rotated.rotate_left(k);
        let omega = vec![rat(0), rat(0), rat(-1)];
        let a = cone_interior_sum(&Cone::new(3, rays), &omega).unwrap();
        let b = cone_interior_sum(&Cone::new(3, rotated), &omega).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn polygon_cone_matches_oracle(rays in polygon_cone()) {
        let n = rays.len();
        let d = toric(3, rays, vec![(0..n).collect()]);
        prop_assert!(validate_fan(&d).is_empty());
        let omega = compute_omega(&d).unwrap();
        let series = series_counts(&lattice_sum(&d, &omega).unwrap(), 6).unwrap();
        prop_assert_eq!(series, series_oracle(&d, 6).unwrap());
    }

    #[test]
    fn simplicial_cone_matches_oracle(
        a in prop::array::uniform2(-3i64..=3),
        b in prop::array::uniform2(-3i64..=3),
    ) {
        prop_assume!(a[0] * b[1] - a[1] * b[0] != 0);
        let prim = |v: [i64; 2]| {
            let g = num_integer::gcd(v[0], v[1]);
            vec![v[0] / g, v[1] / g]
        };
        let d = toric(2, vec![prim(a), prim(b)], vec![vec![0, 1]]);
        let omega = compute_omega(&d).unwrap();
        let series = series_counts(&lattice_sum(&d, &omega).unwrap(), 12).unwrap();
        prop_assert_eq!(series, series_oracle(&d, 12).unwrap());
    }

    #[test]
    fn faces_of_faces_are_faces(rays in polygon_cone()) {
        let n = rays.len();
        let d = toric(3, rays, vec![(0..n).collect()]);
        let top = d.fan().cones().len() - 1;
        let all: BTreeSet<Vec<usize>> = faces(&d, top).into_iter().map(|f| f.0).collect();
        for i in 0..d.fan().cones().len() {
            for (f, _) in faces(&d, i) {
                prop_assert!(all.contains(&f));
            }
        }
        prop_assert_eq!(orbits(&d).len(), all.len());
    }
}

#[test]
fn sr_two_paths_on_completions() {
    let d = quadric_completion();
    let omega = compute_omega(&d).unwrap();
    let sum = lattice_sum(&d, &omega).unwrap();
    assert_eq!(sum, weighted_sr_poincare(&d).unwrap().invert_variable());
}

#[test]
fn decolorize_preserves_completeness_and_cones() {
    let d = quadric_completion();
    let u = decolorize(&d);
    assert_eq!(is_complete(u.fan()), is_complete(d.fan()));
    let rays = |x: &horocalc_core::HorosphericalDatum| -> Vec<Vec<usize>> {
        x.fan().cones().iter().map(|c| c.rays().to_vec()).collect()
    };
    assert_eq!(rays(&u), rays(&d));
    assert!(validate_fan(&u).is_empty());
}

/// Every `(I, F)` on every simple type of rank at most 3.
fn small_simple_data() -> Vec<horocalc_core::HorosphericalDatum> {
    let mut out = Vec::new();
    for t in SimpleType::all_up_to(3) {
        let n = t.rank();
        for code in 0..3usize.pow(n as u32) {
            let (mut i, mut f) = (NodeSubset::new(), NodeSubset::new());
            let mut c = code;
            for node in 1..=n {
                match c % 3 {
                    1 => i.insert(node),
                    2 => f.insert(node),
                    _ => false,
                };
                c /= 3;
            }
            out.push(standard_cone(t.family(), n, &i, &f));
        }
    }
    out
}

#[test]
fn smooth_implies_polynomial() {
    for d in small_simple_data() {
        if check_smooth(&d).holds {
            let e = stringy_e(&d).unwrap();
            assert!(e.as_poly().is_some(), "{e}");
            assert_eq!(e, QRat::from_poly(e_polynomial(&d)));
        }
    }
}

#[test]
fn euler_numbers_match_closed_forms() {
    for d in small_simple_data() {
        let (st, e) = closed_form_euler(&d).expect("standard cones are locally factorial and full rank");
        assert_eq!(stringy_euler(&d).unwrap(), st);
        assert_eq!(euler(&d).unwrap(), e);
    }
}

#[test]
fn standard_representations_are_smooth() {
    for (family, l) in [(Family::A, 1), (Family::A, 4), (Family::C, 3), (Family::C, 5)] {
        let d = horocalc_core::catalog::standard_representation(family, l);
        assert!(check_smooth(&d).holds);
        assert_eq!(stringy_euler(&d).unwrap(), BigRational::from_integer(euler(&d).unwrap()));
    }
}
