mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use unilift::classify::{apply_unimodular, find_2partition, slice_simplex, theorem3_verdict};
use unilift::lifting::{
    build_region, classify_body, difference_measure, AlignedBox, is_torus_covered, per_facet_volumes, torus_volume, torus_volume_exact,
    BodyClass, UniqueLifting,
};
use unilift::enumerate::enumeration_cap;
use unilift::linalg::sub;
use unilift::polytope::convex_combination;
use unilift::scalar::{big_rat, int_rat, rat};
use unilift::{IntMat, Rat, RatMat, RatVec, SimplicialPolytope, TermOrder};

use common::corpus;

fn simplex_volume(p: &SimplicialPolytope) -> Rat {
    let v = p.vertices();
    let rows: Vec<RatVec> = v[1..].iter().map(|x| sub(x, &v[0])).collect();
    let fact: i64 = (1..=p.dim() as i64).product();
    RatMat::from_rows(rows).det().abs() / int_rat(fact)
}

fn point_from_weights(p: &SimplicialPolytope, w: &[u8]) -> RatVec {
    let total: i64 = w.iter().map(|&x| x as i64).sum();
    let weights: RatVec = w.iter().map(|&x| rat(x as i64, total)).collect();
    convex_combination(p.vertices(), &weights)
}

fn weights(k: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..6, k).prop_filter("nonzero", |w| w.iter().any(|&x| x > 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pieces_fit_inside_the_body(idx in 0usize..7, w in weights(4)) {
        let b = &corpus()[idx].body;
        let w: Vec<u8> = w[..b.vertices().len()].iter().map(|&x| x.max(1)).collect();
        let f = point_from_weights(b, &w);
        let region = build_region(b, &f).unwrap();
        // Pieces of different facets lie in different cones from f, so the
        // per-facet unions are interior-disjoint subsets of B.
        let mut unions = Rat::zero();
        for fr in &region.regions {
            let boxes: Vec<AlignedBox> = fr.full_boxes().map(|bx| AlignedBox::from_lambda(&bx.lambda)).collect();
            unions += &fr.abs_det * difference_measure(&boxes, &[], enumeration_cap()).unwrap();
        }
        prop_assert!(unions <= simplex_volume(b));
        prop_assert!(unions <= region.total_box_volume());
        let vol = torus_volume(&region, TermOrder::Lex).unwrap();
        prop_assert!(!vol.is_negative() && vol <= Rat::one());
        prop_assert!(vol <= region.total_box_volume());
        let per = per_facet_volumes(&region, TermOrder::Lex).unwrap();
        prop_assert_eq!(per.iter().fold(Rat::zero(), |a, x| a + x), vol);
    }

    #[test]
    fn boundary_f_keeps_volume(idx in 0usize..7, w in weights(4)) {
        // f on the boundary: the volume is still the value of the affine function.
        let b = &corpus()[idx].body;
        let mut w: Vec<u8> = w[..b.vertices().len()].to_vec();
        w[0] = 0;
        if w.iter().all(|&x| x == 0) { w[1] = 1; }
        let f = point_from_weights(b, &w);
        let fit = unilift::lifting::affine_volume_function(b).unwrap();
        let region = build_region(b, &f).unwrap();
        prop_assert_eq!(torus_volume(&region, TermOrder::Lex).unwrap(), fit.eval(&f));
    }

    #[test]
    fn unimodular_maps_preserve_volume(idx in 0usize..4, a in -2i64..3, c in -2i64..3, s0 in -3i64..4, s1 in -3i64..4, w in weights(3)) {
        let b = &corpus()[[0, 2, 3, 6][idx]].body;
        let u = IntMat::from_rows(vec![
            vec![BigInt::from(1 + a * c), BigInt::from(a)],
            vec![BigInt::from(c), BigInt::from(1)],
        ]);
        let shift = [BigInt::from(s0), BigInt::from(s1)];
        let image = apply_unimodular(b, &u, &shift).unwrap();
        let f = point_from_weights(b, &w.iter().map(|&x| x.max(1)).collect::<Vec<_>>());
        let uf: RatVec = (0..2)
            .map(|r| (0..2).map(|k| big_rat(&u[(r, k)]) * &f[k]).sum::<Rat>() + big_rat(&shift[r]))
            .collect();
        let before = torus_volume(&build_region(b, &f).unwrap(), TermOrder::Lex).unwrap();
        let after = torus_volume(&build_region(&image, &uf).unwrap(), TermOrder::Lex).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn lifting_agrees_with_gauge_on_the_region(w in weights(3), m0 in 0i64..5, m1 in 0i64..5) {
        let b = &corpus()[6].body;
        let f = point_from_weights(b, &w.iter().map(|&x| x.max(1)).collect::<Vec<_>>());
        let lift = UniqueLifting::new(b, &f).unwrap();
        let region = lift.region();
        for fr in &region.regions {
            for bx in fr.full_boxes() {
                let mu: RatVec = bx.lambda.iter().zip([m0, m1]).map(|(l, k)| l * rat(k, 4)).collect();
                let x = fr.point_at(&f, &mu);
                let r: RatVec = sub(&x, &f);
                prop_assert_eq!(lift.value(&r).unwrap(), lift.gauge(&r));
            }
        }
    }
}

#[test]
fn verdict_matches_covering() {
    for b in corpus() {
        let f = b.body.vertex_centroid();
        let region = build_region(&b.body, &f).unwrap();
        let v = torus_volume_exact(&region).unwrap();
        assert_eq!(v.unique_lifting, v.torus_volume.is_one(), "{}", b.name);
        match &v.witnesses {
            None => assert!(v.unique_lifting, "{}", b.name),
            Some(ws) => {
                for x in ws {
                    assert!(!is_torus_covered(&region, x).unwrap(), "{}", b.name);
                }
            }
        }
    }
}

#[test]
fn dichotomy_labels() {
    let expected = [
        BodyClass::UniqueForAllF,
        BodyClass::UniqueForAllF,
        BodyClass::MultipleForAllF,
        BodyClass::UniqueForAllF,
        BodyClass::UniqueForAllF,
        BodyClass::MultipleForAllF,
        BodyClass::UniqueForAllF,
    ];
    for (b, e) in corpus().iter().zip(expected) {
        assert_eq!(classify_body(&b.body).unwrap(), e, "{}", b.name);
    }
}

#[test]
fn cylinder_property_for_other_blowups() {
    let t = common::type3_triangle();
    for m in [int_rat(2), int_rat(3), rat(5, 2)] {
        let Ok(cone) = unilift::generators::type3_cylinder_cone(&t, &m) else { continue };
        for (i, tv) in t.vertices().iter().enumerate() {
            assert_eq!(
                unilift::lifting::volume_at(&cone, &cone.vertices()[i + 1]).unwrap(),
                unilift::lifting::volume_at(&t, tv).unwrap()
            );
        }
    }
}

/// Lattice points of `B` on the upper partition hyperplane are exactly the
/// lattice points of the slice.
#[test]
fn slice_keeps_lattice_points() {
    for body in [common::delta_body(), common::cone()] {
        let part = find_2partition(&body).unwrap().unwrap();
        let slice = slice_simplex(&body, &part).unwrap();
        let level = big_rat(&(&part.d + BigInt::one()));
        let c: RatVec = part.c.iter().map(big_rat).collect();
        let mut ambient: Vec<RatVec> = body
            .boundary_lattice_points()
            .unwrap()
            .into_iter()
            .map(|p| p.iter().map(big_rat).collect::<RatVec>())
            .filter(|p: &RatVec| unilift::linalg::dot(&c, p) == level)
            .map(|p| {
                let img = slice.map.map(big_rat).mul_vec(&p);
                img[1..].to_vec()
            })
            .collect();
        let mut inside: Vec<RatVec> = slice
            .simplex
            .boundary_lattice_points()
            .unwrap()
            .into_iter()
            .map(|p| p.iter().map(big_rat).collect())
            .collect();
        ambient.sort();
        inside.sort();
        assert_eq!(ambient, inside);
        assert_eq!(slice.simplex.interior_lattice_point().unwrap(), None);
        let v = theorem3_verdict(&body).unwrap();
        assert!(v.cross_check);
    }
}
