#![allow(dead_code)]

use num_bigint::BigInt;
use unilift::classify::apply_unimodular;
use unilift::generators::{delta_family, standard_simplex, type3_cylinder_cone};
use unilift::lifting::sample_interior_points;
use unilift::polytope::{int_point, rat_point};
use unilift::scalar::{int_rat, rat};
use unilift::{IntMat, RatVec, SimplicialPolytope};

pub struct Body {
    pub name: &'static str,
    pub body: SimplicialPolytope,
}

/// Type 3 triangle: one lattice point in the relative interior of each side,
/// no integral vertex.
pub fn type3_triangle() -> SimplicialPolytope {
    SimplicialPolytope::simplex_from_vertices(vec![
        rat_point(&[(-1, 1), (-2, 3)]),
        rat_point(&[(-1, 1), (1, 3)]),
        rat_point(&[(2, 1), (4, 3)]),
    ])
    .unwrap()
}

/// Type 2 triangle: one integral vertex, several points on one side.
pub fn type2_triangle() -> SimplicialPolytope {
    SimplicialPolytope::simplex_from_vertices(vec![
        int_point(&[-2, -2]),
        rat_point(&[(-2, 1), (-1, 2)]),
        int_point(&[1, -2]),
    ])
    .unwrap()
}

pub fn cone() -> SimplicialPolytope {
    type3_cylinder_cone(&type3_triangle(), &int_rat(4)).unwrap()
}

pub fn delta_body() -> SimplicialPolytope {
    delta_family(2, &[rat(1, 2), rat(1, 2), int_rat(1)]).unwrap()
}

pub fn skewed_standard() -> SimplicialPolytope {
    let u = IntMat::from_rows(vec![
        vec![BigInt::from(2), BigInt::from(1)],
        vec![BigInt::from(1), BigInt::from(1)],
    ]);
    apply_unimodular(&standard_simplex(2, 2).unwrap(), &u, &[BigInt::from(-1), BigInt::from(3)]).unwrap()
}

pub fn corpus() -> Vec<Body> {
    vec![
        Body { name: "standard n=2", body: standard_simplex(2, 2).unwrap() },
        Body { name: "standard n=3", body: standard_simplex(3, 3).unwrap() },
        Body { name: "type3 triangle", body: type3_triangle() },
        Body { name: "type2 triangle", body: type2_triangle() },
        Body { name: "delta (1/2,1/2,1)", body: delta_body() },
        Body { name: "type3 cone M=4", body: cone() },
        Body { name: "unimodular image of standard n=2", body: skewed_standard() },
    ]
}

/// Vertices followed by `interior` seeded interior points.
pub fn probes(p: &SimplicialPolytope, interior: usize, seed: u64) -> Vec<RatVec> {
    let mut out = p.vertices().to_vec();
    out.extend(sample_interior_points(p, interior, seed));
    out
}
