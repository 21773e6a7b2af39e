//! Structural tests that predict the unique-lifting verdict without computing
//! volumes: unimodular equivalence to a dilated standard simplex, the
//! symmetric body behind the volume bound, two-partitions and slices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_lattice_points, Halfspace, IntBox};
use crate::error::{Error, Result};
use crate::lattice::unimodular_completion;
use crate::lifting::{build_region, classify_body, BodyClass};
use crate::polytope::SimplicialPolytope;
use crate::scalar::{big_rat, int_rat, is_integral};
use crate::{IntMat, IntVec, Rat, RatVec};

/// `x -> U x + b` maps `conv{0, m e^1, ..., m e^n}` onto the target; standard
/// vertex `j` (with `0` the origin) lands on target vertex `permutation[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodEquiv {
    pub u: IntMat,
    pub b: IntVec,
    pub permutation: Vec<usize>,
}

impl UnimodEquiv {
    /// Images of the standard simplex's vertices, in standard order.
    pub fn image_of_standard(&self, m: i64) -> Vec<RatVec> {
        let n = self.b.len();
        let b: RatVec = self.b.iter().map(big_rat).collect();
        let mut out = vec![b.clone()];
        for j in 0..n {
            out.push((0..n).map(|r| big_rat(&self.u[(r, j)]) * int_rat(m) + &b[r]).collect());
        }
        out
    }
}

/// Lattice hyperplanes `c.x = d` (supporting a facet) and `c.x = d + 1`
/// holding every boundary lattice point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPartition {
    pub c: IntVec,
    pub d: BigInt,
    pub facet_on_h1: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Prediction {
    Unique,
    Multiple,
}

impl Prediction {
    fn agrees(self, class: BodyClass) -> bool {
        matches!(
            (self, class),
            (Prediction::Unique, BodyClass::UniqueForAllF) | (Prediction::Multiple, BodyClass::MultipleForAllF)
        )
    }
}

/// Searches base vertices `v0` with every `(v^j - v0) / m` integral and the
/// resulting column matrix unimodular. Column order only flips the sign of
/// the determinant, so the first base vertex that works gives a witness.
pub fn equiv_standard_simplex(simplex: &SimplicialPolytope, m: i64) -> Option<UnimodEquiv> {
    let n = simplex.dim();
    let verts = simplex.vertices();
    if verts.len() != n + 1 || m <= 0 {
        return None;
    }
    let scale = int_rat(m);
    for base in 0..=n {
        let v0 = &verts[base];
        if !is_integral(v0) {
            continue;
        }
        let others: Vec<usize> = (0..=n).filter(|&j| j != base).collect();
        let cols: Option<Vec<IntVec>> = others
            .iter()
            .map(|&j| {
                let col: RatVec = verts[j].iter().zip(v0).map(|(a, b)| (a - b) / &scale).collect();
                is_integral(&col).then(|| col.iter().map(|x| x.to_integer()).collect())
            })
            .collect();
        let Some(cols) = cols else { continue };
        let u = IntMat::from_columns(&cols);
        if u.det().abs().is_one() {
            let mut permutation = vec![base];
            permutation.extend(others);
            return Some(UnimodEquiv { u, b: v0.iter().map(|x| x.to_integer()).collect(), permutation });
        }
    }
    None
}

fn require_maximal_simplex(p: &SimplicialPolytope) -> Result<crate::MaximalityReport> {
    if !p.is_simplex() {
        return Err(Error::HypothesisViolated("body is not a simplex".into()));
    }
    let report = p.maximality_report()?;
    if !report.maximal {
        return Err(Error::HypothesisViolated("body is not maximal lattice-free".into()));
    }
    Ok(report)
}

/// Every facet has exactly one lattice point in its relative interior.
pub fn one_point_per_facet(p: &SimplicialPolytope) -> Result<bool> {
    let report = require_maximal_simplex(p)?;
    Ok(report.relative_interior_counts().iter().all(|&c| c == 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem2Verdict {
    pub predicted: Prediction,
    pub witness: Option<UnimodEquiv>,
    pub volume_class: BodyClass,
    pub cross_check: bool,
}

/// For a one-point-per-facet simplex: unique iff it is a unimodular image of
/// `conv{0, n e^1, ..., n e^n}`; cross-checked against the volume verdict.
pub fn theorem2_verdict(simplex: &SimplicialPolytope) -> Result<Theorem2Verdict> {
    if !one_point_per_facet(simplex)? {
        return Err(Error::HypothesisViolated("some facet does not have exactly one relative-interior lattice point".into()));
    }
    let witness = equiv_standard_simplex(simplex, simplex.dim() as i64);
    let predicted = if witness.is_some() { Prediction::Unique } else { Prediction::Multiple };
    let volume_class = classify_body(simplex)?;
    Ok(Theorem2Verdict { predicted, witness, volume_class, cross_check: predicted.agrees(volume_class) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricBodyReport {
    pub base_vertex: usize,
    /// Translation by `-y^0` applied before building `S`.
    pub shift: IntVec,
    pub normals: IntMat,
    pub bounds: Vec<Rat>,
    pub vol_s: Rat,
    pub vol_r0: Rat,
    pub relation_holds: bool,
    pub lattice_free_interior: bool,
    pub minkowski_bound: bool,
}

/// Builds `S = {x : -b_i <= c^i . x <= b_i}` over the facets through the base
/// vertex, after translating the opposite facet's lattice point `y^0` to the
/// origin; `b_i = c^i . y^i` for the lattice point `y^i` of facet `i`.
pub fn symmetric_body_check(simplex: &SimplicialPolytope, base_vertex: usize) -> Result<SymmetricBodyReport> {
    if !one_point_per_facet(simplex)? {
        return Err(Error::HypothesisViolated("some facet does not have exactly one relative-interior lattice point".into()));
    }
    let n = simplex.dim();
    if base_vertex > n {
        return Err(Error::HypothesisViolated(format!("vertex {base_vertex} does not exist")));
    }
    let opposite = simplex.facet_opposite(base_vertex).expect("simplex");
    let point_of = |i: usize| -> Result<IntVec> {
        Ok(simplex.facet_lattice_points(i)?.relative_interior_points.remove(0))
    };
    let y0 = point_of(opposite)?;
    let through: Vec<usize> = (0..=n).filter(|&i| i != opposite).collect();
    let mut rows = Vec::with_capacity(n);
    let mut bounds = Vec::with_capacity(n);
    for &i in &through {
        let facet = &simplex.facets()[i];
        let yi = point_of(i)?;
        let shifted: IntVec = yi.iter().zip(&y0).map(|(a, b)| a - b).collect();
        let b: BigInt = facet.normal.iter().zip(&shifted).map(|(c, x)| c * x).sum();
        rows.push(facet.normal.clone());
        bounds.push(big_rat(&b));
    }
    if bounds.iter().any(|b| !b.is_positive()) {
        return Err(Error::HypothesisViolated("the origin is not inside the symmetric body".into()));
    }
    let normals = IntMat::from_rows(rows);
    let absdet = big_rat(&normals.det().abs());
    if absdet.is_zero() {
        return Err(Error::Degenerate);
    }
    let vol_s = bounds.iter().map(|b| b * int_rat(2)).product::<Rat>() / &absdet;

    let region = build_region(simplex, &simplex.vertices()[base_vertex])?;
    let r0 = &region.regions[opposite];
    let y0_box = r0.boxes.iter().find(|b| b.point == y0).expect("lattice point of the opposite facet");
    let vol_r0 = r0.box_volume(y0_box);
    let two_n = int_rat(1 << n);
    let relation_holds = vol_s == &two_n * &vol_r0;

    // Interior lattice points of S: strict inequalities on both sides.
    let mut ineqs = Vec::with_capacity(2 * n);
    for (c, b) in rows_of(&normals).into_iter().zip(&bounds) {
        let neg: IntVec = c.iter().map(|x| -x).collect();
        ineqs.push(Halfspace::strict(c, b));
        ineqs.push(Halfspace::strict(neg, b));
    }
    let inv = normals.map(big_rat).inverse()?;
    let corners: Vec<RatVec> = (0..1u32 << n)
        .map(|mask| {
            let rhs: RatVec =
                (0..n).map(|j| if mask & (1 << j) != 0 { bounds[j].clone() } else { -bounds[j].clone() }).collect();
            inv.mul_vec(&rhs)
        })
        .collect();
    let interior = enumerate_lattice_points(&ineqs, &IntBox::around(&corners)?)?;
    let lattice_free_interior = interior.len() == 1 && interior[0].iter().all(Zero::is_zero);
    Ok(SymmetricBodyReport {
        base_vertex,
        shift: y0.iter().map(|x| -x).collect(),
        normals,
        bounds,
        minkowski_bound: vol_s <= two_n,
        vol_s,
        vol_r0,
        relation_holds,
        lattice_free_interior,
    })
}

fn rows_of(m: &IntMat) -> Vec<IntVec> {
    m.row_vecs()
}

/// First facet normal (in facet order) for which the boundary lattice points
/// split over two adjacent lattice hyperplanes, the lower one on the facet.
pub fn find_2partition(p: &SimplicialPolytope) -> Result<Option<TwoPartition>> {
    let points = p.boundary_lattice_points()?;
    for (i, facet) in p.facets().iter().enumerate() {
        if !facet.offset.is_integer() {
            continue;
        }
        let c: IntVec = facet.normal.iter().map(|x| -x).collect();
        let d = -facet.offset.to_integer();
        let d1 = &d + 1;
        let values: Vec<BigInt> = points.iter().map(|q| q.iter().zip(&c).map(|(a, b)| a * b).sum()).collect();
        if values.iter().all(|v| v == &d || v == &d1) && values.contains(&d) && values.contains(&d1) {
            return Ok(Some(TwoPartition { c, d, facet_on_h1: i }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    /// The slice in the coordinates of `Z^{n-1}` induced by `map`.
    pub simplex: SimplicialPolytope,
    /// Unimodular map whose first row is `c`; sliced coordinates are rows `1..`.
    pub map: IntMat,
    /// The slice's vertices in ambient coordinates.
    pub ambient_vertices: Vec<RatVec>,
}

/// Unimodular matrix with first row `c`; a permutation when `c` is a signed
/// unit vector.
fn completion(c: &[BigInt]) -> Result<IntMat> {
    let n = c.len();
    let units: Vec<usize> = (0..n).filter(|&k| !c[k].is_zero()).collect();
    if units.len() == 1 && c[units[0]].abs().is_one() {
        let k = units[0];
        let mut rows = vec![c.to_vec()];
        for j in (0..n).filter(|&j| j != k) {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            rows.push(e);
        }
        return Ok(IntMat::from_rows(rows));
    }
    unimodular_completion(c)
}

/// `simplex ∩ {c.x = d + 1}` as a simplex in one dimension less.
pub fn slice_simplex(simplex: &SimplicialPolytope, part: &TwoPartition) -> Result<Slice> {
    let n = simplex.dim();
    let level = big_rat(&(&part.d + 1));
    let cr: RatVec = part.c.iter().map(big_rat).collect();
    let value = |x: &RatVec| -> Rat { x.iter().zip(&cr).map(|(a, b)| a * b).sum() };
    let verts = simplex.vertices();
    let mut pts: Vec<RatVec> = Vec::new();
    for (a, va) in verts.iter().enumerate() {
        let fa = value(va) - &level;
        if fa.is_zero() {
            pts.push(va.clone());
        }
        for vb in &verts[a + 1..] {
            let fb = value(vb) - &level;
            if (fa.is_positive() && fb.is_negative()) || (fa.is_negative() && fb.is_positive()) {
                let t = &fa / (&fa - &fb);
                pts.push(va.iter().zip(vb).map(|(x, y)| x + (y - x) * &t).collect());
            }
        }
    }
    pts.sort();
    pts.dedup();
    if pts.len() != n {
        return Err(Error::SliceNotSimplex(format!("the hyperplane meets the simplex in {} vertices, expected {n}", pts.len())));
    }
    let map = completion(&part.c)?;
    let mapped: Vec<RatVec> = pts
        .iter()
        .map(|x| {
            let y = map.map(big_rat).mul_vec(x);
            y[1..].to_vec()
        })
        .collect();
    let sliced = SimplicialPolytope::simplex_from_vertices(mapped)
        .map_err(|e| Error::SliceNotSimplex(e.to_string()))?;
    Ok(Slice { simplex: sliced, map, ambient_vertices: pts })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem3Verdict {
    pub partition: TwoPartition,
    pub slice: Slice,
    pub predicted: Prediction,
    pub witness: Option<UnimodEquiv>,
    pub volume_class: BodyClass,
    pub cross_check: bool,
}

/// For a two-partitionable simplex whose only facet with several
/// relative-interior lattice points is the one on `H1`: unique iff the slice
/// on `H2` is a unimodular image of the dilated standard simplex.
pub fn theorem3_verdict(simplex: &SimplicialPolytope) -> Result<Theorem3Verdict> {
    let report = require_maximal_simplex(simplex)?;
    let partition = find_2partition(simplex)?
        .ok_or_else(|| Error::HypothesisViolated("body is not 2-partitionable by a facet normal".into()))?;
    for (i, count) in report.relative_interior_counts().into_iter().enumerate() {
        if i != partition.facet_on_h1 && count > 1 {
            return Err(Error::HypothesisViolated(format!(
                "facet {i} off H1 has {count} relative-interior lattice points"
            )));
        }
    }
    let slice = slice_simplex(simplex, &partition)?;
    if !slice.simplex.maximality_report()?.maximal {
        return Err(Error::HypothesisViolated("slice on H2 is not maximal lattice-free".into()));
    }
    let witness = equiv_standard_simplex(&slice.simplex, slice.simplex.dim() as i64);
    let predicted = if witness.is_some() { Prediction::Unique } else { Prediction::Multiple };
    let volume_class = classify_body(simplex)?;
    Ok(Theorem3Verdict {
        partition,
        slice,
        predicted,
        witness,
        volume_class,
        cross_check: predicted.agrees(volume_class),
    })
}

/// Affine image `U x + b` of a polytope under an integer map.
pub fn apply_unimodular(p: &SimplicialPolytope, u: &IntMat, b: &[BigInt]) -> Result<SimplicialPolytope> {
    let br: RatVec = b.iter().map(big_rat).collect();
    p.map_affine(&u.map(big_rat), &br)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{int_point, rat_point};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn simplex(pts: &[&[i64]]) -> SimplicialPolytope {
        SimplicialPolytope::simplex_from_vertices(pts.iter().map(|p| int_point(p)).collect()).unwrap()
    }

    fn iv(xs: &[i64]) -> IntVec {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn equivalence_examples() {
        let w = equiv_standard_simplex(&simplex(&[&[0, 0], &[2, 0], &[0, 2]]), 2).unwrap();
        assert_eq!(w.u, IntMat::identity(2));
        assert_eq!(w.b, iv(&[0, 0]));
        let w = equiv_standard_simplex(&simplex(&[&[1, 1], &[3, 1], &[1, 3]]), 2).unwrap();
        assert_eq!(w.b, iv(&[1, 1]));
        assert!(equiv_standard_simplex(&simplex(&[&[0, 0], &[2, 0], &[1, 2]]), 2).is_none());
    }

    #[test]
    fn witnesses_map_forward() {
        let s = simplex(&[&[1, -2], &[3, 0], &[3, -2]]);
        let w = equiv_standard_simplex(&s, 2).unwrap();
        let image = w.image_of_standard(2);
        for (j, v) in image.iter().enumerate() {
            assert_eq!(v, &s.vertices()[w.permutation[j]]);
        }
        assert!(w.u.det().abs().is_one());
    }

    #[test]
    fn one_point_examples() {
        assert!(one_point_per_facet(&simplex(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap());
        assert!(matches!(
            one_point_per_facet(&simplex(&[&[0, 0], &[3, 0], &[0, 3]])),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn one_point_verdict_on_standard_simplices() {
        let v = theorem2_verdict(&simplex(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap();
        assert_eq!(v.predicted, Prediction::Unique);
        assert!(v.cross_check);
        let v = theorem2_verdict(&simplex(&[&[0, 0, 0], &[3, 0, 0], &[0, 3, 0], &[0, 0, 3]])).unwrap();
        assert_eq!(v.predicted, Prediction::Unique);
        assert!(v.cross_check);
    }

    #[test]
    fn symmetric_body_of_standard_triangle() {
        let s = simplex(&[&[0, 0], &[2, 0], &[0, 2]]);
        let r = symmetric_body_check(&s, 0).unwrap();
        assert_eq!(r.vol_s, int_rat(4));
        assert_eq!(r.vol_r0, int_rat(1));
        assert!(r.relation_holds && r.lattice_free_interior && r.minkowski_bound);
        let s3 = simplex(&[&[0, 0, 0], &[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]);
        let r = symmetric_body_check(&s3, 0).unwrap();
        assert_eq!(r.vol_s, int_rat(8));
        assert!(r.relation_holds && r.lattice_free_interior);
    }

    #[test]
    fn two_partition_of_standard_triangle_is_none() {
        assert_eq!(find_2partition(&simplex(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap(), None);
    }

    #[test]
    fn unit_normal_slice_is_a_coordinate_drop() {
        // apex above the standard triangle, base at height -1
        let p = SimplicialPolytope::simplex_from_vertices(vec![
            rat_point(&[(-1, 2), (-1, 2), (-1, 1)]),
            rat_point(&[(7, 2), (-1, 2), (-1, 1)]),
            rat_point(&[(-1, 2), (7, 2), (-1, 1)]),
            rat_point(&[(1, 2), (1, 2), (1, 1)]),
        ])
        .unwrap();
        let part = TwoPartition { c: iv(&[0, 0, 1]), d: BigInt::from(-1), facet_on_h1: 0 };
        let s = slice_simplex(&p, &part).unwrap();
        assert_eq!(s.map.row(0), &iv(&[0, 0, 1])[..]);
        let mut got: Vec<RatVec> = s.simplex.vertices().to_vec();
        got.sort();
        assert_eq!(got, vec![int_point(&[0, 0]), int_point(&[0, 2]), int_point(&[2, 0])]);
    }

    fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMat {
        let mut m = IntMat::identity(n);
        for _ in 0..6 {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let k = rng.gen_range(-2i64..=2);
            let mut e = IntMat::identity(n);
            e[(i, j)] = BigInt::from(k);
            m = e.mul(&m);
        }
        if rng.gen_bool(0.5) {
            m.swap_rows(0, n - 1);
        }
        m
    }

    #[test]
    fn equivalence_is_unimodular_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let bodies = [
            simplex(&[&[0, 0], &[2, 0], &[0, 2]]),
            simplex(&[&[0, 0], &[2, 0], &[1, 2]]),
            SimplicialPolytope::simplex_from_vertices(vec![
                rat_point(&[(4, 3), (-2, 3)]),
                rat_point(&[(1, 3), (4, 3)]),
                rat_point(&[(-2, 3), (1, 3)]),
            ])
            .unwrap(),
        ];
        for trial in 0..50 {
            let s = &bodies[trial % bodies.len()];
            let w = random_unimodular(&mut rng, 2);
            let t: IntVec = (0..2).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
            let image = apply_unimodular(s, &w, &t).unwrap();
            assert_eq!(equiv_standard_simplex(s, 2).is_some(), equiv_standard_simplex(&image, 2).is_some());
        }
    }
}
