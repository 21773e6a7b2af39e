//! Example bodies: dilated standard simplices, a two-partitionable family in
//! one dimension up, cones over Type 3 triangles, and a bounded search for
//! maximal lattice-free triangles.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::find_2partition;
use crate::enumerate::enumeration_cap;
use crate::error::{Error, Result};
use crate::polytope::SimplicialPolytope;
use crate::scalar::{int_rat, is_integral};
use crate::{Rat, RatMat, RatVec};

/// `conv{0, m e^1, ..., m e^n}`.
pub fn standard_simplex(n: usize, m: i64) -> Result<SimplicialPolytope> {
    if n == 0 || m <= 0 {
        return Err(Error::DimensionMismatch(format!("need n >= 1 and m >= 1, got n = {n}, m = {m}")));
    }
    let mut pts = vec![vec![Rat::zero(); n]];
    for i in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[i] = int_rat(m);
        pts.push(v);
    }
    SimplicialPolytope::simplex_from_vertices(pts)
}

/// Lattice points of the base facet that form a translated copy of
/// `conv{0, n e^1, ..., n e^n}`: `p = (-floor(delta_i), -1)` and `p + n e^j`.
pub fn delta_base_copy(n: usize, delta: &[Rat]) -> Vec<RatVec> {
    let mut p: RatVec = delta[..n].iter().map(|d| -d.floor()).collect();
    p.push(int_rat(-1));
    let mut out = vec![p.clone()];
    for j in 0..n {
        let mut q = p.clone();
        q[j] += int_rat(n as i64);
        out.push(q);
    }
    out
}

/// The simplex in `R^{n+1}` cut out by `-x_i + delta_i x_{n+1} <= 0` for
/// `i <= n`, `sum x_i + delta_{n+1} x_{n+1} <= n` and `x_{n+1} >= -1`.
pub fn delta_family(n: usize, delta: &[Rat]) -> Result<SimplicialPolytope> {
    if n == 0 || delta.len() != n + 1 {
        return Err(Error::InvalidDelta(format!("need n >= 1 and n + 1 = {} parameters, got {}", n + 1, delta.len())));
    }
    if delta.iter().any(Signed::is_negative) {
        return Err(Error::InvalidDelta("parameters must be non-negative".into()));
    }
    if delta.iter().sum::<Rat>().is_zero() {
        return Err(Error::InvalidDelta("parameters sum to zero; the system is a cylinder".into()));
    }
    let dim = n + 1;
    let mut rows: Vec<(RatVec, Rat)> = Vec::with_capacity(dim + 1);
    for i in 0..n {
        let mut a = vec![Rat::zero(); dim];
        a[i] = int_rat(-1);
        a[n] = delta[i].clone();
        rows.push((a, Rat::zero()));
    }
    let mut sum = vec![Rat::one(); dim];
    sum[n] = delta[n].clone();
    rows.push((sum, int_rat(n as i64)));
    let mut floor = vec![Rat::zero(); dim];
    floor[n] = int_rat(-1);
    rows.push((floor, Rat::one()));

    let vertices = (0..rows.len())
        .map(|skip| {
            let (a, b): (Vec<RatVec>, RatVec) =
                rows.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, r)| r.clone()).unzip();
            RatMat::from_rows(a).solve(&b).map_err(|_| Error::InvalidDelta("inequalities do not form a simplex".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let body = SimplicialPolytope::simplex_from_vertices(vertices)
        .map_err(|e| Error::InvalidDelta(format!("degenerate simplex: {e}")))?;
    if !body.maximality_report()?.maximal {
        return Err(Error::InvalidDelta("body is not maximal lattice-free".into()));
    }
    // All boundary lattice points must lie on x_{n+1} in {-1, 0}.
    let boundary = body.boundary_lattice_points()?;
    let heights: Vec<BigInt> = boundary.iter().map(|p| p[n].clone()).collect();
    let low = BigInt::from(-1);
    let partitioned = heights.iter().all(|h| h == &low || h.is_zero())
        && heights.contains(&low)
        && heights.iter().any(Zero::is_zero);
    if !partitioned {
        let stray: Vec<String> = boundary
            .iter()
            .filter(|p| !(p[n] == low || p[n].is_zero()))
            .map(|p| format!("{p:?}"))
            .collect();
        return Err(Error::InvalidDelta(format!(
            "boundary lattice points off the hyperplanes x_{} in {{-1, 0}}: {}",
            n + 1,
            stray.join(", ")
        )));
    }
    let base = body
        .facets()
        .iter()
        .position(|f| f.normal.iter().enumerate().all(|(k, c)| if k == n { c == &low } else { c.is_zero() }))
        .expect("base facet");
    for p in delta_base_copy(n, delta) {
        if !body.contains(&p) || !body.facets()[base].slack(&p).is_zero() {
            return Err(Error::InvalidDelta(format!("base copy point {p:?} is not on the base facet")));
        }
    }
    Ok(body)
}

/// Tag of a maximal lattice-free triangle by its integral vertices and side points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TriangleType {
    /// Integral vertices, one lattice point in each side's relative interior.
    Type1,
    /// A fractional vertex and a side with at least two lattice points.
    Type2,
    /// Exactly three boundary lattice points, one inside each side.
    Type3,
    Other,
}

/// A triangle is Type 3 when it is maximal lattice-free, every side holds
/// one lattice point in its relative interior, and no vertex is integral.
pub fn check_type3(t: &SimplicialPolytope) -> Result<()> {
    if t.dim() != 2 || !t.is_simplex() {
        return Err(Error::NotType3("not a triangle".into()));
    }
    let report = t.maximality_report()?;
    if !report.maximal {
        return Err(Error::NotType3("not maximal lattice-free".into()));
    }
    if report.relative_interior_counts().iter().any(|&c| c != 1) {
        return Err(Error::NotType3("some side does not hold exactly one lattice point".into()));
    }
    if t.vertices().iter().any(|v| is_integral(v)) {
        return Err(Error::NotType3("has an integral vertex".into()));
    }
    Ok(())
}

/// Cone over `{1} x T` from an apex above the centroid of `T`, cut at
/// `x_1 = 0` where the section is the `M`-fold homothetic copy of `T`.
pub fn type3_cylinder_cone(t: &SimplicialPolytope, m: &Rat) -> Result<SimplicialPolytope> {
    check_type3(t)?;
    if m <= &Rat::one() {
        return Err(Error::ValidationFailed("blow-up factor must exceed 1".into()));
    }
    let center = t.vertex_centroid();
    let height = m / (m - Rat::one());
    let mut apex = vec![height];
    apex.extend(center.iter().cloned());
    let mut verts = vec![apex];
    for v in t.vertices() {
        let mut b = vec![Rat::zero()];
        b.extend(v.iter().zip(&center).map(|(x, c)| c + m * (x - c)));
        verts.push(b);
    }
    let body = SimplicialPolytope::simplex_from_vertices(verts)?;
    let report = body.maximality_report()?;
    if !report.maximal {
        return Err(Error::ValidationFailed("cone is not maximal lattice-free".into()));
    }
    let part = find_2partition(&body)?.ok_or_else(|| Error::ValidationFailed("cone is not 2-partitionable".into()))?;
    let e1 = vec![BigInt::one(), BigInt::zero(), BigInt::zero()];
    if part.c != e1 || !part.d.is_zero() {
        return Err(Error::ValidationFailed(format!("unexpected partition c = {:?}, d = {}", part.c, part.d)));
    }
    for (i, count) in report.relative_interior_counts().into_iter().enumerate() {
        if i != part.facet_on_h1 && count > 1 {
            return Err(Error::ValidationFailed(format!("side facet {i} has {count} relative-interior lattice points")));
        }
    }
    Ok(body)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub simplex: SimplicialPolytope,
    /// Lattice points in the relative interior of the side opposite each vertex.
    pub side_counts: [usize; 3],
    pub integral_vertices: [bool; 3],
    pub boundary_points: usize,
    pub tag: TriangleType,
}

/// Candidate triangle in integer coordinates scaled by `q`.
fn classify_triangle(p: [(i64, i64); 3], q: i64) -> Option<([usize; 3], usize)> {
    let [a, b, c] = p;
    let cross = |o: (i64, i64), u: (i64, i64), v: (i64, i64)| (u.0 - o.0) * (v.1 - o.1) - (u.1 - o.1) * (v.0 - o.0);
    let orient = cross(a, b, c);
    if orient == 0 {
        return None;
    }
    let (b, c) = if orient > 0 { (b, c) } else { (c, b) };
    let xs = [a.0, b.0, c.0];
    let ys = [a.1, b.1, c.1];
    let lo_x = xs.iter().min().unwrap().div_euclid(q);
    let hi_x = (xs.iter().max().unwrap() + q - 1).div_euclid(q);
    let lo_y = ys.iter().min().unwrap().div_euclid(q);
    let hi_y = (ys.iter().max().unwrap() + q - 1).div_euclid(q);
    // side_counts are indexed by the opposite vertex in the oriented order
    let mut sides = [0usize; 3];
    let mut boundary = 0;
    for x in lo_x..=hi_x {
        for y in lo_y..=hi_y {
            let z = (x * q, y * q);
            let s = [cross(b, c, z), cross(c, a, z), cross(a, b, z)];
            if s.iter().any(|&v| v < 0) {
                continue;
            }
            let zeros = s.iter().filter(|&&v| v == 0).count();
            match zeros {
                0 => return None,
                1 => {
                    sides[s.iter().position(|&v| v == 0).unwrap()] += 1;
                    boundary += 1;
                }
                _ => boundary += 1,
            }
        }
    }
    if sides.iter().any(|&k| k == 0) {
        return None;
    }
    // map back to the caller's vertex order
    let sides = if orient > 0 { sides } else { [sides[0], sides[2], sides[1]] };
    Some((sides, boundary))
}

/// All maximal lattice-free triangles with vertices in `(1/q) Z^2 ∩ [lo, hi]^2`,
/// sorted by vertex tuple.
pub fn search_simplices(q: i64, lo: i64, hi: i64) -> Result<Vec<SearchHit>> {
    if q < 1 || lo > hi {
        return Err(Error::HypothesisViolated(format!("invalid search parameters q = {q}, box [{lo}, {hi}]")));
    }
    let side: Vec<i64> = (lo * q..=hi * q).collect();
    let pts: Vec<(i64, i64)> = side.iter().flat_map(|&x| side.iter().map(move |&y| (x, y))).collect();
    let k = pts.len() as u128;
    let triples = k * k.saturating_sub(1) * k.saturating_sub(2) / 6;
    let cap = enumeration_cap();
    if triples > cap as u128 {
        return Err(Error::CapExceeded { count: triples.to_string(), cap });
    }
    let found: Vec<(usize, usize, usize, [usize; 3], usize)> = (0..pts.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let pts = &pts;
            (i + 1..pts.len()).flat_map(move |j| {
                (j + 1..pts.len()).filter_map(move |l| {
                    classify_triangle([pts[i], pts[j], pts[l]], q).map(|(s, b)| (i, j, l, s, b))
                })
            })
        })
        .collect();
    let mut found = found;
    found.sort_unstable_by_key(|h| (h.0, h.1, h.2));
    let to_rat = |p: (i64, i64)| vec![Rat::new(p.0.into(), q.into()), Rat::new(p.1.into(), q.into())];
    found
        .into_iter()
        .map(|(i, j, l, side_counts, boundary_points)| {
            let verts = vec![to_rat(pts[i]), to_rat(pts[j]), to_rat(pts[l])];
            let integral_vertices = [is_integral(&verts[0]), is_integral(&verts[1]), is_integral(&verts[2])];
            let simplex = SimplicialPolytope::simplex_from_vertices(verts)?;
            let one_each = side_counts.iter().all(|&c| c == 1);
            let tag = if one_each && integral_vertices.iter().all(|&v| v) {
                TriangleType::Type1
            } else if one_each && boundary_points == 3 {
                TriangleType::Type3
            } else if side_counts.iter().any(|&c| c >= 2) && integral_vertices.iter().any(|&v| !v) {
                TriangleType::Type2
            } else {
                TriangleType::Other
            };
            Ok(SearchHit { simplex, side_counts, integral_vertices, boundary_points, tag })
        })
        .collect()
}

/// Apex height of the delta family, `n / sum(delta)`.
pub fn delta_apex_height(n: usize, delta: &[Rat]) -> Rat {
    int_rat(n as i64) / delta.iter().sum::<Rat>()
}
