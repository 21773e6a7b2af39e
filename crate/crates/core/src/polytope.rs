//! Simplicial polytopes, lattice-freeness and maximality, and the gauge
//! function of `B - f`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_lattice_points, first_lattice_point, Halfspace, IntBox};
use crate::error::{Error, Result};
use crate::lattice::primitive_normal;
use crate::linalg::{dot, generalized_cross, sub};
use crate::scalar::big_rat;
use crate::{IntVec, Rat, RatMat, RatVec};

/// Facet `normal . x <= offset` through exactly `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    /// Sorted vertex indices.
    pub incidence: Vec<usize>,
    /// Primitive outward integer normal.
    pub normal: IntVec,
    pub offset: Rat,
}

impl Facet {
    pub fn value(&self, x: &[Rat]) -> Rat {
        self.normal.iter().zip(x).map(|(c, v)| big_rat(c) * v).sum()
    }

    /// `offset - normal . x`; positive strictly inside.
    pub fn slack(&self, x: &[Rat]) -> Rat {
        &self.offset - self.value(x)
    }

    pub fn halfspace(&self) -> Halfspace {
        Halfspace::new(self.normal.clone(), self.offset.clone())
    }

    fn rat_normal(&self) -> RatVec {
        self.normal.iter().map(big_rat).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialPolytope {
    dim: usize,
    vertices: Vec<RatVec>,
    facets: Vec<Facet>,
}

/// Hyperplane through `n` points as (primitive normal, offset), oriented
/// so that `reference` lies strictly on the negative side.
fn hyperplane_through(points: &[&RatVec], reference: &RatVec) -> Option<(IntVec, Rat)> {
    let base = points[0];
    let diffs: Vec<RatVec> = points[1..].iter().map(|p| sub(p, base)).collect();
    let cross = generalized_cross(&diffs);
    let mut normal = primitive_normal(&cross).ok()?;
    let mut offset: Rat = normal.iter().zip(base).map(|(c, v)| big_rat(c) * v).sum();
    let at_ref: Rat = normal.iter().zip(reference).map(|(c, v)| big_rat(c) * v).sum();
    if at_ref == offset {
        return None;
    }
    if at_ref > offset {
        normal.iter_mut().for_each(|c| *c = -c.clone());
        offset = -offset;
    }
    Some((normal, offset))
}

fn affine_rank(points: &[RatVec]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let diffs: Vec<RatVec> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    RatMat::from_rows(diffs).rank()
}

impl SimplicialPolytope {
    /// The simplex `conv(points)`; facet `i` is the one opposite vertex `i`.
    pub fn simplex_from_vertices(points: Vec<RatVec>) -> Result<Self> {
        let n = points.first().map_or(0, Vec::len);
        if n == 0 || points.len() != n + 1 || points.iter().any(|p| p.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "a simplex in R^{n} needs {} points of length {n}",
                n + 1
            )));
        }
        if affine_rank(&points) < n {
            return Err(Error::Degenerate);
        }
        let facets = (0..=n)
            .map(|opposite| {
                let incidence: Vec<usize> = (0..=n).filter(|&j| j != opposite).collect();
                let pts: Vec<&RatVec> = incidence.iter().map(|&j| &points[j]).collect();
                let (normal, offset) =
                    hyperplane_through(&pts, &points[opposite]).ok_or(Error::Degenerate)?;
                Ok(Facet { incidence, normal, offset })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialPolytope { dim: n, vertices: points, facets })
    }

    /// Validated simplicial polytope from vertices and facet incidences.
    pub fn from_data(vertices: Vec<RatVec>, incidences: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.first().map_or(0, Vec::len);
        if n == 0 || vertices.iter().any(|p| p.len() != n) {
            return Err(Error::DimensionMismatch("vertices must share one positive dimension".into()));
        }
        if affine_rank(&vertices) < n {
            return Err(Error::Degenerate);
        }
        let mut facets = Vec::with_capacity(incidences.len());
        for (i, inc) in incidences.into_iter().enumerate() {
            let mut inc = inc;
            inc.sort_unstable();
            inc.dedup();
            if inc.len() != n || inc.iter().any(|&j| j >= vertices.len()) {
                return Err(Error::NotSimplicial(format!(
                    "facet {i} lists {inc:?}; expected {n} distinct vertex indices"
                )));
            }
            let pts: Vec<&RatVec> = inc.iter().map(|&j| &vertices[j]).collect();
            let diffs: Vec<RatVec> = pts[1..].iter().map(|p| sub(p, pts[0])).collect();
            if generalized_cross(&diffs).iter().all(Zero::is_zero) {
                return Err(Error::NotSupporting(format!("facet {i}: incident vertices are affinely dependent")));
            }
            let others: Vec<usize> = (0..vertices.len()).filter(|j| !inc.contains(j)).collect();
            let reference = &vertices[others[0]];
            let (normal, offset) = hyperplane_through(&pts, reference).ok_or_else(|| {
                Error::NotSupporting(format!("facet {i}: vertex {} lies on its hyperplane", others[0]))
            })?;
            let facet = Facet { incidence: inc, normal, offset };
            for &j in &others {
                let s = facet.slack(&vertices[j]);
                if s.is_zero() {
                    return Err(Error::NotSupporting(format!("facet {i}: vertex {j} lies on its hyperplane")));
                }
                if s.is_negative() {
                    return Err(Error::NotSupporting(format!("facet {i}: vertices on both sides")));
                }
            }
            facets.push(facet);
        }
        for j in 0..vertices.len() {
            if !facets.iter().any(|f| f.incidence.contains(&j)) {
                return Err(Error::NotSupporting(format!("vertex {j} is on no facet")));
            }
        }
        // A closed boundary: every ridge lies on exactly two facets.
        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for f in &facets {
            for skip in 0..n {
                let ridge: Vec<usize> =
                    f.incidence.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        if let Some((ridge, count)) = ridges.iter().find(|(_, &c)| c != 2) {
            return Err(Error::Unbounded(format!("ridge {ridge:?} lies on {count} facets")));
        }
        Ok(SimplicialPolytope { dim: n, vertices, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    pub fn facet_vertices(&self, i: usize) -> Vec<&RatVec> {
        self.facets[i].incidence.iter().map(|&j| &self.vertices[j]).collect()
    }

    /// For a simplex, the facet opposite vertex `v`.
    pub fn facet_opposite(&self, v: usize) -> Option<usize> {
        if !self.is_simplex() {
            return None;
        }
        self.facets.iter().position(|f| !f.incidence.contains(&v))
    }

    pub fn halfspaces(&self) -> Vec<Halfspace> {
        self.facets.iter().map(Facet::halfspace).collect()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    pub fn is_interior(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| f.slack(x).is_positive())
    }

    /// Facets whose hyperplane contains `x`.
    pub fn facets_containing(&self, x: &[Rat]) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| self.facets[i].slack(x).is_zero()).collect()
    }

    pub fn vertex_centroid(&self) -> RatVec {
        let k = Rat::from_integer(self.vertices.len().into());
        (0..self.dim)
            .map(|c| self.vertices.iter().map(|v| v[c].clone()).sum::<Rat>() / &k)
            .collect()
    }

    pub fn bounding_box(&self) -> Result<IntBox> {
        IntBox::around(&self.vertices)
    }

    /// Image under `x -> U x + b`, keeping the facet incidences.
    pub fn map_affine(&self, u: &RatMat, b: &[Rat]) -> Result<Self> {
        let vertices: Vec<RatVec> = self
            .vertices
            .iter()
            .map(|v| u.mul_vec(v).iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        if self.is_simplex() {
            return Self::simplex_from_vertices(vertices);
        }
        Self::from_data(vertices, self.facets.iter().map(|f| f.incidence.clone()).collect())
    }

    /// An integer point strictly inside, if any.
    pub fn interior_lattice_point(&self) -> Result<Option<IntVec>> {
        let strict: Vec<Halfspace> =
            self.facets.iter().map(|f| Halfspace::strict(f.normal.clone(), &f.offset)).collect();
        first_lattice_point(&strict, &self.bounding_box()?)
    }

    /// Integer points of the closed facet `i`, split by whether they avoid
    /// every other facet (relative interior) or not.
    pub fn facet_lattice_points(&self, i: usize) -> Result<FacetLatticePoints> {
        let facet = &self.facets[i];
        let mut ineqs: Vec<Halfspace> = Halfspace::equality(facet.normal.clone(), facet.offset.clone()).into();
        ineqs.extend(self.facets.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, f)| f.halfspace()));
        let corners: Vec<RatVec> = self.facet_vertices(i).into_iter().cloned().collect();
        let all_points = enumerate_lattice_points(&ineqs, &IntBox::around(&corners)?)?;
        let relative_interior_points = all_points
            .iter()
            .filter(|p| {
                let x: RatVec = p.iter().map(big_rat).collect();
                self.facets.iter().enumerate().all(|(k, f)| k == i || f.slack(&x).is_positive())
            })
            .cloned()
            .collect();
        Ok(FacetLatticePoints { all_points, relative_interior_points })
    }

    /// All integer points on the boundary, deduplicated and sorted.
    pub fn boundary_lattice_points(&self) -> Result<Vec<IntVec>> {
        let mut pts = Vec::new();
        for i in 0..self.facets.len() {
            pts.extend(self.facet_lattice_points(i)?.all_points);
        }
        pts.sort();
        pts.dedup();
        Ok(pts)
    }

    pub fn maximality_report(&self) -> Result<MaximalityReport> {
        let interior_witness = self.interior_lattice_point()?;
        let per_facet = (0..self.facets.len())
            .map(|i| self.facet_lattice_points(i))
            .collect::<Result<Vec<_>>>()?;
        let lattice_free = interior_witness.is_none();
        let maximal = lattice_free && per_facet.iter().all(|f| !f.relative_interior_points.is_empty());
        Ok(MaximalityReport { lattice_free, interior_witness, per_facet, maximal })
    }

    /// The vectors `a^i = c^i / (d^i - c^i . f)`, so that the polytope reads
    /// `a^i . (x - f) <= 1`.
    pub fn normalized_normals(&self, f: &[Rat]) -> Result<Vec<RatVec>> {
        self.facets
            .iter()
            .map(|facet| {
                let slack = facet.slack(f);
                if !slack.is_positive() {
                    return Err(Error::FNotInterior);
                }
                Ok(facet.rat_normal().into_iter().map(|c| c / &slack).collect())
            })
            .collect()
    }

    /// Gauge of `B - f` at `r`: `max_i a^i . r`.
    pub fn gauge(&self, f: &[Rat], r: &[Rat]) -> Result<Rat> {
        let normals = self.normalized_normals(f)?;
        Ok(Gauge { normals }.eval(r))
    }
}

/// The gauge function for a fixed `f`, with normals precomputed.
#[derive(Debug, Clone)]
pub struct Gauge {
    pub normals: Vec<RatVec>,
}

impl Gauge {
    pub fn new(polytope: &SimplicialPolytope, f: &[Rat]) -> Result<Self> {
        Ok(Gauge { normals: polytope.normalized_normals(f)? })
    }

    pub fn eval(&self, r: &[Rat]) -> Rat {
        self.normals
            .iter()
            .map(|a| dot(a, r))
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetLatticePoints {
    pub all_points: Vec<IntVec>,
    pub relative_interior_points: Vec<IntVec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityReport {
    pub lattice_free: bool,
    pub interior_witness: Option<IntVec>,
    pub per_facet: Vec<FacetLatticePoints>,
    pub maximal: bool,
}

impl MaximalityReport {
    pub fn relative_interior_counts(&self) -> Vec<usize> {
        self.per_facet.iter().map(|f| f.relative_interior_points.len()).collect()
    }
}

/// `sum_i w_i v_i / sum_i w_i` for positive weights.
pub fn convex_combination(points: &[RatVec], weights: &[Rat]) -> RatVec {
    let total: Rat = weights.iter().sum();
    debug_assert!(total.is_positive());
    let n = points[0].len();
    (0..n)
        .map(|c| points.iter().zip(weights).map(|(p, w)| &p[c] * w).sum::<Rat>() / &total)
        .collect()
}

/// Convenience for tests and generators.
pub fn rat_point(coords: &[(i64, i64)]) -> RatVec {
    coords.iter().map(|&(p, q)| crate::scalar::rat(p, q)).collect()
}

pub fn int_point(coords: &[i64]) -> RatVec {
    coords.iter().map(|&p| Rat::from_integer(p.into())).collect()
}
