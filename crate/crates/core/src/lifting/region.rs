use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{kernel_lattice, IntLattice};
use crate::linalg::{dot, sub};
use crate::polytope::SimplicialPolytope;
use crate::scalar::big_rat;
use crate::{IntVec, Rat, RatMat, RatVec};

/// One facet lattice point `y` and its barycentric weights on the facet.
/// In multiplier space the parallelotope `R_ik` is the box `[0, lambda]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuBox {
    pub point: IntVec,
    pub lambda: RatVec,
}

impl MuBox {
    /// False when `y` sits on the facet's relative boundary (some weight is zero).
    pub fn is_full(&self) -> bool {
        self.lambda.iter().all(Signed::is_positive)
    }
}

#[derive(Debug, Clone)]
pub struct FacetRegion {
    pub facet: usize,
    pub vertices: Vec<RatVec>,
    /// Columns `v^ij - f`.
    pub generators: RatMat,
    pub abs_det: Rat,
    inverse: Option<RatMat>,
    pub boxes: Vec<MuBox>,
    /// Integer vectors parallel to the facet.
    pub lattice: IntLattice,
    /// Multiplier coordinates of each lattice basis vector.
    pub lattice_mu: Vec<RatVec>,
}

impl FacetRegion {
    pub fn is_degenerate(&self) -> bool {
        self.abs_det.is_zero()
    }

    pub fn full_boxes(&self) -> impl Iterator<Item = &MuBox> {
        self.boxes.iter().filter(|b| b.is_full())
    }

    /// `(G^{-1}, G^{-1} f)` when the generators are independent.
    pub fn inverse(&self) -> Option<&RatMat> {
        self.inverse.as_ref()
    }

    /// Multiplier coordinates of an arbitrary lattice vector of the facet.
    pub fn mu_of(&self, t: &[crate::Int]) -> Option<RatVec> {
        let coeffs = self.lattice.coordinates(t)?;
        let n = self.vertices.len();
        let mut mu = vec![Rat::zero(); n];
        for (c, m) in coeffs.iter().zip(&self.lattice_mu) {
            for (acc, x) in mu.iter_mut().zip(m) {
                *acc += big_rat(c) * x;
            }
        }
        Some(mu)
    }

    /// Euclidean volume of the parallelotope `R_ik`.
    pub fn box_volume(&self, b: &MuBox) -> Rat {
        b.lambda.iter().fold(self.abs_det.clone(), |acc, l| acc * l)
    }

    /// Point `f + G mu`.
    pub fn point_at(&self, f: &[Rat], mu: &[Rat]) -> RatVec {
        let g = self.generators.mul_vec(mu);
        f.iter().zip(&g).map(|(a, b)| a + b).collect()
    }

    /// `x` lies in one of this facet's parallelotopes.
    pub fn contains(&self, f: &[Rat], x: &[Rat]) -> bool {
        let v = sub(x, f);
        match &self.inverse {
            Some(inv) => {
                let mu = inv.mul_vec(&v);
                self.boxes.iter().any(|b| {
                    mu.iter().zip(&b.lambda).all(|(m, l)| !m.is_negative() && m <= l)
                })
            }
            None => {
                let gens: Vec<RatVec> = (0..self.generators.cols()).map(|j| self.generators.column(j)).collect();
                if !in_cone(&gens, &v) {
                    return false;
                }
                self.boxes.iter().any(|b| {
                    let y: RatVec = b.point.iter().map(big_rat).collect();
                    in_cone(&gens, &sub(&y, x))
                })
            }
        }
    }
}

/// Cone membership for possibly dependent generators: by Caratheodory it
/// suffices to try every linearly independent subset.
fn in_cone(gens: &[RatVec], v: &[Rat]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let gens: Vec<&RatVec> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).collect();
    let k = gens.len();
    for mask in 1u32..(1 << k) {
        let subset: Vec<&RatVec> = (0..k).filter(|j| mask & (1 << j) != 0).map(|j| gens[j]).collect();
        let gram = RatMat::from_rows(
            subset.iter().map(|a| subset.iter().map(|b| dot(a, b)).collect()).collect(),
        );
        let rhs: RatVec = subset.iter().map(|a| dot(a, v)).collect();
        let Ok(c) = gram.solve(&rhs) else { continue };
        if c.iter().any(Signed::is_negative) {
            continue;
        }
        let back: RatVec = (0..v.len()).map(|r| subset.iter().zip(&c).map(|(g, x)| &g[r] * x).sum()).collect();
        if back == v {
            return true;
        }
    }
    false
}

/// The lifting region `R(f)`: one union of parallelotopes per facet.
#[derive(Debug, Clone)]
pub struct LiftingRegion {
    pub f: RatVec,
    pub regions: Vec<FacetRegion>,
    pub is_boundary_f: bool,
    pub polytope: SimplicialPolytope,
}

impl LiftingRegion {
    pub fn dim(&self) -> usize {
        self.f.len()
    }

    /// `x` lies in some `R_ik`.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.regions.iter().any(|r| r.contains(&self.f, x))
    }

    /// Sum of the Euclidean volumes of all parallelotopes.
    pub fn total_box_volume(&self) -> Rat {
        self.regions
            .iter()
            .flat_map(|r| r.boxes.iter().map(move |b| r.box_volume(b)))
            .sum()
    }
}

/// Barycentric weights of a point of facet `i` with respect to its vertices.
pub fn barycentric_on_facet(polytope: &SimplicialPolytope, i: usize, y: &[Rat]) -> Result<RatVec> {
    let reference = polytope.vertex_centroid();
    let basis = generator_matrix(polytope, i, &reference);
    weights_in_basis(&basis, &reference, y).ok_or(Error::NotOnFacet(i))
}

fn generator_matrix(polytope: &SimplicialPolytope, i: usize, apex: &[Rat]) -> RatMat {
    let cols: Vec<RatVec> = polytope.facet_vertices(i).into_iter().map(|v| sub(v, apex)).collect();
    RatMat::from_columns(&cols)
}

/// Solves `y - apex = G lambda` and accepts only convex weights.
fn weights_in_basis(basis: &RatMat, apex: &[Rat], y: &[Rat]) -> Option<RatVec> {
    let lambda = basis.solve(&sub(y, apex)).ok()?;
    let total: Rat = lambda.iter().sum();
    (total.is_one() && lambda.iter().all(|l| !l.is_negative())).then_some(lambda)
}

/// Builds `R(f)` for `f` in the polytope (interior or boundary).
pub fn build_region(polytope: &SimplicialPolytope, f: &[Rat]) -> Result<LiftingRegion> {
    if f.len() != polytope.dim() {
        return Err(Error::DimensionMismatch(format!(
            "f has length {}, polytope lives in R^{}",
            f.len(),
            polytope.dim()
        )));
    }
    if !polytope.contains(f) {
        return Err(Error::FOutside);
    }
    let reference = polytope.vertex_centroid();
    let regions = (0..polytope.facets().len())
        .map(|i| facet_region(polytope, i, f, &reference))
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftingRegion {
        f: f.to_vec(),
        regions,
        is_boundary_f: !polytope.is_interior(f),
        polytope: polytope.clone(),
    })
}

fn facet_region(polytope: &SimplicialPolytope, i: usize, f: &[Rat], reference: &[Rat]) -> Result<FacetRegion> {
    let generators = generator_matrix(polytope, i, f);
    let abs_det = generators.det().abs();
    let inverse = if abs_det.is_zero() { None } else { Some(generators.inverse()?) };
    // Multipliers do not depend on the apex; with a degenerate apex use the
    // polytope's centroid instead.
    let (basis, apex) = if inverse.is_some() {
        (generators.clone(), f.to_vec())
    } else {
        (generator_matrix(polytope, i, reference), reference.to_vec())
    };
    let points = polytope.facet_lattice_points(i)?.all_points;
    let boxes = points
        .into_iter()
        .map(|y| {
            let yr: RatVec = y.iter().map(big_rat).collect();
            let lambda = weights_in_basis(&basis, &apex, &yr).ok_or(Error::NotOnFacet(i))?;
            Ok(MuBox { point: y, lambda })
        })
        .collect::<Result<Vec<_>>>()?;
    let lattice = kernel_lattice(&polytope.facets()[i].normal)?;
    let lattice_mu = lattice
        .basis
        .iter()
        .map(|b| basis.solve(&b.iter().map(big_rat).collect::<RatVec>()))
        .collect::<Result<Vec<_>>>()?;
    Ok(FacetRegion {
        facet: i,
        vertices: polytope.facet_vertices(i).into_iter().cloned().collect(),
        generators,
        abs_det,
        inverse,
        boxes,
        lattice,
        lattice_mu,
    })
}
