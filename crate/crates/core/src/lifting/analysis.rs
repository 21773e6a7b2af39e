use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::region::{build_region, LiftingRegion};
use super::volume::{torus_volume, TermOrder};
use crate::enumerate::IntBox;
use crate::error::{Error, Result};
use crate::linalg::{dot, sub};
use crate::polytope::{convex_combination, Gauge, SimplicialPolytope};
use crate::scalar::{ceil_int, floor_int, int_rat};
use crate::{Rat, RatMat, RatVec};

/// Exact torus volume of `R(f)`.
pub fn volume_at(polytope: &SimplicialPolytope, f: &[Rat]) -> Result<Rat> {
    torus_volume(&build_region(polytope, f)?, TermOrder::Lex)
}

/// Interior points `sum w_i v_i / sum w_i` with integer weights in `1..=10`.
pub fn sample_interior_points(polytope: &SimplicialPolytope, count: usize, seed: u64) -> Vec<RatVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let verts = polytope.vertices();
    (0..count)
        .map(|_| {
            let w: Vec<i64> = verts.iter().map(|_| rng.gen_range(1..=10)).collect();
            let total: i64 = w.iter().sum();
            let weights: RatVec = w.iter().map(|&x| Rat::new(x.into(), total.into())).collect();
            convex_combination(verts, &weights)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub point: RatVec,
    pub exact: Rat,
    pub predicted: Rat,
}

/// `vol(f) = coefficients . f + constant`, fitted at vertices and checked at
/// the remaining vertices and at sampled interior points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineVolume {
    pub coefficients: RatVec,
    pub constant: Rat,
    pub vertex_volumes: Vec<Rat>,
    pub probes: Vec<Probe>,
    pub verified: bool,
}

impl AffineVolume {
    pub fn eval(&self, f: &[Rat]) -> Rat {
        dot(&self.coefficients, f) + &self.constant
    }
}

pub fn affine_volume_function(polytope: &SimplicialPolytope) -> Result<AffineVolume> {
    affine_volume_function_with(polytope, 5, 0)
}

pub fn affine_volume_function_with(polytope: &SimplicialPolytope, probes: usize, seed: u64) -> Result<AffineVolume> {
    let n = polytope.dim();
    let verts = polytope.vertices();
    let vertex_volumes = verts.iter().map(|v| volume_at(polytope, v)).collect::<Result<Vec<_>>>()?;
    let anchors = affinely_independent(verts).ok_or(Error::Degenerate)?;
    // Rows (v, 1) . (a, c) = vol(v).
    let m = RatMat::from_rows(
        anchors.iter().map(|&i| verts[i].iter().cloned().chain(std::iter::once(Rat::one())).collect()).collect(),
    );
    let rhs: RatVec = anchors.iter().map(|&i| vertex_volumes[i].clone()).collect();
    let sol = m.solve(&rhs)?;
    let mut fit = AffineVolume {
        coefficients: sol[..n].to_vec(),
        constant: sol[n].clone(),
        vertex_volumes,
        probes: Vec::new(),
        verified: false,
    };
    let mut points: Vec<(RatVec, Rat)> =
        verts.iter().cloned().zip(fit.vertex_volumes.iter().cloned()).collect();
    for p in sample_interior_points(polytope, probes, seed) {
        let v = volume_at(polytope, &p)?;
        points.push((p, v));
    }
    fit.probes = points
        .into_iter()
        .map(|(point, exact)| {
            let predicted = fit.eval(&point);
            Probe { point, exact, predicted }
        })
        .collect();
    fit.verified = fit.probes.iter().all(|p| p.exact == p.predicted);
    Ok(fit)
}

fn affinely_independent(points: &[RatVec]) -> Option<Vec<usize>> {
    let n = points.first()?.len();
    let mut pick = vec![0usize];
    for i in 1..points.len() {
        pick.push(i);
        let rows: Vec<RatVec> = pick[1..].iter().map(|&k| sub(&points[k], &points[pick[0]])).collect();
        if RatMat::from_rows(rows).rank() < pick.len() - 1 {
            pick.pop();
        }
        if pick.len() == n + 1 {
            return Some(pick);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BodyClass {
    UniqueForAllF,
    MultipleForAllF,
}

/// The set of `f` with volume one is a face of the body, so checking the
/// vertices decides every `f` at once.
pub fn classify_body(polytope: &SimplicialPolytope) -> Result<BodyClass> {
    let report = polytope.maximality_report()?;
    if !report.maximal {
        return Err(Error::HypothesisViolated("body is not maximal lattice-free".into()));
    }
    for v in polytope.vertices() {
        if !volume_at(polytope, v)?.is_one() {
            return Ok(BodyClass::MultipleForAllF);
        }
    }
    Ok(BodyClass::UniqueForAllF)
}

/// Evaluator of the unique minimal lifting for one `(B, f)`.
#[derive(Debug, Clone)]
pub struct UniqueLifting {
    region: LiftingRegion,
    gauge: Gauge,
    bbox: IntBox,
}

impl UniqueLifting {
    pub fn new(polytope: &SimplicialPolytope, f: &[Rat]) -> Result<Self> {
        if classify_body(polytope)? != BodyClass::UniqueForAllF {
            return Err(Error::MultipleLiftings);
        }
        let gauge = Gauge::new(polytope, f)?;
        let region = build_region(polytope, f)?;
        Ok(UniqueLifting { region, gauge, bbox: polytope.bounding_box()? })
    }

    pub fn region(&self) -> &LiftingRegion {
        &self.region
    }

    pub fn gauge(&self, r: &[Rat]) -> Rat {
        self.gauge.eval(r)
    }

    /// `pi(r) = psi(r + w)` for an integer `w` with `f + r + w` in `R(f)`.
    pub fn value(&self, r: &[Rat]) -> Result<Rat> {
        let x: RatVec = self.region.f.iter().zip(r).map(|(a, b)| a + b).collect();
        let mut lo = Vec::with_capacity(x.len());
        let mut hi = Vec::with_capacity(x.len());
        for (k, xk) in x.iter().enumerate() {
            lo.push(crate::scalar::to_i64(&ceil_int(&(int_rat(self.bbox.lo[k]) - xk)))?);
            hi.push(crate::scalar::to_i64(&floor_int(&(int_rat(self.bbox.hi[k]) - xk)))?);
        }
        let shifts = IntBox::new(lo, hi);
        shifts.check_cap()?;
        let mut best: Option<Rat> = None;
        shifts.for_each(|w| {
            let wr: RatVec = w.iter().map(|&v| int_rat(v)).collect();
            let y: RatVec = x.iter().zip(&wr).map(|(a, b)| a + b).collect();
            if self.region.contains(&y) {
                let v = self.gauge.eval(&r.iter().zip(&wr).map(|(a, b)| a + b).collect::<RatVec>());
                if best.as_ref().map_or(true, |b| &v < b) {
                    best = Some(v);
                }
            }
        });
        best.ok_or(Error::LiftNotFound)
    }
}

pub fn lift_value(polytope: &SimplicialPolytope, f: &[Rat], r: &[Rat]) -> Result<Rat> {
    UniqueLifting::new(polytope, f)?.value(r)
}
