use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::region::{FacetRegion, LiftingRegion, MuBox};
use crate::enumerate::{enumeration_cap, IntBox};
use crate::error::{Error, Result};
use crate::scalar::{big_rat, ceil_int, common_denominator, floor_int, int_rat};
use crate::{Rat, RatVec};

const MAX_SAMPLES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub grid: u32,
    pub covered: u64,
    pub total: u64,
    pub covered_fraction: Rat,
    pub uncovered_samples: Vec<RatVec>,
}

/// Torus point of grid cell `m`: `(2m + 1) / (2N)` per coordinate.
pub fn grid_point(m: &[u32], grid: u32) -> RatVec {
    m.iter().map(|&k| BigRational::new(BigInt::from(2 * k + 1), BigInt::from(2 * grid))).collect()
}

fn check_grid(region: &LiftingRegion, grid: u32) -> Result<u64> {
    if grid < 2 {
        return Err(Error::HypothesisViolated(format!("grid resolution {grid} is below 2")));
    }
    let total = (grid as u64)
        .checked_pow(region.dim() as u32)
        .filter(|&t| t <= enumeration_cap())
        .ok_or_else(|| Error::BoxTooLarge {
            count: BigInt::from(grid).pow(region.dim() as u32).to_string(),
            cap: enumeration_cap(),
        })?;
    Ok(total)
}

fn report(grid: u32, n: usize, covered: &[bool]) -> OracleReport {
    let total = covered.len() as u64;
    let count = covered.iter().filter(|c| **c).count() as u64;
    let uncovered_samples = covered
        .iter()
        .enumerate()
        .filter(|(_, c)| !**c)
        .take(MAX_SAMPLES)
        .map(|(idx, _)| grid_point(&unflatten(idx, grid, n), grid))
        .collect();
    OracleReport {
        grid,
        covered: count,
        total,
        covered_fraction: BigRational::new(BigInt::from(count), BigInt::from(total)),
        uncovered_samples,
    }
}

fn unflatten(mut idx: usize, grid: u32, n: usize) -> Vec<u32> {
    let mut m = vec![0u32; n];
    for k in (0..n).rev() {
        m[k] = (idx % grid as usize) as u32;
        idx /= grid as usize;
    }
    m
}

/// Marks the torus grid cells met by the full-dimensional parallelotopes.
///
/// Each parallelotope is scanned over its own bounding box in integer
/// arithmetic: with `D` clearing all denominators, a grid point lies in the box
/// iff `0 <= 2ND mu_j <= 2ND lambda_j`, and the innermost coordinate range is
/// solved for directly. Flat parallelotopes have measure zero and are skipped.
pub fn torus_cover_oracle(region: &LiftingRegion, grid: u32) -> Result<OracleReport> {
    let total = check_grid(region, grid)?;
    let n = region.dim();
    let mut covered = vec![false; total as usize];
    for facet in &region.regions {
        if facet.is_degenerate() {
            continue;
        }
        for b in facet.full_boxes() {
            mark_box(facet, b, &region.f, grid, &mut covered)?;
        }
    }
    Ok(report(grid, n, &covered))
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::CoordinateOverflow)
}

fn mark_box(facet: &FacetRegion, b: &MuBox, f: &[Rat], grid: u32, covered: &mut [bool]) -> Result<()> {
    let n = f.len();
    let h = facet.inverse().expect("full-dimensional facet region");
    let hf = h.mul_vec(f);
    let den = common_denominator((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|ij| &h[ij]).chain(&hf).chain(&b.lambda));
    let scaled = |x: &Rat| (x * big_rat(&den)).to_integer();
    let a: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| to_i128(&scaled(&h[(i, j)]))).collect()).collect::<Result<_>>()?;
    let two_n = 2 * grid as i128;
    let shift: Vec<i128> = hf.iter().map(|x| Ok(two_n * to_i128(&scaled(x))?)).collect::<Result<_>>()?;
    let upper: Vec<i128> = b.lambda.iter().map(|x| Ok(two_n * to_i128(&scaled(x))?)).collect::<Result<_>>()?;

    // Bounding box of the parallelotope from its 2^n corners.
    let mut lo: Vec<Option<Rat>> = vec![None; n];
    let mut hi: Vec<Option<Rat>> = vec![None; n];
    for mask in 0u32..(1 << n) {
        let mu: RatVec = (0..n).map(|j| if mask & (1 << j) != 0 { b.lambda[j].clone() } else { Rat::zero() }).collect();
        let x = facet.point_at(f, &mu);
        for k in 0..n {
            if lo[k].as_ref().map_or(true, |v| &x[k] < v) {
                lo[k] = Some(x[k].clone());
            }
            if hi[k].as_ref().map_or(true, |v| &x[k] > v) {
                hi[k] = Some(x[k].clone());
            }
        }
    }
    // (2m + 1) / (2N) in [lo, hi]  <=>  m in [ceil(N lo - 1/2), floor(N hi - 1/2)]
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let gr = int_rat(grid as i64);
    let mut mlo = Vec::with_capacity(n);
    let mut mhi = Vec::with_capacity(n);
    for k in 0..n {
        let l = ceil_int(&(lo[k].as_ref().unwrap() * &gr - &half));
        let u = floor_int(&(hi[k].as_ref().unwrap() * &gr - &half));
        mlo.push(l.to_i64().ok_or(Error::CoordinateOverflow)?);
        mhi.push(u.to_i64().ok_or(Error::CoordinateOverflow)?);
    }
    let last = n - 1;
    let outer = IntBox::new(mlo[..last].to_vec(), mhi[..last].to_vec());
    let g = grid as i64;
    let mut visit = |prefix: &[i64]| {
        // s_j = sum_k A_jk (2 m_k + 1) - 2N (Hf)_j must lie in [0, upper_j].
        let mut range = (mlo[last], mhi[last]);
        for j in 0..n {
            let base: i128 = prefix.iter().enumerate().map(|(k, &m)| a[j][k] * (2 * m as i128 + 1)).sum::<i128>()
                + a[j][last]
                - shift[j];
            let slope = 2 * a[j][last];
            if slope == 0 {
                if base < 0 || base > upper[j] {
                    return;
                }
                continue;
            }
            let (l, u) = if slope > 0 {
                (div_ceil(-base, slope), div_floor(upper[j] - base, slope))
            } else {
                (div_ceil(upper[j] - base, slope), div_floor(-base, slope))
            };
            range.0 = range.0.max(l as i64);
            range.1 = range.1.min(u as i64);
            if range.0 > range.1 {
                return;
            }
        }
        let mut idx_prefix = 0usize;
        for &m in prefix {
            idx_prefix = idx_prefix * grid as usize + m.rem_euclid(g) as usize;
        }
        for m in range.0..=range.1.min(range.0 + g - 1) {
            covered[idx_prefix * grid as usize + m.rem_euclid(g) as usize] = true;
        }
    };
    if last == 0 {
        visit(&[]);
    } else {
        outer.for_each(|p| visit(p));
    }
    Ok(())
}

fn div_floor(a: i128, b: i128) -> i128 {
    a.div_euclid(b) - if b < 0 && a.rem_euclid(b) != 0 { 1 } else { 0 }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// Literal reading of the covering test: a grid point is covered iff some
/// integer translate inside the polytope's bounding box is a member of `R(f)`.
/// Slow; intended as a cross-check of [`torus_cover_oracle`].
pub fn torus_cover_oracle_reference(region: &LiftingRegion, grid: u32) -> Result<OracleReport> {
    let total = check_grid(region, grid)?;
    let n = region.dim();
    let mut covered = vec![false; total as usize];
    for (idx, c) in covered.iter_mut().enumerate() {
        let x = grid_point(&unflatten(idx, grid, n), grid);
        *c = is_torus_covered(region, &x)?;
    }
    Ok(report(grid, n, &covered))
}

/// Exact test whether `x + Z^n` meets `R(f)`.
pub fn is_torus_covered(region: &LiftingRegion, x: &[Rat]) -> Result<bool> {
    let bbox = region.polytope.bounding_box()?;
    let lo = bbox
        .lo
        .iter()
        .zip(x)
        .map(|(l, v)| ceil_int(&(int_rat(*l) - v)).to_i64().ok_or(Error::CoordinateOverflow))
        .collect::<Result<Vec<_>>>()?;
    let hi = bbox
        .hi
        .iter()
        .zip(x)
        .map(|(h, v)| floor_int(&(int_rat(*h) - v)).to_i64().ok_or(Error::CoordinateOverflow))
        .collect::<Result<Vec<_>>>()?;
    let shifts = IntBox::new(lo, hi);
    shifts.check_cap()?;
    let mut hit = false;
    shifts.for_each(|w| {
        if !hit {
            let y: RatVec = x.iter().zip(w).map(|(a, &b)| a + int_rat(b)).collect();
            hit = region.contains(&y);
        }
    });
    Ok(hit)
}

/// A point of the torus outside `R(f) + Z^n`, certified by exact membership
/// over every relevant translate. Candidates come from successively finer
/// grids; `None` when no grid up to the finest one exposes a gap.
pub fn uncovered_witness(region: &LiftingRegion) -> Result<Option<RatVec>> {
    for grid in [4u32, 8, 16, 32, 64] {
        if (grid as u64).checked_pow(region.dim() as u32).map_or(true, |t| t > enumeration_cap()) {
            break;
        }
        let rep = torus_cover_oracle(region, grid)?;
        for x in rep.uncovered_samples {
            if !is_torus_covered(region, &x)? {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}
