use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::region::{FacetRegion, LiftingRegion};
use crate::enumerate::{enumeration_cap, IntBox};
use crate::error::{Error, Result};
use crate::scalar::{big_rat, common_denominator, floor_int};
use crate::{IntVec, Rat, RatMat, RatVec};

/// Term order used to pick one representative per torus class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TermOrder {
    /// First nonzero coordinate positive.
    #[default]
    Lex,
    /// Last nonzero coordinate positive.
    RevLex,
}

impl TermOrder {
    pub fn is_positive(self, t: &[BigInt]) -> bool {
        let first = match self {
            TermOrder::Lex => t.iter().find(|x| !x.is_zero()),
            TermOrder::RevLex => t.iter().rev().find(|x| !x.is_zero()),
        };
        first.is_some_and(Signed::is_positive)
    }
}

/// A facet lattice vector whose shifted boxes can overlap the originals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub t: IntVec,
    pub mu: RatVec,
}

/// Coordinatewise maximum of the full boxes' multipliers.
fn overlap_bounds(region: &FacetRegion) -> Option<RatVec> {
    let mut full = region.full_boxes();
    let first = full.next()?.lambda.clone();
    Some(full.fold(first, |acc, b| acc.into_iter().zip(&b.lambda).map(|(a, l)| a.max(l.clone())).collect()))
}

/// The set of positive lattice vectors `t` with `|tau(t)_j| < L_j` for all `j`.
pub fn overlap_translations(region: &FacetRegion, order: TermOrder) -> Result<Vec<Translation>> {
    let Some(bounds) = overlap_bounds(region) else {
        return Ok(Vec::new());
    };
    let k = region.lattice_mu.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let n = bounds.len();
    // T has the mu-images of the basis as columns and rank k. Drop rows until
    // a square invertible block remains; its inverse bounds the coefficients.
    let tmat = RatMat::from_columns(&region.lattice_mu);
    let rows = choose_rows(&tmat, k).ok_or(Error::Singular)?;
    let block = RatMat::from_rows(rows.iter().map(|&r| tmat.row(r).to_vec()).collect());
    let inv = block.inverse()?;
    let mut radius = Vec::with_capacity(k);
    for m in 0..k {
        let b: Rat = rows.iter().enumerate().map(|(j, &r)| inv[(m, j)].abs() * &bounds[r]).sum();
        radius.push(floor_int(&b).to_i64().ok_or(Error::CoordinateOverflow)?);
    }
    let bbox = IntBox::new(radius.iter().map(|r| -r).collect(), radius.clone());
    let count = bbox.count();
    let cap = enumeration_cap();
    if count > BigInt::from(cap) {
        return Err(Error::EnumerationCap { facet: region.facet, count: count.to_string(), cap });
    }
    let mut out = Vec::new();
    bbox.for_each(|c| {
        if c.iter().all(|&x| x == 0) {
            return;
        }
        let coeffs: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        let mut mu = vec![Rat::zero(); n];
        for (cm, col) in coeffs.iter().zip(&region.lattice_mu) {
            let cm = big_rat(cm);
            for (acc, x) in mu.iter_mut().zip(col) {
                *acc += &cm * x;
            }
        }
        if mu.iter().zip(&bounds).all(|(m, l)| &m.abs() < l) {
            let t = region.lattice.combine(&coeffs);
            if order.is_positive(&t) {
                out.push(Translation { t, mu });
            }
        }
    });
    Ok(out)
}

fn choose_rows(m: &RatMat, k: usize) -> Option<Vec<usize>> {
    let n = m.rows();
    let mut pick = Vec::with_capacity(k);
    // Greedy row selection keeps the rank growing.
    for r in 0..n {
        pick.push(r);
        let sub = RatMat::from_rows(pick.iter().map(|&i| m.row(i).to_vec()).collect());
        if sub.rank() < pick.len() {
            pick.pop();
        }
        if pick.len() == k {
            return Some(pick);
        }
    }
    None
}

/// Axis-aligned box `[lo, hi]` in multiplier space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedBox {
    pub lo: RatVec,
    pub hi: RatVec,
}

impl AlignedBox {
    pub fn from_lambda(lambda: &[Rat]) -> Self {
        AlignedBox { lo: vec![Rat::zero(); lambda.len()], hi: lambda.to_vec() }
    }

    pub fn shifted(&self, by: &[Rat]) -> Self {
        AlignedBox {
            lo: self.lo.iter().zip(by).map(|(a, b)| a + b).collect(),
            hi: self.hi.iter().zip(by).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo: RatVec = self.lo.iter().zip(&other.lo).map(|(a, b)| a.max(b).clone()).collect();
        let hi: RatVec = self.hi.iter().zip(&other.hi).map(|(a, b)| a.min(b).clone()).collect();
        lo.iter().zip(&hi).all(|(l, h)| l < h).then_some(AlignedBox { lo, hi })
    }

    pub fn volume(&self) -> Rat {
        self.lo.iter().zip(&self.hi).map(|(l, h)| (h - l).max(Rat::zero())).product()
    }
}

/// Exact measure of `(union of keep) \ (union of remove)` by painting the
/// cells of the grid spanned by all box bounds.
pub fn difference_measure(keep: &[AlignedBox], remove: &[AlignedBox], cap: u64) -> Result<Rat> {
    let Some(first) = keep.first() else {
        return Ok(Rat::zero());
    };
    let n = first.lo.len();
    let mut axes: Vec<Vec<Rat>> = vec![Vec::new(); n];
    for b in keep {
        for (j, axis) in axes.iter_mut().enumerate() {
            axis.push(b.lo[j].clone());
            axis.push(b.hi[j].clone());
        }
    }
    for axis in &mut axes {
        axis.sort();
        axis.dedup();
    }
    let (outer_lo, outer_hi): (RatVec, RatVec) =
        axes.iter().map(|a| (a[0].clone(), a[a.len() - 1].clone())).unzip();
    let clipped: Vec<(RatVec, RatVec)> = remove
        .iter()
        .filter_map(|b| {
            let lo: RatVec = b.lo.iter().zip(&outer_lo).map(|(x, o)| x.max(o).clone()).collect();
            let hi: RatVec = b.hi.iter().zip(&outer_hi).map(|(x, o)| x.min(o).clone()).collect();
            lo.iter().zip(&hi).all(|(l, h)| l < h).then_some((lo, hi))
        })
        .collect();
    for (lo, hi) in &clipped {
        for (j, axis) in axes.iter_mut().enumerate() {
            axis.push(lo[j].clone());
            axis.push(hi[j].clone());
        }
    }
    for axis in &mut axes {
        axis.sort();
        axis.dedup();
    }
    let shape: Vec<usize> = axes.iter().map(|a| a.len() - 1).collect();
    let cells = shape.iter().try_fold(1u64, |acc, &s| acc.checked_mul(s as u64));
    match cells {
        Some(c) if c <= cap => {}
        _ => {
            let count: BigInt = shape.iter().map(|&s| BigInt::from(s)).product();
            return Err(Error::EnumerationCap { facet: usize::MAX, count: count.to_string(), cap });
        }
    }
    let mut strides = vec![1usize; n];
    for j in (0..n.saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * shape[j + 1];
    }
    let mut paint = vec![false; shape.iter().product()];
    let locate = |j: usize, v: &Rat| axes[j].binary_search(v).expect("breakpoint present");
    let mut fill = |lo: &[Rat], hi: &[Rat], value: bool| {
        let ranges: Vec<(usize, usize)> = (0..n).map(|j| (locate(j, &lo[j]), locate(j, &hi[j]))).collect();
        for_each_cell(&ranges, &strides, |idx| paint[idx] = value);
    };
    for b in keep {
        fill(&b.lo, &b.hi, true);
    }
    for (lo, hi) in &clipped {
        fill(lo, hi, false);
    }
    Ok(painted_measure(&axes, &shape, &strides, &paint))
}

fn for_each_cell(ranges: &[(usize, usize)], strides: &[usize], mut visit: impl FnMut(usize)) {
    if ranges.iter().any(|(a, b)| a >= b) {
        return;
    }
    let n = ranges.len();
    let mut idx: Vec<usize> = ranges.iter().map(|r| r.0).collect();
    loop {
        visit(idx.iter().zip(strides).map(|(i, s)| i * s).sum());
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < ranges[k].1 {
                break;
            }
            idx[k] = ranges[k].0;
        }
    }
}

/// Sum of the painted cell volumes, with widths scaled to integers per axis.
fn painted_measure(axes: &[Vec<Rat>], shape: &[usize], strides: &[usize], paint: &[bool]) -> Rat {
    let dens: Vec<BigInt> = axes.iter().map(|a| common_denominator(a)).collect();
    let widths: Vec<Vec<BigInt>> = axes
        .iter()
        .zip(&dens)
        .map(|(a, d)| a.windows(2).map(|w| ((&w[1] - &w[0]) * big_rat(d)).to_integer()).collect())
        .collect();
    let scale: BigInt = dens.iter().product();
    let small: Option<Vec<Vec<u128>>> =
        widths.iter().map(|w| w.iter().map(|x| x.to_u128().filter(|&v| v < 1 << 30)).collect()).collect();
    let total = small
        .and_then(|w| {
            let mut sum: u128 = 0;
            for (idx, _) in paint.iter().enumerate().filter(|(_, p)| **p) {
                let prod = (0..shape.len()).map(|j| w[j][(idx / strides[j]) % shape[j]]).product::<u128>();
                sum = sum.checked_add(prod)?;
            }
            Some(BigInt::from(sum))
        })
        .unwrap_or_else(|| {
            paint
                .iter()
                .enumerate()
                .filter(|(_, p)| **p)
                .map(|(idx, _)| {
                    (0..shape.len()).map(|j| widths[j][(idx / strides[j]) % shape[j]].clone()).product::<BigInt>()
                })
                .sum()
        });
    BigRational::new(total, scale)
}

/// Volume of this facet's canonical piece `R~_i` on the torus.
pub fn facet_torus_volume(region: &FacetRegion, order: TermOrder) -> Result<Rat> {
    if region.is_degenerate() {
        return Ok(Rat::zero());
    }
    let keep: Vec<AlignedBox> = region.full_boxes().map(|b| AlignedBox::from_lambda(&b.lambda)).collect();
    if keep.is_empty() {
        return Ok(Rat::zero());
    }
    let shifts = overlap_translations(region, order)?;
    let remove: Vec<AlignedBox> =
        shifts.iter().flat_map(|s| keep.iter().map(move |b| b.shifted(&s.mu))).collect();
    let measure = difference_measure(&keep, &remove, enumeration_cap()).map_err(|e| match e {
        Error::EnumerationCap { count, cap, .. } => Error::EnumerationCap { facet: region.facet, count, cap },
        other => other,
    })?;
    Ok(measure * &region.abs_det)
}

/// Per-facet torus volumes, computed in parallel; order of the result follows
/// the facet order.
pub fn per_facet_volumes(region: &LiftingRegion, order: TermOrder) -> Result<Vec<Rat>> {
    region.regions.par_iter().map(|r| facet_torus_volume(r, order)).collect()
}

/// Exact `vol(R(f) / Z^n)`.
pub fn torus_volume(region: &LiftingRegion, order: TermOrder) -> Result<Rat> {
    Ok(per_facet_volumes(region, order)?.into_iter().sum())
}
