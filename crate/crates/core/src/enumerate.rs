//! Bounded lattice-point enumeration in rational polyhedra.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::scalar::{ceil_int, floor_int};
use crate::IntVec;

pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

static ENUM_CAP: AtomicU64 = AtomicU64::new(DEFAULT_ENUM_CAP);

/// Maximum number of candidates any enumeration may visit.
pub fn enumeration_cap() -> u64 {
    ENUM_CAP.load(Ordering::Relaxed)
}

pub fn set_enumeration_cap(cap: u64) {
    ENUM_CAP.store(cap, Ordering::Relaxed);
}

/// `normal . x <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: IntVec,
    pub rhs: BigRational,
}

impl Halfspace {
    pub fn new(normal: IntVec, rhs: BigRational) -> Self {
        Halfspace { normal, rhs }
    }

    /// For integer points, `c.x < d` is the same as `c.x <= ceil(d) - 1`.
    pub fn strict(normal: IntVec, rhs: &BigRational) -> Self {
        let bound = ceil_int(rhs) - BigInt::one();
        Halfspace { normal, rhs: BigRational::from_integer(bound) }
    }

    pub fn equality(normal: IntVec, rhs: BigRational) -> [Self; 2] {
        let neg = normal.iter().map(|x| -x).collect();
        [Halfspace::new(normal, rhs.clone()), Halfspace::new(neg, -rhs)]
    }
}

/// Closed integer box `lo <= x <= hi`; empty when some `lo_i > hi_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl IntBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        assert_eq!(lo.len(), hi.len());
        IntBox { lo, hi }
    }

    /// Smallest integer box containing the given rational points.
    pub fn around(points: &[Vec<BigRational>]) -> Result<Self> {
        let n = points.first().map_or(0, Vec::len);
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for k in 0..n {
            let min = points.iter().map(|p| &p[k]).min().expect("nonempty");
            let max = points.iter().map(|p| &p[k]).max().expect("nonempty");
            lo.push(floor_int(min).to_i64().ok_or(Error::CoordinateOverflow)?);
            hi.push(ceil_int(max).to_i64().ok_or(Error::CoordinateOverflow)?);
        }
        Ok(IntBox { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    /// Number of integer points, as an exact integer.
    pub fn count(&self) -> BigInt {
        if self.is_empty() {
            return BigInt::from(0);
        }
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| BigInt::from(*h) - BigInt::from(*l) + 1)
            .product()
    }

    /// Fails with `BOX_TOO_LARGE` when the box exceeds the enumeration cap.
    pub fn check_cap(&self) -> Result<()> {
        let cap = enumeration_cap();
        let count = self.count();
        if count > BigInt::from(cap) {
            return Err(Error::BoxTooLarge { count: count.to_string(), cap });
        }
        Ok(())
    }

    /// Visits every point in lexicographic order.
    pub fn for_each(&self, mut visit: impl FnMut(&[i64])) {
        if self.is_empty() {
            return;
        }
        let n = self.dim();
        let mut x = self.lo.clone();
        loop {
            visit(&x);
            let mut k = n;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                if x[k] < self.hi[k] {
                    x[k] += 1;
                    break;
                }
                x[k] = self.lo[k];
            }
        }
    }
}

/// Integer halfspace with bounds reduced to machine integers for the scan.
struct Compiled {
    normal: Vec<i128>,
    bound: i128,
}

fn compile(ineqs: &[Halfspace]) -> Result<Vec<Compiled>> {
    ineqs
        .iter()
        .map(|h| {
            let normal = h
                .normal
                .iter()
                .map(|c| c.to_i128().ok_or(Error::CoordinateOverflow))
                .collect::<Result<Vec<_>>>()?;
            let bound = floor_int(&h.rhs).to_i128().ok_or(Error::CoordinateOverflow)?;
            Ok(Compiled { normal, bound })
        })
        .collect()
}

fn satisfies(ineqs: &[Compiled], x: &[i64]) -> bool {
    ineqs.iter().all(|h| {
        let lhs: i128 = h.normal.iter().zip(x).map(|(c, v)| c * *v as i128).sum();
        lhs <= h.bound
    })
}

/// Integer points of the box satisfying every inequality, in lexicographic order.
pub fn enumerate_lattice_points(ineqs: &[Halfspace], bbox: &IntBox) -> Result<Vec<IntVec>> {
    let mut out = Vec::new();
    scan(ineqs, bbox, |x| {
        out.push(x.iter().map(|&v| BigInt::from(v)).collect());
        true
    })?;
    Ok(out)
}

/// First integer point of the box satisfying every inequality.
pub fn first_lattice_point(ineqs: &[Halfspace], bbox: &IntBox) -> Result<Option<IntVec>> {
    let mut found = None;
    scan(ineqs, bbox, |x| {
        found = Some(x.iter().map(|&v| BigInt::from(v)).collect());
        false
    })?;
    Ok(found)
}

/// Calls `hit` on every feasible point until it returns `false`.
fn scan(ineqs: &[Halfspace], bbox: &IntBox, mut hit: impl FnMut(&[i64]) -> bool) -> Result<()> {
    bbox.check_cap()?;
    let compiled = compile(ineqs)?;
    let mut going = true;
    bbox.for_each(|x| {
        if going && satisfies(&compiled, x) {
            going = hit(x);
        }
    });
    Ok(())
}
