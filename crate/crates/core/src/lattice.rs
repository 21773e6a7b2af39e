//! Integer lattice utilities built on the Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{generalized_cross, Matrix};
use crate::scalar::common_denominator;
use crate::{IntMat, IntVec};

/// Integer vector parallel to `v` (same direction) with coprime entries.
pub fn primitive_normal(v: &[BigRational]) -> Result<IntVec> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let den = common_denominator(v);
    let ints: IntVec = v.iter().map(|x| (x * &den).to_integer()).collect();
    Ok(make_primitive(&ints))
}

/// Divides an integer vector by the gcd of its entries.
pub fn make_primitive(v: &[BigInt]) -> IntVec {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// gcd of the entries (non-negative, zero for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hnf {
    /// Row-style Hermite normal form of the input.
    pub h: IntMat,
    /// Unimodular transform with `u * input = h`.
    pub u: IntMat,
    /// Column index of each nonzero row's leading entry.
    pub pivots: Vec<usize>,
}

/// Row-style Hermite normal form: `U M = H` with `U` unimodular, `H` in echelon
/// form with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hnf(m: &IntMat) -> Hnf {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMat::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (a_g, b_g) = (&a / &g, &b / &g);
            // [[s, t], [-b/g, a/g]] has determinant one.
            combine_rows(&mut h, r, i, &s, &t, &(-&b_g), &a_g);
            combine_rows(&mut u, r, i, &s, &t, &(-&b_g), &a_g);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let piv = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&piv);
            if q.is_zero() {
                continue;
            }
            axpy_row(&mut h, i, r, &q);
            axpy_row(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hnf { h, u, pivots }
}

/// Rows `(p, q)` become `(s p + t q, x p + y q)`.
fn combine_rows(m: &mut IntMat, p: usize, q: usize, s: &BigInt, t: &BigInt, x: &BigInt, y: &BigInt) {
    for j in 0..m.cols() {
        let a = m[(p, j)].clone();
        let b = m[(q, j)].clone();
        m[(p, j)] = s * &a + t * &b;
        m[(q, j)] = x * &a + y * &b;
    }
}

fn negate_row(m: &mut IntMat, r: usize) {
    for j in 0..m.cols() {
        m[(r, j)] = -m[(r, j)].clone();
    }
}

/// Row `i` -= `q` * row `r`.
fn axpy_row(m: &mut IntMat, i: usize, r: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let v = &m[(i, j)] - q * &m[(r, j)];
        m[(i, j)] = v;
    }
}

/// A sublattice of `Z^n` given by an HNF-reduced basis (rows).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntLattice {
    pub dim: usize,
    pub basis: Vec<IntVec>,
}

impl IntLattice {
    /// Lattice spanned by the given integer vectors (which may be dependent).
    pub fn spanned_by(dim: usize, generators: &[IntVec]) -> Self {
        if generators.is_empty() {
            return IntLattice { dim, basis: Vec::new() };
        }
        let red = hnf(&Matrix::from_rows(generators.to_vec()));
        let basis = red.h.row_vecs().into_iter().take(red.pivots.len()).collect();
        IntLattice { dim, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Exact membership test by back-substitution through the echelon basis.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Integer coefficients of `x` in the basis, if `x` lies in the lattice.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<IntVec> {
        if x.len() != self.dim {
            return None;
        }
        let mut rest = x.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for row in &self.basis {
            let p = row.iter().position(|v| !v.is_zero())?;
            if rest[..p].iter().any(|v| !v.is_zero()) {
                return None;
            }
            let (q, rem) = rest[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return None;
            }
            for (r, b) in rest.iter_mut().zip(row) {
                *r -= &q * b;
            }
            coeffs.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn combine(&self, coeffs: &[BigInt]) -> IntVec {
        let mut out = vec![BigInt::zero(); self.dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }
}

/// The lattice `{x in Z^n : a.x = 0}` for a primitive integer vector `a`.
pub fn kernel_lattice(a: &[BigInt]) -> Result<IntLattice> {
    let g = content(a);
    if !g.is_one() {
        return Err(Error::NotPrimitive(g.to_string()));
    }
    let n = a.len();
    let col = Matrix::from_columns(&[a.to_vec()]);
    let red = hnf(&col);
    // u a = (1, 0, ..., 0): the remaining rows of u span the kernel.
    let gens: Vec<IntVec> = red.u.row_vecs().into_iter().skip(1).collect();
    let lattice = IntLattice::spanned_by(n, &gens);
    debug_assert_eq!(lattice.rank(), n - 1);
    Ok(lattice)
}

/// Checks that a rank `n-1` lattice is the full kernel of the primitive
/// vector `a`: each basis vector is orthogonal to `a` and the maximal minors
/// of the basis are `+-a` (index one).
pub fn is_full_kernel(lattice: &IntLattice, a: &[BigInt]) -> bool {
    if lattice.rank() + 1 != a.len() {
        return false;
    }
    let orthogonal = lattice
        .basis
        .iter()
        .all(|b| b.iter().zip(a).map(|(x, y)| x * y).sum::<BigInt>().is_zero());
    let minors = generalized_cross(&lattice.basis);
    let neg: IntVec = a.iter().map(|x| -x).collect();
    orthogonal && (minors == a || minors == neg)
}

/// A unimodular integer matrix whose first row is the primitive vector `c`.
pub fn unimodular_completion(c: &[BigInt]) -> Result<IntMat> {
    let g = content(c);
    if !g.is_one() {
        return Err(Error::NotPrimitive(g.to_string()));
    }
    let red = hnf(&Matrix::from_columns(&[c.to_vec()]));
    // u c = e1, so c is the first column of u^{-1} and the first row of its transpose.
    let inv = unimodular_inverse(&red.u)?;
    Ok(inv.transpose())
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(u: &IntMat) -> Result<IntMat> {
    let d = u.det();
    if d.abs() != BigInt::one() {
        return Err(Error::Singular);
    }
    let r = u.map(|x| BigRational::from_integer(x.clone())).inverse()?;
    Ok(r.map(|x| x.to_integer()))
}
