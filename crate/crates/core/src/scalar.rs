//! Scalar traits shared by the linear algebra, plus helpers for the exact
//! rational type used everywhere on the decision path.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Ring-like scalar: enough for products, sums, comparisons and exact
/// (Bareiss) division. Implemented for every signed `num` type.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync {}

impl<T> Scalar for T where T: Clone + Debug + PartialOrd + Num + Signed + Send + Sync {}

/// Scalars where `a / b` is a true inverse for `b != 0`.
pub trait Field: Scalar {}

impl Field for BigRational {}
impl Field for Ratio<i64> {}
impl Field for Ratio<i128> {}
impl Field for f64 {}
impl Field for f32 {}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn big_rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

pub fn floor_int(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil_int(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

pub fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::CoordinateOverflow)
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rat(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q` or `p`; rejects decimals so that no float ever slips in.
pub fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Parses a comma separated list such as `1/2,1/2`.
pub fn parse_rat_vec(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(parse_rat).collect()
}

pub fn format_rat_vec(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

pub fn is_integral(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let x = rat(2, -4);
        assert_eq!(x.numer(), &BigInt::from(-1));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), int_rat(-7));
        assert_eq!(format_rat(&rat(4, 2)), "2");
        assert_eq!(format_rat(&rat(-1, 3)), "-1/3");
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("1/0").is_err());
        assert_eq!(parse_rat_vec("1/2, -1").unwrap(), vec![rat(1, 2), int_rat(-1)]);
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(floor_int(&rat(-1, 2)), BigInt::from(-1));
        assert_eq!(ceil_int(&rat(-1, 2)), BigInt::from(0));
        assert_eq!(common_denominator(&[rat(1, 4), rat(1, 6)]), BigInt::from(12));
    }
}
