//! Coefficient field abstraction.
//!
//! Every algebraic structure in this crate is generic over a [`Scalar`]. The
//! verification routines are only meaningful over an exact field, so the
//! crate-root aliases instantiate everything with [`BigRational`]. `f64` is
//! supported for quick numerical evaluation of representation matrices.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    fn from_rational(q: &BigRational) -> Self;

    /// `n / d`; `d` must be nonzero.
    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    /// Whether equality tests on this type are exact.
    fn is_exact() -> bool;
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn is_exact() -> bool {
        true
    }
}

/// Fixed-width rationals. Intermediate overflow panics in debug builds only,
/// so prefer [`BigRational`] for anything but small experiments.
impl Scalar for Rational64 {
    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }

    fn from_rational(q: &BigRational) -> Self {
        let n = q.numer().to_i64().expect("numerator exceeds i64");
        let d = q.denom().to_i64().expect("denominator exceeds i64");
        Rational64::new(n, d)
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn is_exact() -> bool {
        false
    }
}

/// Parses `"p"`, `"-p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Canonical `"p/q"` form (`"p"` for integers).
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
