//! Scalar abstractions shared by the linear algebra, LP and geometry layers.
//!
//! Every algorithm in this crate is written against [`Field`] (ordered fields)
//! or [`RingInt`] (Euclidean integer rings). The exact instantiations
//! [`crate::Rational`] and [`crate::Integer`] are what the certificates are
//! meant for; the floating-point impls exist for quick exploratory runs and
//! treat values below a fixed tolerance as zero.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, Zero};

pub trait Field: Clone + Debug + std::fmt::Display + PartialOrd + Num + Signed + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Zero test used for pivots and certificate checks.
    fn is_negligible(&self) -> bool;

    /// Whether arithmetic is exact (no rounding).
    fn is_exact() -> bool;

    fn is_strictly_positive(&self) -> bool {
        !self.is_negligible() && self.is_positive()
    }

    fn is_strictly_negative(&self) -> bool {
        !self.is_negligible() && self.is_negative()
    }

    /// -1, 0 or +1.
    fn sign_i8(&self) -> i8 {
        if self.is_negligible() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn is_exact() -> bool {
        true
    }
}

impl Field for Ratio<i128> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n as i128)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num as i128, den as i128)
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn is_exact() -> bool {
        true
    }
}

impl Field for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }
    fn is_exact() -> bool {
        false
    }
}

impl Field for f32 {
    fn from_i64(n: i64) -> Self {
        n as f32
    }
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-5
    }
    fn is_exact() -> bool {
        false
    }
}

/// Integers with Euclidean division, as needed by Smith normal form.
pub trait RingInt: Clone + Debug + Ord + num_integer::Integer + Signed + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;

    /// Quotient rounded towards negative infinity.
    fn floor_div(&self, other: &Self) -> Self {
        self.div_floor(other)
    }
}

impl RingInt for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl RingInt for i64 {
    fn from_i64(n: i64) -> Self {
        n
    }
}

impl RingInt for i128 {
    fn from_i64(n: i64) -> Self {
        n as i128
    }
}
