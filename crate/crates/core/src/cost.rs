//! Numeric cost values.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub, SubAssign};

/// A totally ordered numeric type usable as an edit cost.
///
/// The solver only ever adds and subtracts values that already appear in the
/// instance, so integer types give exact results and floating point types
/// stay within a few ulps of the exact answer.
pub trait Cost:
    Copy
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + SubAssign
    + Sum
    + 'static
{
    fn zero() -> Self;

    /// A value strictly larger than any reduced cost the solver produces.
    fn infinity() -> Self;

    /// Finite and non-negative.
    fn is_admissible(self) -> bool;

    fn to_f64(self) -> f64;

    /// Lossy conversion; integer types round to the nearest value.
    fn from_f64(x: f64) -> Self;

    fn abs_diff(self, other: Self) -> Self {
        if self >= other {
            self - other
        } else {
            other - self
        }
    }

    /// `|self - other| <= tol`.
    fn approx_eq(self, other: Self, tol: Self) -> bool {
        self.abs_diff(other) <= tol
    }
}

macro_rules! int_cost {
    ($($t:ty),*) => {$(
        impl Cost for $t {
            fn zero() -> Self { 0 }
            fn infinity() -> Self { <$t>::MAX }
            fn is_admissible(self) -> bool { self >= 0 }
            fn to_f64(self) -> f64 { self as f64 }
            fn from_f64(x: f64) -> Self { x.round() as $t }
        }
    )*};
}

macro_rules! float_cost {
    ($($t:ty),*) => {$(
        impl Cost for $t {
            fn zero() -> Self { 0.0 }
            fn infinity() -> Self { <$t>::INFINITY }
            fn is_admissible(self) -> bool { self.is_finite() && self >= 0.0 }
            fn to_f64(self) -> f64 { self as f64 }
            fn from_f64(x: f64) -> Self { x as $t }
        }
    )*};
}

int_cost!(i32, i64);
float_cost!(f32, f64);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(3i64.is_admissible());
        assert!(!(-1i64).is_admissible());
        assert!(0.0f64.is_admissible());
        assert!(!f64::NAN.is_admissible());
        assert!(!f64::INFINITY.is_admissible());
        assert!(!(-0.5f64).is_admissible());
    }

    #[test]
    fn tolerance_comparison() {
        assert!(1.0f64.approx_eq(1.0 + 1e-12, 1e-9));
        assert!(!1.0f64.approx_eq(1.1, 1e-9));
        assert!(5i64.approx_eq(5, 0));
        assert!(!5i64.approx_eq(6, 0));
        assert_eq!(3i64.abs_diff(7), 4);
    }
}
