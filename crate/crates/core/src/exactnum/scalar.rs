//! Scalar bound shared by the exact and floating-point code paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// A field of characteristic zero usable as the coefficient ring of a
/// cyclotomic number.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;

    /// Exact zero test for exact types; a tolerance test for floats.
    fn is_negligible(&self) -> bool;

    fn to_f64(&self) -> f64;

    /// Text used inside the `(n; c_0, ...)` serialization.
    fn render(&self) -> String;
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }
            fn is_negligible(&self) -> bool {
                self.abs() < $eps
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn render(&self) -> String {
                format!("{}", self)
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);
