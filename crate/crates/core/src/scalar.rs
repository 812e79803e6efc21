//! Scalar abstraction.
//!
//! Every exact computation in the crate is generic over an integer type `T: Int`.
//! The crate root fixes `T = BigInt` for the public aliases; machine integers
//! (`i64`, `i128`) are used for hot enumeration loops where entries are
//! known to stay small.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as a lattice coordinate.
pub trait Int:
    Clone
    + Debug
    + Display
    + Hash
    + Ord
    + Send
    + Sync
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("integer type cannot hold an i64 value")
    }

    /// Converts between integer types, `None` on overflow.
    fn convert<U: Int>(&self) -> Option<U> {
        match self.to_i128() {
            Some(v) => U::from_i128(v),
            None => None,
        }
    }
}

impl<T> Int for T where
    T: Clone
        + Debug
        + Display
        + Hash
        + Ord
        + Send
        + Sync
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + 'static
{
}

/// Reduced fraction with positive denominator.
pub type Rational<T> = Ratio<T>;

/// Floor division rounding towards negative infinity.
pub fn div_floor<T: Int>(a: &T, b: &T) -> T {
    a.div_floor(b)
}

/// Ceiling division.
pub fn div_ceil<T: Int>(a: &T, b: &T) -> T {
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + T::one()
    }
}
