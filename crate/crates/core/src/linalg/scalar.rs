//! The exact integer scalar the linear algebra is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::ToBigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integers: `i64`, `i128` and `BigInt` all qualify.
///
/// Fixed-width scalars are only safe when the caller bounds the entries;
/// everything that cannot bound them uses [`crate::IntMatrix`] (`BigInt`).
pub trait IntScalar:
    Clone
    + Debug
    + Display
    + FromStr
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + ToBigInt
    + 'static
{
    fn from_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("every IntScalar holds an i64")
    }
}

impl<T> IntScalar for T where
    T: Clone
        + Debug
        + Display
        + FromStr
        + Eq
        + Ord
        + Hash
        + Send
        + Sync
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + ToBigInt
        + 'static
{
}
