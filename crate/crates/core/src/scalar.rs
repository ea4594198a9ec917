//! Scalar bounds for the polynomial kernel.
//!
//! Coefficient arithmetic is exact everywhere; the concrete scalars are
//! `num::BigInt` and `num::BigRational`. The bounds are expressed through
//! num-traits so the sparse polynomial types stay generic over the two.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Div, Neg, Sub};

use num::traits::{One, Signed, Zero};

/// An exact ring scalar: big integers or big rationals.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + Signed
    + Neg<Output = Self>
    + Sub<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Zero
        + One
        + Signed
        + Neg<Output = Self>
        + Sub<Output = Self>
{
}

/// A scalar whose `Div` is a true field division.
///
/// Deliberately not blanket-implemented: `BigInt` has a truncating `Div`
/// which must not be mistaken for field division.
pub trait FieldScalar: Scalar + Div<Output = Self> {}

impl FieldScalar for num::BigRational {}
