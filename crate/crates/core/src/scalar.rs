//! Scalar traits the generic linear algebra and field code is written against.
//!
//! The exact instantiation is [`crate::Rat`]; `f64` also satisfies the bounds
//! and is handy for quick numeric cross-checks.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num, Signed};

/// A field element usable in elimination and Gram-Schmidt.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive {
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every i64 embeds into the scalar field")
    }
}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> + FromPrimitive {}

/// A scalar with a total order compatible with its arithmetic.
pub trait OrderedScalar: Scalar + Signed + PartialOrd {}

impl<T> OrderedScalar for T where T: Scalar + Signed + PartialOrd {}
