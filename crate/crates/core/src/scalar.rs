//! Scalar bounds shared by the weighted parts of the crate.
//!
//! Vertex weights and path-vector coefficients are generic over the scalar
//! type. `f64` is the everyday choice; `Ratio<i64>` gives exact arithmetic
//! for comparisons that must not round.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Float, Num};

/// Ordered field-like scalar: `f32`, `f64`, `Ratio<i64>`, `i64`, ...
pub trait Scalar: Num + Copy + PartialOrd + Neg<Output = Self> + Debug + Send + Sync {}

impl<T> Scalar for T where T: Num + Copy + PartialOrd + Neg<Output = T> + Debug + Send + Sync {}

/// Scalars with a square root, needed for norms.
pub trait RealScalar: Scalar + Float {}

impl<T> RealScalar for T where T: Scalar + Float {}

/// Largest element, `None` when empty. `PartialOrd` is enough since callers
/// only feed finite values.
pub(crate) fn max_of<T: Scalar>(values: impl IntoIterator<Item = T>) -> Option<T> {
    values.into_iter().fold(None, |acc, x| match acc {
        Some(m) if m >= x => Some(m),
        _ => Some(x),
    })
}
