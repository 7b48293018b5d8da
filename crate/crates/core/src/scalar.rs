use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type used by the similarity and projection math: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts a literal constant; every `Scalar` can represent these approximately.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("finite constant")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
