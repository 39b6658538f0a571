//! Scalar abstraction for the geometric kernels.
//!
//! Map graphs, shortest paths, movement and range queries are written once
//! over [`Scalar`] and instantiated for `f64` (the simulator's default) and
//! `f32`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use rand::distributions::uniform::SampleUniform;

/// Floating point coordinate type: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + SampleUniform + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal, saturating on overflow.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).unwrap_or_else(|| if v > 0.0 { Self::max_value() } else { Self::min_value() })
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
