//! Path maps and map-constrained movement.

mod graph;
mod mobility;
mod synth;
mod wkt;

pub use graph::{Graph, GraphBuilder, Path, MERGE_TOLERANCE};
pub use mobility::{Mover, MAX_REDRAWS};
pub use synth::{generate_synthetic_map, MapGenError, Rect, SynthParams, SyntheticMap, ZoneParams};
pub use wkt::{parse_wkt, write_wkt, WktError};

use crate::Scalar;

/// A point in world coordinates (meters).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn distance_sq(&self, other: &Point<T>) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn distance(&self, other: &Point<T>) -> T {
        self.distance_sq(other).sqrt()
    }

    /// Point at fraction `t` of the way from `self` to `other`.
    pub fn lerp(&self, other: &Point<T>, t: T) -> Point<T> {
        Point {
            x: self.x + (other.x - self.x) * t,
            y: self.y + (other.y - self.y) * t,
        }
    }

    /// Distance from `self` to the segment `a`-`b`.
    pub fn distance_to_segment(&self, a: &Point<T>, b: &Point<T>) -> T {
        let len_sq = a.distance_sq(b);
        if len_sq == T::zero() {
            return self.distance(a);
        }
        let t = ((self.x - a.x) * (b.x - a.x) + (self.y - a.y) * (b.y - a.y)) / len_sq;
        let t = t.max(T::zero()).min(T::one());
        self.distance(&a.lerp(b, t))
    }
}
