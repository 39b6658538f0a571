//! Deterministic fixed-step simulator for delay tolerant networks in a
//! post-disaster city: map-constrained movement, short range radio
//! contacts, store-carry-forward routing and delivery reports.

// `!(x > 0.0)` is used on purpose so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod buffer;
pub mod config;
pub mod engine;
pub mod geo;
pub mod metrics;
pub mod radio;
pub mod rng;
pub mod routing;
pub mod scalar;
pub mod traffic;

pub use buffer::{Buffer, Message, MsgId, NodeId, StoredCopy};
pub use config::{load_scenario, parse_scenario, validate, ConfigError, Scenario, Violation};
pub use engine::{run, sweep, MapSet, RunResult, SimError, Simulation};
pub use geo::MapGenError;
pub use routing::RouterKind;
pub use scalar::Scalar;

/// Map coordinates used by the simulator.
pub type Point2 = geo::Point<f64>;
/// Single precision map coordinates.
pub type Point2f = geo::Point<f32>;
pub type MapGraph = geo::Graph<f64>;
pub type MapGraph32 = geo::Graph<f32>;
pub type MapPath = geo::Path<f64>;
pub type MovementState = geo::Mover<f64>;
pub type MovementState32 = geo::Mover<f32>;
pub type RadioClass = radio::RadioClass<f64>;
