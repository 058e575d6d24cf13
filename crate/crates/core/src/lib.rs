//! Spherically symmetric spacetimes built from concentric Schwarzschild and
//! Minkowski patches glued along thin mass shells.
//!
//! The crate covers four layers:
//!
//! - [`spacetime`]: composing patches, lapse factors that map each patch's
//!   local coordinate time to the exterior time, junction diagnostics and
//!   shell surface stress-energy.
//! - [`geodesic`]: closed-form propagation of radial timelike geodesics and
//!   radial light rays across the shells, oscillation periods, sampled
//!   trajectories.
//! - [`search`]: the two-spacetime parameter search (equal proper-time to
//!   coordinate-time ratios, rational period ratio) and the meeting radius.
//! - [`switch`]: the operational event schedule and the control⊗target
//!   state-vector evolution of the resulting quantum switch.
//!
//! Geometric units throughout (G = c = 1); masses carry the unit of length.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geodesic;
pub mod numeric;
pub mod output;
pub mod search;
pub mod spacetime;
pub mod switch;

pub use error::{GeodesicError, SearchError, SpacetimeError, SwitchError};
pub use geodesic::{CycloidParams, Direction, GeodesicState, Orbit, OscillationPeriod, SegmentResult};
pub use search::{MeetingEvent, SearchConfig, SwitchSolution};
pub use spacetime::{PatchSpec, ShellSpacetime, SurfaceStress};
pub use switch::{EventSchedule, JointState, OperatorSpec};
