//! Radial timelike geodesics and radial light rays.

pub mod cycloid;
pub mod null;
pub mod orbit;
pub mod segment;

pub use cycloid::{cycloid_state, drop_energy, CycloidParams, CycloidPoint};
pub use null::{diametral_crossing_time, null_crossing_time, null_span_local, static_exchange, static_proper_time};
pub use orbit::{
    oscillation_period, sample_orbit, trajectory, Orbit, OrbitPoint, OscillationPeriod, QuarterSegment, SegmentSummary,
    Side,
};
pub use segment::{cross_shell, segment_minkowski, segment_schwarzschild, Direction, GeodesicState, SegmentResult};
