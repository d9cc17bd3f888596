//! Upper half-plane model of the hyperbolic plane.
//!
//! Isometries are elements of PSL(2,R) stored as unimodular real matrices
//! with a canonical sign. Geodesics are oriented pairs of ideal points.

mod isometry;
mod measure;
mod points;

pub use isometry::{commutator_trace, Apply, Isometry, Kind};
pub use measure::{
    angle, angle_cross_ratio, angle_trace, angle_within, crossing, crossing_within,
    direction_angle, direction_angle_within, distance, geodesic_distance,
    geodesic_distance_within, interleaved, interleaved_within, trace_angle_rhs,
};
pub use points::{BoundaryPoint, Geodesic, HPoint};

/// Tolerance on `||tr| - 2|` separating hyperbolic, parabolic and elliptic.
pub const CLASSIFY_EPS: f64 = 1e-9;
/// Determinant drift tolerated before renormalizing, and the identity test.
pub const NORMALIZE_EPS: f64 = 1e-12;
/// Default comparison tolerance for derived quantities.
pub const COMPARE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("isometry is not hyperbolic")]
    NotHyperbolic,
    #[error("matrix entries must be finite with positive determinant")]
    InvalidMatrix,
    #[error("point must be finite and lie strictly in the upper half-plane")]
    OffHalfPlane,
    #[error("geodesic endpoints must be distinct")]
    DegenerateGeodesic,
    #[error("geodesics share an ideal endpoint")]
    SharedEndpoint,
    #[error("geodesics do not cross")]
    NoCrossing,
    #[error("axes do not cross")]
    AxesDisjoint,
}
