//! Truncated length spectra, axes sets and angle spectra of finitely
//! generated Fuchsian groups, together with the Fenchel–Nielsen twist flow
//! on their representations.
//!
//! The crate is `no_std` (with `alloc`). The `std` feature enables
//! `std::error::Error` integration, `parallel` spreads the angle-spectrum
//! enumeration over a rayon pool, and `serde` derives serialization for the
//! public value types.
//!
//! Module map:
//! - [`hypgeom`]: upper half-plane model, isometries, geodesics, angles.
//! - [`grp`]: free-group words, balls, conjugacy classes, representations.
//! - [`spectra`]: length/angle spectra, axes sets, Dirichlet reduction.
//! - [`twist`]: twist flow, tile recursion, angle and separation sweeps.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod grp;
pub mod hypgeom;
mod math;
pub mod spectra;
pub mod twist;

pub use grp::{ConjClass, Letter, PresetSpec, Representation, Word};
pub use hypgeom::{BoundaryPoint, Geodesic, HPoint, Isometry, Kind};
