//! Truncated spectra of a representation: lengths, axes, crossing angles.
//!
//! Everything here works on a finite ball of words, so results are
//! truncations of the true (infinite) spectra.

mod angles;
mod axes;
mod collar;
mod dirichlet;
mod isoaxial;
mod length;

pub use angles::{
    angle_spectrum, crossing_witnesses, folded_spectrum, multiplicity_profile, symmetric_multiplicity_profile,
    AngleEntry, AngleOptions, AngleWitness, MultiplicityProfile, DEFAULT_CONJ_CAP,
};
pub use axes::{axes_set, axes_set_with_cap, AxesSet};
pub use collar::{collar_check, collar_check_with, CollarReport};
pub use dirichlet::{reduce_point, DirichletDomain, DOMAIN_DEPTH};
pub use isoaxial::{isoaxial_compare, isoaxial_compare_sets, Direction, IsoaxialReport, Verdict};
pub use length::{length_spectrum, length_spectrum_with_cap, LengthEntry};

use crate::grp::GrpError;
use crate::hypgeom::GeomError;

/// Default clustering tolerance for spectrum values.
pub const CLUSTER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectraError {
    #[error(transparent)]
    Grp(#[from] GrpError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("tolerance must be finite and non-negative")]
    InvalidTolerance,
}

/// Groups sorted values into runs whose consecutive gaps are at most `tol`.
pub(crate) fn cluster_sorted(values: &[f64], tol: f64) -> alloc::vec::Vec<core::ops::Range<usize>> {
    let mut out = alloc::vec::Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

pub(crate) fn check_tol(tol: f64) -> Result<(), SpectraError> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(SpectraError::InvalidTolerance)
    }
}
