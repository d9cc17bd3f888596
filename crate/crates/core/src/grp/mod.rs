//! Free-group words, balls, conjugacy classes and representations.
//!
//! Generators are indexed from zero and written `a, b, c, …`; the uppercase
//! letter denotes the inverse. Words are always freely reduced.

mod classes;
mod presets;
mod representation;
mod word;

use alloc::string::String;

pub use classes::{conjugacy_classes, ConjClass};
pub use presets::{preset, PresetSpec};
pub use representation::{jorgensen_quantity, Representation};
pub use word::{ball_size, Ball, Letter, Word};

/// Default depth cap for rank-2 balls. Other ranks are capped at the same
/// number of words.
pub const DEFAULT_DEPTH_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GrpError {
    #[error("invalid letter {0:?} in word")]
    InvalidLetter(char),
    #[error("letter {letter} is outside rank {rank}")]
    RankMismatch { letter: char, rank: usize },
    #[error("depth must be at least 1")]
    InvalidDepth,
    #[error("depth {depth} exceeds the enumeration cap {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("invalid preset parameter: {0}")]
    InvalidParameter(String),
    #[error("generator {0} is not hyperbolic")]
    NotHyperbolic(usize),
}
