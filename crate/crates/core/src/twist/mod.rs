//! Fenchel–Nielsen twist along a generator curve.
//!
//! The twist acts algebraically: a generator crossing the curve `k` times
//! (signed) is pre-multiplied by the translation of length `k·t` along the
//! curve's axis. The tile-by-tile construction is kept as a cross-check in
//! [`tile_recursion_check`].

mod recursion;
mod sweep;

use alloc::vec;
use alloc::vec::Vec;

pub use recursion::{dehn_image, tile_recursion_check, TwistedWord, RECURSION_MAX_LEN};
pub use sweep::{
    angle_sweep, boundary_limits, separation_sweep, separating_lift, BoundaryLimit, SweepReport,
    SweepSample,
};

use crate::grp::{GrpError, Representation, Word};
use crate::hypgeom::{BoundaryPoint, GeomError, Isometry};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TwistError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Grp(#[from] GrpError),
    #[error("twisted element is not hyperbolic at t = {t}")]
    NotHyperbolic { t: f64 },
    #[error("the pair does not cross at t = 0")]
    NoCrossingAtBase,
    #[error("no lift of the curve separates the two axes")]
    NotSeparated,
    #[error("word length {len} exceeds the recursion limit {cap}")]
    DepthCap { len: usize, cap: usize },
    #[error("invalid twist curve: {0}")]
    InvalidCurve(&'static str),
}

/// The simple curve to twist along: a generator, and for each generator
/// the signed number of times it crosses the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TwistCurve {
    pub generator: usize,
    pub incidence: Vec<i32>,
}

impl TwistCurve {
    pub fn new(generator: usize, incidence: Vec<i32>) -> Result<Self, TwistError> {
        if generator >= incidence.len() {
            return Err(TwistError::InvalidCurve("curve generator outside the rank"));
        }
        if incidence[generator] != 0 {
            return Err(TwistError::InvalidCurve("the curve does not cross itself"));
        }
        Ok(Self {
            generator,
            incidence,
        })
    }

    /// Curve `a`; `b` crosses it once, positively.
    pub fn rank_two() -> Self {
        Self {
            generator: 0,
            incidence: vec![0, 1],
        }
    }

    /// Reads the incidences off the geometry: a generator whose axis crosses
    /// the curve axis gets `+1` when its repelling end lies to the left of
    /// the curve, `-1` otherwise, and `0` when the axes are disjoint.
    pub fn from_crossings(rep: &Representation, generator: usize) -> Result<Self, TwistError> {
        if generator >= rep.rank() {
            return Err(TwistError::InvalidCurve("curve generator outside the rank"));
        }
        let curve = rep.generator(generator).axis()?;
        let incidence = (0..rep.rank())
            .map(|i| {
                if i == generator {
                    return Ok(0);
                }
                let ax = rep.generator(i).axis()?;
                Ok(match crate::hypgeom::interleaved(&curve, &ax) {
                    Ok(true) if curve.is_left(ax.repelling()) => 1,
                    Ok(true) => -1,
                    _ => 0,
                })
            })
            .collect::<Result<Vec<_>, GeomError>>()?;
        Ok(Self {
            generator,
            incidence,
        })
    }

    /// Signed crossings of a word with the curve.
    pub fn word_incidence(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| {
                let k = i64::from(*self.incidence.get(l.generator()).unwrap_or(&0));
                if l.is_inverse() {
                    -k
                } else {
                    k
                }
            })
            .sum()
    }
}

/// A representation together with the curve to twist along.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistFamily {
    base: Representation,
    curve: TwistCurve,
}

impl TwistFamily {
    pub fn new(base: Representation, curve: TwistCurve) -> Result<Self, TwistError> {
        if curve.incidence.len() != base.rank() {
            return Err(TwistError::InvalidCurve("incidence length differs from the rank"));
        }
        Ok(Self { base, curve })
    }

    pub fn base(&self) -> &Representation {
        &self.base
    }

    pub fn curve(&self) -> &TwistCurve {
        &self.curve
    }

    pub fn curve_element(&self) -> Isometry {
        self.base.generator(self.curve.generator)
    }

    /// Length of the curve, invariant along the flow.
    pub fn curve_length(&self) -> f64 {
        self.curve_element()
            .translation_length()
            .expect("generators are hyperbolic")
    }

    /// The isometry taking the curve frame (curve axis `0 → ∞`) to the
    /// frame of the base representation.
    pub fn curve_frame(&self) -> Isometry {
        Isometry::frame(&self.curve_element().axis().expect("generators are hyperbolic"))
    }

    /// The same family conjugated so the curve axis is `0 → ∞`. Twists are
    /// then diagonal, which keeps long sweeps well conditioned; angles and
    /// distances are unchanged.
    pub fn in_curve_frame(&self) -> Self {
        let f = self.curve_frame().inverse();
        let mut gens: Vec<Isometry> = self.base.generators().iter().map(|g| g.conjugate_by(&f)).collect();
        let c = self.curve.generator;
        let lambda = crate::math::exp(self.curve_length() / 2.0);
        gens[c] = Isometry::diagonal(lambda).expect("nonzero");
        Self {
            base: self
                .base
                .with_generators(gens)
                .expect("conjugation preserves hyperbolicity"),
            curve: self.curve.clone(),
        }
    }

    /// Translation by `t` along the curve axis.
    pub fn translation(&self, t: f64) -> Isometry {
        translation_along(&self.curve_element(), t).expect("generators are hyperbolic")
    }

    /// The representation twisted for time `t`.
    pub fn twist_rep(&self, t: f64) -> Result<Representation, TwistError> {
        let gens = self
            .base
            .generators()
            .iter()
            .zip(&self.curve.incidence)
            .map(|(g, &k)| {
                if k == 0 {
                    *g
                } else {
                    self.translation(f64::from(k) * t).compose(g)
                }
            })
            .collect();
        self.base
            .with_generators(gens)
            .map_err(|_| TwistError::NotHyperbolic { t })
    }

    /// Axis endpoints of `w` in the twisted representation, as
    /// `(repelling, attracting)`.
    pub fn boundary_extension(
        &self,
        w: &Word,
        t: f64,
    ) -> Result<(BoundaryPoint, BoundaryPoint), TwistError> {
        let g = self.twist_rep(t)?.evaluate(w);
        let ax = g.axis().map_err(|_| TwistError::NotHyperbolic { t })?;
        Ok((ax.repelling(), ax.attracting()))
    }
}

/// The hyperbolic isometry with the same oriented axis as `g` translating
/// by `t` (backwards for `t < 0`).
pub fn translation_along(g: &Isometry, t: f64) -> Result<Isometry, GeomError> {
    let axis = g.axis()?;
    if t == 0.0 {
        return Ok(Isometry::IDENTITY);
    }
    Ok(Isometry::translation_along_geodesic(&axis, t))
}

/// Shorthand for [`TwistFamily::twist_rep`].
pub fn twist_rep(fam: &TwistFamily, t: f64) -> Result<Representation, TwistError> {
    fam.twist_rep(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::preset;

    fn family() -> TwistFamily {
        TwistFamily::new(preset("modular_torus").unwrap(), TwistCurve::rank_two()).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn translation_along_examples() {
        let d = Isometry::diagonal(2.0).unwrap();
        assert_eq!(translation_along(&d, 0.0).unwrap(), Isometry::IDENTITY);
        let t = translation_along(&d, 2.0 * core::f64::consts::LN_2).unwrap();
        assert!(t.approx_eq(&d, 1e-14));
        let g = preset("modular_torus").unwrap().generator(1);
        let s = translation_along(&g, 0.7).unwrap();
        let u = translation_along(&g, -1.9).unwrap();
        assert!(s.compose(&u).approx_eq(&translation_along(&g, -1.2).unwrap(), 1e-12));
        let p = Isometry::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(translation_along(&p, 1.0), Err(GeomError::NotHyperbolic));
    }

    #[test]
    fn twist_at_zero_is_base() {
        let fam = family();
        assert_eq!(fam.twist_rep(0.0).unwrap().generators(), fam.base().generators());
    }

    #[test]
    fn twist_by_curve_length_is_dehn_twist() {
        let fam = family();
        let rep = fam.twist_rep(fam.curve_length()).unwrap();
        let ab = fam.base().evaluate(&w("ab"));
        assert!(rep.generator(1).approx_eq(&ab, 1e-12));
        assert!(rep.generator(0).approx_eq(&fam.base().generator(0), 0.0));
    }

    #[test]
    fn incidence_from_geometry() {
        let rep = preset("modular_torus").unwrap();
        assert_eq!(TwistCurve::from_crossings(&rep, 0).unwrap(), TwistCurve::rank_two());
        let sch = preset("schottky(2,2,3)").unwrap();
        assert_eq!(TwistCurve::from_crossings(&sch, 0).unwrap().incidence, vec![0, 0]);
        assert_eq!(TwistCurve::rank_two().word_incidence(&w("abAbb")), 3);
    }

    #[test]
    fn stabilizer_endpoints_are_fixed() {
        let fam = family();
        for word in ["a", "Bab", "aBab", "BaabA"] {
            let base = fam.boundary_extension(&w(word), 0.0).unwrap();
            for t in [-3.0, 2.5] {
                let moved = fam.boundary_extension(&w(word), t).unwrap();
                assert!(moved.0.approx_eq(base.0, 1e-9) && moved.1.approx_eq(base.1, 1e-9), "{word}");
            }
        }
    }

    #[test]
    fn curve_frame_preserves_traces() {
        let fam = family();
        let framed = fam.in_curve_frame();
        for word in ["ab", "aBB", "abAB"] {
            let x = fam.twist_rep(1.3).unwrap().evaluate(&w(word)).abs_trace();
            let y = framed.twist_rep(1.3).unwrap().evaluate(&w(word)).abs_trace();
            assert!((x - y).abs() < 1e-9 * x.max(1.0), "{word}");
        }
        let c = framed.curve_element().axis().unwrap();
        assert_eq!(c.attracting(), BoundaryPoint::Infinity);
    }
}
