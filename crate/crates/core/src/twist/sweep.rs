use alloc::vec::Vec;

use super::{TwistError, TwistFamily};
use crate::grp::{Ball, Word};
use crate::hypgeom::{
    angle_within, crossing, direction_angle_within, geodesic_distance_within,
    interleaved, Apply, BoundaryPoint, Geodesic, HPoint, Isometry,
};
use crate::math;

/// Conjugator depth searched for a curve lift separating two axes.
const SEPARATION_DEPTH: usize = 4;

/// One grid point of an angle sweep.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepSample {
    pub t: f64,
    /// Counter-clockwise angle between the lines; `None` when the axes no
    /// longer cross.
    pub angle: Option<f64>,
    /// Angle between the forward directions, in the orientation chosen for
    /// the report.
    pub direction: Option<f64>,
    /// Least chordal gap between opposite-sign endpoints `β₁^± , β₂^∓`.
    pub cross_gap: Option<f64>,
    /// Least chordal gap between same-sign endpoints `β₁^± , β₂^±`.
    pub same_gap: Option<f64>,
}

/// Angle of a crossing pair along the twist flow.
///
/// Endpoint gaps are chordal distances in the disk model centered at the
/// crossing point at `t = 0`. The second geodesic is oriented so that the
/// direction angle stays as far from `π` as possible; `delta` is that
/// distance, and `delta2`/`delta4` are the least cross/overall endpoint
/// gaps, which bound the angle through `tan(φ/2) ≤ 2/δ₂`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepReport {
    pub grid: Vec<f64>,
    pub samples: Vec<SweepSample>,
    pub inf_angle: f64,
    pub sup_angle: f64,
    pub inf_direction: f64,
    pub sup_direction: f64,
    /// Whether the second geodesic was reversed.
    pub reversed: bool,
    /// `π − sup_direction`.
    pub delta: f64,
    pub delta2: f64,
    pub delta4: f64,
    /// Gap from `π` guaranteed by the endpoint bound, `π − 2·atan(2/δ₂)`.
    pub bound_delta: f64,
    /// `tan(φ/2) ≤ 2/δ₂` at every sample.
    pub bound_holds: bool,
    /// Grid points where the axes stopped crossing.
    pub lost_crossing: Vec<f64>,
}

impl SweepReport {
    /// Angles at the grid points, `NaN` where the crossing was lost.
    pub fn angles(&self) -> Vec<f64> {
        self.samples
            .iter()
            .map(|s| s.angle.unwrap_or(f64::NAN))
            .collect()
    }
}

/// Maps a boundary point to the unit circle, centered at `z0`.
fn disk(p: BoundaryPoint, z0: &HPoint) -> (f64, f64) {
    match p {
        BoundaryPoint::Infinity => (1.0, 0.0),
        BoundaryPoint::Finite(x) => {
            // (x − z0)/(x − z̄0)
            let (u, v) = (x - z0.x(), z0.y());
            let n = u * u + v * v;
            ((u * u - v * v) / n, -2.0 * u * v / n)
        }
    }
}

fn chord(p: BoundaryPoint, q: BoundaryPoint, z0: &HPoint) -> f64 {
    let (a, b) = disk(p, z0);
    let (c, d) = disk(q, z0);
    math::hypot(a - c, b - d)
}

fn pair_axes(
    fam: &TwistFamily,
    w1: &Word,
    w2: &Word,
    t: f64,
) -> Result<Option<(Geodesic, Geodesic)>, TwistError> {
    let rep = fam.twist_rep(t)?;
    match (rep.evaluate(w1).axis(), rep.evaluate(w2).axis()) {
        (Ok(x), Ok(y)) => Ok(Some((x, y))),
        _ => Ok(None),
    }
}

/// Sweeps the crossing angle of `w1` and `conjugator·w2·conjugator⁻¹`
/// over `grid`.
pub fn angle_sweep(
    fam: &TwistFamily,
    pair: (&Word, &Word, &Word),
    grid: &[f64],
) -> Result<SweepReport, TwistError> {
    let work = fam.in_curve_frame();
    let w1 = pair.0.clone();
    let w2 = pair.1.conjugate_by(pair.2);
    let (b1, b2) = pair_axes(&work, &w1, &w2, 0.0)?.ok_or(TwistError::NoCrossingAtBase)?;
    let z0 = match crossing(&b1, &b2) {
        Ok(Some(z)) => z,
        _ => return Err(TwistError::NoCrossingAtBase),
    };

    let mut samples = Vec::with_capacity(grid.len());
    let mut lost_crossing = Vec::new();
    for &t in grid {
        let mut s = SweepSample {
            t,
            angle: None,
            direction: None,
            cross_gap: None,
            same_gap: None,
        };
        if let Some((g1, g2)) = pair_axes(&work, &w1, &w2, t)? {
            if let (Ok(theta), Ok(phi)) = (angle_within(&g1, &g2, 0.0), direction_angle_within(&g1, &g2, 0.0)) {
                let (p1, m1) = (g1.attracting(), g1.repelling());
                let (p2, m2) = (g2.attracting(), g2.repelling());
                s.angle = Some(theta);
                s.direction = Some(phi);
                s.cross_gap = Some(chord(p1, m2, &z0).min(chord(m1, p2, &z0)));
                s.same_gap = Some(chord(p1, p2, &z0).min(chord(m1, m2, &z0)));
            }
        }
        if s.angle.is_none() {
            lost_crossing.push(t);
        }
        samples.push(s);
    }

    let (inf_phi, sup_phi) = range_of(&samples, |s| s.direction);
    let reversed = inf_phi > math::PI - sup_phi;
    if reversed {
        for s in &mut samples {
            s.direction = s.direction.map(|p| math::PI - p);
            core::mem::swap(&mut s.cross_gap, &mut s.same_gap);
        }
    }
    let (inf_angle, sup_angle) = range_of(&samples, |s| s.angle);
    let (inf_direction, sup_direction) = range_of(&samples, |s| s.direction);
    let (delta2, _) = range_of(&samples, |s| s.cross_gap);
    let (same_min, _) = range_of(&samples, |s| s.same_gap);
    let delta4 = delta2.min(same_min);
    let bound = 2.0 / delta2;
    let bound_holds = samples
        .iter()
        .filter_map(|s| s.direction)
        .all(|p| math::tan(p / 2.0) <= bound * (1.0 + 1e-9));
    Ok(SweepReport {
        grid: grid.to_vec(),
        samples,
        inf_angle,
        sup_angle,
        inf_direction,
        sup_direction,
        reversed,
        delta: math::PI - sup_direction,
        delta2,
        delta4,
        bound_delta: math::PI - 2.0 * math::atan(bound),
        bound_holds,
        lost_crossing,
    })
}

fn range_of(samples: &[SweepSample], f: fn(&SweepSample) -> Option<f64>) -> (f64, f64) {
    samples
        .iter()
        .filter_map(f)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// A curve lift `K·Ĉ` with `K` in a small ball whose two sides contain the
/// axes of `g1` and `g2` respectively.
pub fn separating_lift(fam: &TwistFamily, g1: &Word, g2: &Word) -> Result<Option<Word>, TwistError> {
    let rep = fam.base();
    let a1 = rep.evaluate(g1).axis()?;
    let a2 = rep.evaluate(g2).axis()?;
    let curve = fam.curve_element().axis()?;
    let ball = Ball::new(rep.rank(), SEPARATION_DEPTH)?;
    for (w, k) in ball.words().iter().zip(rep.evaluate_ball(&ball)) {
        let lift = k.apply(curve);
        let side = |g: &Geodesic| -> Option<bool> {
            if lift.shares_endpoint(g, 1e-12) {
                return None;
            }
            let r = lift.is_left(g.repelling());
            (r == lift.is_left(g.attracting())).then_some(r)
        };
        if let (Some(s1), Some(s2)) = (side(&a1), side(&a2)) {
            if s1 != s2 {
                return Ok(Some(w.clone()));
            }
        }
    }
    Ok(None)
}

/// Distance between the twisted axes of `g1` and `g2` at each grid point.
/// The axes must be disjoint and separated by a lift of the curve.
pub fn separation_sweep(
    fam: &TwistFamily,
    g1: &Word,
    g2: &Word,
    grid: &[f64],
) -> Result<Vec<f64>, TwistError> {
    let rep = fam.base();
    let (a1, a2) = (rep.evaluate(g1).axis()?, rep.evaluate(g2).axis()?);
    if !matches!(interleaved(&a1, &a2), Ok(false)) || separating_lift(fam, g1, g2)?.is_none() {
        return Err(TwistError::NotSeparated);
    }
    let work = fam.in_curve_frame();
    grid.iter()
        .map(|&t| {
            let (x, y) = pair_axes(&work, g1, g2, t)?.ok_or(TwistError::NotHyperbolic { t })?;
            Ok(geodesic_distance_within(&x, &y, 0.0))
        })
        .collect()
}

/// Distance, measured as an angle on the boundary circle around `i`, from
/// each twisted endpoint of `w` to the nearest endpoint of a curve lift.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundaryLimit {
    pub t: f64,
    pub repelling_gap: f64,
    pub attracting_gap: f64,
}

fn circle_angle(p: BoundaryPoint) -> f64 {
    match p {
        BoundaryPoint::Infinity => math::PI,
        BoundaryPoint::Finite(x) => 2.0 * math::atan(x),
    }
}

fn circle_gap(p: BoundaryPoint, q: BoundaryPoint) -> f64 {
    let d = (circle_angle(p) - circle_angle(q)).abs();
    d.min(2.0 * math::PI - d)
}

/// Tracks how close the twisted endpoints of `w` come to the endpoints of
/// curve lifts `K·Ĉ`, `K` in the ball of radius `conj_depth`. Computed in
/// the curve frame.
pub fn boundary_limits(
    fam: &TwistFamily,
    w: &Word,
    ts: &[f64],
    conj_depth: usize,
) -> Result<Vec<BoundaryLimit>, TwistError> {
    let work = fam.in_curve_frame();
    let rep = work.base();
    let curve = work.curve_element().axis()?;
    let ball = Ball::new(rep.rank(), conj_depth)?;
    let lifts: Vec<BoundaryPoint> = rep
        .evaluate_ball(&ball)
        .iter()
        .flat_map(|k: &Isometry| {
            let g = k.apply(curve);
            [g.repelling(), g.attracting()]
        })
        .collect();
    let nearest = |p: BoundaryPoint| {
        lifts
            .iter()
            .map(|&q| circle_gap(p, q))
            .fold(f64::INFINITY, f64::min)
    };
    ts.iter()
        .map(|&t| {
            let (r, a) = work.boundary_extension(w, t)?;
            Ok(BoundaryLimit {
                t,
                repelling_gap: nearest(r),
                attracting_gap: nearest(a),
            })
        })
        .collect()
}
