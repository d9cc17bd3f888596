use super::isometry::{commutator_trace, Apply, Isometry};
use super::points::{BoundaryPoint, Geodesic, HPoint};
use super::{GeomError, NORMALIZE_EPS};
use crate::math;

/// True when the endpoints of `g2` separate those of `g1` on the boundary
/// circle, i.e. the geodesics cross.
pub fn interleaved(g1: &Geodesic, g2: &Geodesic) -> Result<bool, GeomError> {
    interleaved_within(g1, g2, NORMALIZE_EPS)
}

/// [`interleaved`] with an explicit shared-endpoint tolerance. With
/// `tol = 0` only identical endpoints count as shared, which suits frames
/// where a legitimate endpoint is very large.
pub fn interleaved_within(g1: &Geodesic, g2: &Geodesic, tol: f64) -> Result<bool, GeomError> {
    if g1.shares_endpoint(g2, tol) {
        return Err(GeomError::SharedEndpoint);
    }
    Ok(g1.is_left(g2.repelling()) != g1.is_left(g2.attracting()))
}

/// The intersection point of two geodesics, if they cross.
pub fn crossing(g1: &Geodesic, g2: &Geodesic) -> Result<Option<HPoint>, GeomError> {
    crossing_within(g1, g2, NORMALIZE_EPS)
}

pub fn crossing_within(
    g1: &Geodesic,
    g2: &Geodesic,
    tol: f64,
) -> Result<Option<HPoint>, GeomError> {
    if !interleaved_within(g1, g2, tol)? {
        return Ok(None);
    }
    let (p1, q1) = g1.unoriented();
    let (p2, q2) = g2.unoriented();
    use BoundaryPoint::{Finite, Infinity};
    let (x, y2) = match (p1, q1, p2, q2) {
        (Finite(p), Infinity, Finite(a), Finite(b)) | (Finite(a), Finite(b), Finite(p), Infinity) => {
            (p, (p - a) * (b - p))
        }
        (Finite(p1), Finite(q1), Finite(p2), Finite(q2)) => {
            let x = (p2 * q2 - p1 * q1) / ((p2 + q2) - (p1 + q1));
            // the smaller circle gives the better conditioned height
            let h1 = (x - p1) * (q1 - x);
            let h2 = (x - p2) * (q2 - x);
            (x, if q1 - p1 < q2 - p2 { h1 } else { h2 })
        }
        _ => return Err(GeomError::SharedEndpoint),
    };
    if y2.is_nan() || y2 <= 0.0 || !x.is_finite() {
        return Err(GeomError::NoCrossing);
    }
    Ok(Some(HPoint::new_unchecked(x, math::sqrt(y2))))
}

/// The cross-ratio of the four endpoints, with the attracting endpoints
/// playing `α⁺` and `β⁺`:
///
/// `((α⁺ − β⁺)/(α⁺ − β⁻)) · ((α⁻ − β⁻)/(α⁻ − β⁺))`.
///
/// Factors involving an ideal point at infinity cancel in pairs. For
/// crossing geodesics the value is `−tan²(φ/2)`, `φ` the angle between the
/// forward directions.
pub fn angle_cross_ratio(g1: &Geodesic, g2: &Geodesic) -> f64 {
    let (ap, am) = (g1.attracting(), g1.repelling());
    let (bp, bm) = (g2.attracting(), g2.repelling());
    let diff = |x: BoundaryPoint, y: BoundaryPoint| match (x, y) {
        (BoundaryPoint::Finite(x), BoundaryPoint::Finite(y)) => Some(x - y),
        _ => None,
    };
    let mut num = 1.0;
    let mut den = 1.0;
    for (n, d) in [(diff(ap, bp), diff(ap, bm)), (diff(am, bm), diff(am, bp))] {
        if let Some(n) = n {
            num *= n;
        }
        if let Some(d) = d {
            den *= d;
        }
    }
    num / den
}

/// Angle in `(0, π)` between the forward tangent directions of two
/// crossing oriented geodesics.
pub fn direction_angle(g1: &Geodesic, g2: &Geodesic) -> Result<f64, GeomError> {
    direction_angle_within(g1, g2, NORMALIZE_EPS)
}

pub fn direction_angle_within(g1: &Geodesic, g2: &Geodesic, tol: f64) -> Result<f64, GeomError> {
    if !interleaved_within(g1, g2, tol)? {
        return Err(GeomError::NoCrossing);
    }
    let cr = angle_cross_ratio(g1, g2).abs();
    Ok(2.0 * math::atan(math::sqrt(cr)))
}

/// Counter-clockwise angle in `(0, π)` from the line of `g1` to the line
/// of `g2` at their crossing point.
///
/// The value depends only on the unoriented geodesics, and swapping the
/// arguments gives the supplement.
pub fn angle(g1: &Geodesic, g2: &Geodesic) -> Result<f64, GeomError> {
    angle_within(g1, g2, NORMALIZE_EPS)
}

pub fn angle_within(g1: &Geodesic, g2: &Geodesic, tol: f64) -> Result<f64, GeomError> {
    let phi = direction_angle_within(g1, g2, tol)?;
    if g1.is_left(g2.attracting()) {
        Ok(phi)
    } else {
        Ok(math::PI - phi)
    }
}

/// `4(2 − tr[g,h]) / ((tr²g − 4)(tr²h − 4))`, which equals the squared sine
/// of the crossing angle when the axes cross.
pub fn trace_angle_rhs(g: &Isometry, h: &Isometry) -> f64 {
    let tg = g.trace();
    let th = h.trace();
    4.0 * (2.0 - commutator_trace(g, h)) / ((tg * tg - 4.0) * (th * th - 4.0))
}

/// Acute crossing angle of the axes of `g` and `h`, from traces alone.
pub fn angle_trace(g: &Isometry, h: &Isometry) -> Result<f64, GeomError> {
    let ag = g.axis()?;
    let ah = h.axis()?;
    match interleaved(&ag, &ah) {
        Ok(true) => {}
        Ok(false) | Err(GeomError::SharedEndpoint) => return Err(GeomError::AxesDisjoint),
        Err(e) => return Err(e),
    }
    let rhs = trace_angle_rhs(g, h);
    if !(-1e-9..=1.0 + 1e-9).contains(&rhs) {
        return Err(GeomError::AxesDisjoint);
    }
    Ok(math::asin(math::sqrt(rhs.clamp(0.0, 1.0))))
}

/// Hyperbolic distance between two points.
pub fn distance(p: &HPoint, q: &HPoint) -> f64 {
    let chord = math::hypot(p.x() - q.x(), p.y() - q.y());
    2.0 * math::asinh(chord / (2.0 * math::sqrt(p.y() * q.y())))
}

/// Length of the common perpendicular of two disjoint geodesics. Crossing
/// or asymptotic geodesics are at distance zero.
pub fn geodesic_distance(g1: &Geodesic, g2: &Geodesic) -> f64 {
    geodesic_distance_within(g1, g2, NORMALIZE_EPS)
}

pub fn geodesic_distance_within(g1: &Geodesic, g2: &Geodesic, tol: f64) -> f64 {
    match interleaved_within(g1, g2, tol) {
        Ok(false) => {}
        _ => return 0.0,
    }
    // move g1 to (0, ∞); g2 becomes a semicircle over [u, v] on one side
    let to_frame = Isometry::frame(g1).inverse();
    let image = to_frame.apply(*g2);
    let ends = [image.repelling(), image.attracting()];
    let mut mags = [0.0; 2];
    for (m, p) in mags.iter_mut().zip(ends) {
        match p {
            BoundaryPoint::Finite(x) => *m = x.abs(),
            BoundaryPoint::Infinity => return 0.0,
        }
    }
    let (u, v) = if mags[0] < mags[1] {
        (mags[0], mags[1])
    } else {
        (mags[1], mags[0])
    };
    let s = math::sqrt(u / v);
    math::ln1p(s) - math::ln1p(-s)
}
