use core::cmp::Ordering;
use core::fmt;

use super::{GeomError, NORMALIZE_EPS};

/// A point `x + iy` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HPoint {
    x: f64,
    y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, GeomError> {
        if x.is_finite() && y.is_finite() && y > 0.0 {
            Ok(Self { x, y })
        } else {
            Err(GeomError::OffHalfPlane)
        }
    }

    /// The imaginary unit, used as the default center everywhere.
    pub const I: HPoint = HPoint { x: 0.0, y: 1.0 };

    pub(crate) const fn new_unchecked(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }
}

impl fmt::Display for HPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.x, self.y)
    }
}

/// A point of the ideal boundary `R ∪ {∞}`.
///
/// Finite points are ordered as reals and `Infinity` compares greatest, which
/// together with wrap-around gives the circular order used by the crossing
/// tests.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(self) -> Option<f64> {
        match self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    /// Total order: reals by `total_cmp`, infinity last.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => a.total_cmp(b),
            (BoundaryPoint::Finite(_), BoundaryPoint::Infinity) => Ordering::Less,
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(_)) => Ordering::Greater,
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Ordering::Equal,
        }
    }

    /// Equality up to a tolerance that is absolute near zero and relative for
    /// large values. A finite point beyond `1/tol` matches infinity.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        match (self, other) {
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => {
                (a - b).abs() <= tol * (1.0f64).max(a.abs()).max(b.abs())
            }
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite(a), BoundaryPoint::Infinity)
            | (BoundaryPoint::Infinity, BoundaryPoint::Finite(a)) => a.abs() * tol >= 1.0,
        }
    }

    /// True when `self` lies in the open boundary arc running from `from`
    /// to `to` in the positive direction (increasing reals, wrapping
    /// through infinity).
    pub fn strictly_between(self, from: Self, to: Self) -> bool {
        let lt = |p: &Self, q: &Self| p.total_cmp(q) == Ordering::Less;
        if lt(&from, &to) {
            lt(&from, &self) && lt(&self, &to)
        } else {
            lt(&from, &self) || lt(&self, &to)
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(x) => write!(f, "{x}"),
            BoundaryPoint::Infinity => f.write_str("inf"),
        }
    }
}

impl From<f64> for BoundaryPoint {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            BoundaryPoint::Finite(x)
        } else {
            BoundaryPoint::Infinity
        }
    }
}

/// An oriented geodesic, running from `repelling` to `attracting`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Geodesic {
    repelling: BoundaryPoint,
    attracting: BoundaryPoint,
}

impl Geodesic {
    pub fn new(repelling: BoundaryPoint, attracting: BoundaryPoint) -> Result<Self, GeomError> {
        if let BoundaryPoint::Finite(x) = repelling {
            if !x.is_finite() {
                return Err(GeomError::DegenerateGeodesic);
            }
        }
        if repelling.approx_eq(attracting, NORMALIZE_EPS) {
            return Err(GeomError::DegenerateGeodesic);
        }
        Ok(Self {
            repelling,
            attracting,
        })
    }

    /// Geodesic between two finite boundary points.
    pub fn between(repelling: f64, attracting: f64) -> Result<Self, GeomError> {
        Self::new(repelling.into(), attracting.into())
    }

    pub(crate) const fn new_unchecked(repelling: BoundaryPoint, attracting: BoundaryPoint) -> Self {
        Self {
            repelling,
            attracting,
        }
    }

    pub fn repelling(&self) -> BoundaryPoint {
        self.repelling
    }

    pub fn attracting(&self) -> BoundaryPoint {
        self.attracting
    }

    pub fn reversed(&self) -> Self {
        Self {
            repelling: self.attracting,
            attracting: self.repelling,
        }
    }

    /// Endpoints sorted by the boundary order, forgetting orientation.
    pub fn unoriented(&self) -> (BoundaryPoint, BoundaryPoint) {
        if self.repelling.total_cmp(&self.attracting) == Ordering::Greater {
            (self.attracting, self.repelling)
        } else {
            (self.repelling, self.attracting)
        }
    }

    /// The same geodesic re-oriented so that its endpoints are increasing.
    pub fn canonical_unoriented(&self) -> Self {
        let (lo, hi) = self.unoriented();
        Self::new_unchecked(lo, hi)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.repelling.approx_eq(other.repelling, tol)
            && self.attracting.approx_eq(other.attracting, tol)
    }

    pub fn approx_eq_unoriented(&self, other: &Self, tol: f64) -> bool {
        self.approx_eq(other, tol) || self.approx_eq(&other.reversed(), tol)
    }

    pub fn shares_endpoint(&self, other: &Self, tol: f64) -> bool {
        let ends = [self.repelling, self.attracting];
        ends.iter().any(|p| {
            p.approx_eq(other.repelling, tol) || p.approx_eq(other.attracting, tol)
        })
    }

    /// Open boundary arc to the left of the oriented geodesic, as
    /// `(from, to)` in the positive boundary direction.
    pub fn left_arc(&self) -> (BoundaryPoint, BoundaryPoint) {
        (self.attracting, self.repelling)
    }

    /// True when `p` lies on the left of the oriented geodesic.
    pub fn is_left(&self, p: BoundaryPoint) -> bool {
        let (from, to) = self.left_arc();
        p.strictly_between(from, to)
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} -> {})", self.repelling, self.attracting)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_boundary_points_as_interior() {
        assert_eq!(HPoint::new(0.0, 0.0), Err(GeomError::OffHalfPlane));
        assert_eq!(HPoint::new(1.0, -1.0), Err(GeomError::OffHalfPlane));
        assert!(HPoint::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn infinity_is_greatest() {
        let inf = BoundaryPoint::Infinity;
        let big = BoundaryPoint::Finite(1e300);
        assert_eq!(big.total_cmp(&inf), Ordering::Less);
        assert!(BoundaryPoint::Finite(3.0).strictly_between(BoundaryPoint::Finite(1.0), inf));
        assert!(BoundaryPoint::Finite(-3.0).strictly_between(inf, BoundaryPoint::Finite(0.0)));
        // wrap-around arc from 2 to -2 passes through infinity
        let two = BoundaryPoint::Finite(2.0);
        let m2 = BoundaryPoint::Finite(-2.0);
        assert!(inf.strictly_between(two, m2));
        assert!(!BoundaryPoint::Finite(0.0).strictly_between(two, m2));
    }

    #[test]
    fn degenerate_geodesic_rejected() {
        assert_eq!(
            Geodesic::between(1.0, 1.0),
            Err(GeomError::DegenerateGeodesic)
        );
        assert!(Geodesic::new(BoundaryPoint::Infinity, BoundaryPoint::Infinity).is_err());
    }

    #[test]
    fn left_side_of_vertical_line() {
        let up = Geodesic::new(BoundaryPoint::Finite(0.0), BoundaryPoint::Infinity).unwrap();
        assert!(up.is_left(BoundaryPoint::Finite(-1.0)));
        assert!(!up.is_left(BoundaryPoint::Finite(1.0)));
        let down = up.reversed();
        assert!(down.is_left(BoundaryPoint::Finite(1.0)));
    }
}
