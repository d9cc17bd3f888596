use core::fmt;

use super::points::{BoundaryPoint, Geodesic, HPoint};
use super::{GeomError, CLASSIFY_EPS, NORMALIZE_EPS};
use crate::math;

/// Conjugacy type of an isometry, decided by `|tr|` against 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Kind {
    Identity,
    Hyperbolic,
    Parabolic,
    Elliptic,
}

/// An orientation-preserving isometry of the upper half-plane, i.e. an
/// element of PSL(2,R).
///
/// Entries satisfy `ad - bc = 1` and the first entry (row-major) that is not
/// negligible is positive, so `M` and `-M` share one representation.
#[derive(Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Isometry {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds an isometry from a real matrix with positive determinant,
    /// scaling it to determinant one.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, GeomError> {
        let det = a * d - b * c;
        if !(a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite()) || det <= 0.0 {
            return Err(GeomError::InvalidMatrix);
        }
        let s = math::sqrt(det);
        Ok(Self {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        }
        .canonical_sign())
    }

    /// `z ↦ λ² z`, translation by `2 ln λ` along the imaginary axis.
    pub fn diagonal(lambda: f64) -> Result<Self, GeomError> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(GeomError::InvalidMatrix);
        }
        Self::new(lambda, 0.0, 0.0, 1.0 / lambda)
    }

    /// Hyperbolic translation of length `t` along the oriented geodesic, in
    /// the direction of its attracting end. `t < 0` translates backwards.
    pub fn translation_along_geodesic(axis: &Geodesic, t: f64) -> Self {
        let frame = Self::frame(axis);
        let half = math::exp(t / 2.0);
        let step = Self {
            a: half,
            b: 0.0,
            c: 0.0,
            d: 1.0 / half,
        };
        frame.compose(&step).compose(&frame.inverse())
    }

    /// An isometry sending `0` to the repelling and `∞` to the attracting
    /// endpoint of `axis`.
    pub fn frame(axis: &Geodesic) -> Self {
        use BoundaryPoint::{Finite, Infinity};
        let raw = match (axis.repelling(), axis.attracting()) {
            (Finite(r), Finite(s)) => {
                let sigma = if s > r { 1.0 } else { -1.0 };
                [sigma * s, r, sigma, 1.0]
            }
            (Finite(r), Infinity) => [1.0, r, 0.0, 1.0],
            (Infinity, Finite(s)) => [s, -1.0, 1.0, 0.0],
            (Infinity, Infinity) => unreachable!("geodesic endpoints are distinct"),
        };
        Self::new(raw[0], raw[1], raw[2], raw[3]).expect("frame matrix has positive determinant")
    }

    /// Rotation by `π` about `p`.
    pub fn half_turn(p: &HPoint) -> Self {
        let s = math::sqrt(p.y());
        let to_p = Self {
            a: s,
            b: p.x() / s,
            c: 0.0,
            d: 1.0 / s,
        };
        let turn = Self {
            a: 0.0,
            b: 1.0,
            c: -1.0,
            d: 0.0,
        };
        turn.conjugate_by(&to_p)
    }

    /// Entries `[a, b, c, d]` in row-major order.
    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Trace of the canonical-sign representative. Only `|tr|` and `tr²`
    /// are invariants of the PSL(2,R) element.
    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn abs_trace(&self) -> f64 {
        self.trace().abs()
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
        .canonical_sign()
    }

    /// Matrix product `self · other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b, c, d) = raw_product(self, other);
        Self { a, b, c, d }.renormalize().canonical_sign()
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    pub fn classify(&self) -> Kind {
        if self.approx_eq(&Self::IDENTITY, NORMALIZE_EPS) {
            return Kind::Identity;
        }
        let t = self.abs_trace();
        if t > 2.0 + CLASSIFY_EPS {
            Kind::Hyperbolic
        } else if t < 2.0 - CLASSIFY_EPS {
            Kind::Elliptic
        } else {
            Kind::Parabolic
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.classify() == Kind::Hyperbolic
    }

    /// `ℓ = 2 arccosh(|tr|/2)`.
    pub fn translation_length(&self) -> Result<f64, GeomError> {
        if !self.is_hyperbolic() {
            return Err(GeomError::NotHyperbolic);
        }
        Ok(2.0 * math::acosh(self.abs_trace() / 2.0))
    }

    /// The oriented axis, from the repelling to the attracting fixed point.
    pub fn axis(&self) -> Result<Geodesic, GeomError> {
        if !self.is_hyperbolic() {
            return Err(GeomError::NotHyperbolic);
        }
        let Self { a, b, c, d } = *self;
        let scale = a.abs().max(b.abs()).max(d.abs()).max(1.0);
        if c.abs() <= f64::EPSILON * scale {
            // z ↦ (a z + b)/d: fixes ∞ and b/(d - a); ∞ attracts iff |a| > |d|
            let finite = BoundaryPoint::Finite(b / (d - a));
            let (rep, att) = if a.abs() > d.abs() {
                (finite, BoundaryPoint::Infinity)
            } else {
                (BoundaryPoint::Infinity, finite)
            };
            return Ok(Geodesic::new_unchecked(rep, att));
        }
        // c z² + (d - a) z - b = 0, discriminant tr² - 4 > 0
        let p = d - a;
        let disc = (a + d) * (a + d) - 4.0;
        let root = math::sqrt(disc.max(0.0));
        let q = -0.5 * (p + if p >= 0.0 { root } else { -root });
        let (z1, z2) = if q == 0.0 {
            let z = root / (2.0 * c);
            (z, -z)
        } else {
            (q / c, -b / q)
        };
        // derivative at a fixed point is (cz + d)^-2, so the attracting one
        // has the larger |cz + d|
        let (rep, att) = if (c * z1 + d).abs() > (c * z2 + d).abs() {
            (z2, z1)
        } else {
            (z1, z2)
        };
        Ok(Geodesic::new_unchecked(
            BoundaryPoint::Finite(rep),
            BoundaryPoint::Finite(att),
        ))
    }

    /// Equality in PSL(2,R): entrywise within `tol` (relative to the entry
    /// scale) up to an overall sign.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let x = self.entries();
        let y = other.entries();
        let scale = x
            .iter()
            .chain(y.iter())
            .fold(1.0f64, |m, v| m.max(v.abs()));
        let same = x.iter().zip(&y).all(|(p, q)| (p - q).abs() <= tol * scale);
        let flipped = x.iter().zip(&y).all(|(p, q)| (p + q).abs() <= tol * scale);
        same || flipped
    }

    fn renormalize(self) -> Self {
        let det = self.det();
        // below this the drift is rounding in `det` itself
        let floor = (self.a * self.d).abs() + (self.b * self.c).abs();
        if (det - 1.0).abs() > NORMALIZE_EPS * floor.max(1.0) && det > 0.0 {
            let s = math::sqrt(det);
            Self {
                a: self.a / s,
                b: self.b / s,
                c: self.c / s,
                d: self.d / s,
            }
        } else {
            self
        }
    }

    fn canonical_sign(self) -> Self {
        let e = self.entries();
        let scale = e.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let lead = e
            .iter()
            .copied()
            .find(|v| v.abs() > NORMALIZE_EPS * scale)
            .unwrap_or(0.0);
        if lead < 0.0 {
            Self {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            self
        }
    }
}

impl Default for Isometry {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn raw_product(x: &Isometry, y: &Isometry) -> (f64, f64, f64, f64) {
    (
        x.a * y.a + x.b * y.c,
        x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c,
        x.c * y.b + x.d * y.d,
    )
}

/// `tr(g h g⁻¹ h⁻¹)` computed in SL(2,R). Independent of the sign chosen
/// for either factor, so well defined on PSL(2,R).
pub fn commutator_trace(g: &Isometry, h: &Isometry) -> f64 {
    let gi = Isometry {
        a: g.d,
        b: -g.b,
        c: -g.c,
        d: g.a,
    };
    let hi = Isometry {
        a: h.d,
        b: -h.b,
        c: -h.c,
        d: h.a,
    };
    let (a, b, c, d) = raw_product(g, h);
    let gh = Isometry { a, b, c, d };
    let (a, b, c, d) = raw_product(&gi, &hi);
    let gihi = Isometry { a, b, c, d };
    let (a, _, _, d) = raw_product(&gh, &gihi);
    a + d
}

/// Fractional-linear action on points, ideal points and geodesics.
pub trait Apply<T> {
    fn apply(&self, x: T) -> T;
}

impl Apply<HPoint> for Isometry {
    fn apply(&self, p: HPoint) -> HPoint {
        // (a z + b)/(c z + d) with z = x + iy and ad - bc = 1
        let (x, y) = (p.x(), p.y());
        let den_re = self.c * x + self.d;
        let den_im = self.c * y;
        let norm = den_re * den_re + den_im * den_im;
        let num_re = self.a * x + self.b;
        let num_im = self.a * y;
        let re = (num_re * den_re + num_im * den_im) / norm;
        let im = y / norm;
        HPoint::new_unchecked(re, im)
    }
}

impl Apply<BoundaryPoint> for Isometry {
    fn apply(&self, p: BoundaryPoint) -> BoundaryPoint {
        match p {
            BoundaryPoint::Infinity => {
                if self.c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }
}

impl Apply<Geodesic> for Isometry {
    fn apply(&self, g: Geodesic) -> Geodesic {
        Geodesic::new_unchecked(self.apply(g.repelling()), self.apply(g.attracting()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: f64, b: f64, c: f64, d: f64) -> Isometry {
        Isometry::new(a, b, c, d).unwrap()
    }

    #[test]
    fn compose_examples() {
        let g = m(1.0, 1.0, 1.0, 2.0);
        assert_eq!(g.compose(&Isometry::IDENTITY), g);
        let d = Isometry::diagonal(2.0).unwrap();
        assert!(d.compose(&d).approx_eq(&Isometry::diagonal(4.0).unwrap(), 1e-15));
        // [[1,1],[1,2]]·[[1,-1],[-1,2]] = [[0,1],[-1,3]]
        let p = g.compose(&m(1.0, -1.0, -1.0, 2.0));
        assert!(p.approx_eq(&m(0.0, 1.0, -1.0, 3.0), 1e-15));
        assert_eq!(p.entries(), [0.0, 1.0, -1.0, 3.0]);
    }

    #[test]
    fn canonical_sign_rule() {
        let g = m(-1.0, -1.0, -1.0, -2.0);
        assert_eq!(g.entries(), [1.0, 1.0, 1.0, 2.0]);
        let h = m(0.0, -1.0, 1.0, 0.0);
        assert_eq!(h.entries(), [0.0, 1.0, -1.0, 0.0]);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(m(1.0, 1.0, 0.0, 1.0).classify(), Kind::Parabolic);
        assert_eq!(m(0.0, 1.0, -1.0, 0.0).classify(), Kind::Elliptic);
        assert_eq!(m(1.0, 1.0, 1.0, 2.0).classify(), Kind::Hyperbolic);
        assert_eq!(Isometry::IDENTITY.classify(), Kind::Identity);
    }

    #[test]
    fn translation_length_examples() {
        let d = Isometry::diagonal(2.0).unwrap();
        assert!((d.translation_length().unwrap() - 2.0 * core::f64::consts::LN_2).abs() < 1e-15);
        let g = m(1.0, 1.0, 1.0, 2.0);
        assert!((g.translation_length().unwrap() - 1.924_847_300_238_413_8).abs() < 1e-12);
        assert_eq!(
            m(1.0, 1.0, 0.0, 1.0).translation_length(),
            Err(GeomError::NotHyperbolic)
        );
    }

    #[test]
    fn axis_examples() {
        let d = Isometry::diagonal(2.0).unwrap().axis().unwrap();
        assert_eq!(d.repelling(), BoundaryPoint::Finite(0.0));
        assert_eq!(d.attracting(), BoundaryPoint::Infinity);

        let h = m(1.25, 0.75, 0.75, 1.25).axis().unwrap();
        assert!(h.repelling().approx_eq(BoundaryPoint::Finite(-1.0), 1e-15));
        assert!(h.attracting().approx_eq(BoundaryPoint::Finite(1.0), 1e-15));

        let s5 = 5f64.sqrt();
        let g = m(1.0, 1.0, 1.0, 2.0).axis().unwrap();
        assert!(g.repelling().approx_eq(BoundaryPoint::Finite((-1.0 - s5) / 2.0), 1e-15));
        assert!(g.attracting().approx_eq(BoundaryPoint::Finite((-1.0 + s5) / 2.0), 1e-15));
        assert_eq!(m(1.0, 1.0, 0.0, 1.0).axis(), Err(GeomError::NotHyperbolic));
    }

    #[test]
    fn axis_orientation_for_inverse_diagonal() {
        let d = Isometry::diagonal(0.5).unwrap().axis().unwrap();
        assert_eq!(d.repelling(), BoundaryPoint::Infinity);
        assert_eq!(d.attracting(), BoundaryPoint::Finite(0.0));
    }

    #[test]
    fn apply_examples() {
        assert_eq!(Isometry::IDENTITY.apply(HPoint::I), HPoint::I);
        let p = Isometry::diagonal(2.0).unwrap().apply(HPoint::I);
        assert!((p.x()).abs() < 1e-15 && (p.y() - 4.0).abs() < 1e-15);

        let g = m(1.0, 1.0, 0.0, 1.0);
        let h = Isometry::diagonal(2.0).unwrap();
        let moved = g.apply(h.axis().unwrap());
        let conj = h.conjugate_by(&g).axis().unwrap();
        assert!(moved.approx_eq(&conj, 1e-12));
        assert!(moved.repelling().approx_eq(BoundaryPoint::Finite(1.0), 1e-15));
        assert_eq!(moved.attracting(), BoundaryPoint::Infinity);
    }

    #[test]
    fn commutator_trace_is_sign_free() {
        let a = m(1.0, 1.0, 1.0, 2.0);
        let b = m(1.0, -1.0, -1.0, 2.0);
        assert_eq!(commutator_trace(&a, &b), -2.0);
        let g = m(2.0, 0.0, 0.0, 0.5);
        let h = m(1.25, 0.75, 0.75, 1.25);
        assert!((commutator_trace(&g, &h) - 0.734_375).abs() < 1e-14);
    }

    #[test]
    fn translation_along_reproduces_generator() {
        let d = Isometry::diagonal(2.0).unwrap();
        let t = Isometry::translation_along_geodesic(&d.axis().unwrap(), 2.0 * core::f64::consts::LN_2);
        assert!(t.approx_eq(&d, 1e-14));
        let g = m(1.0, 1.0, 1.0, 2.0);
        let tg = Isometry::translation_along_geodesic(&g.axis().unwrap(), g.translation_length().unwrap());
        assert!(tg.approx_eq(&g, 1e-12));
    }

    #[test]
    fn half_turn_inverts_crossing_generators() {
        let a = m(1.0, 1.0, 1.0, 2.0);
        let b = m(1.0, -1.0, -1.0, 2.0);
        let j = Isometry::half_turn(&HPoint::I);
        assert_eq!(j.classify(), Kind::Elliptic);
        assert!(a.conjugate_by(&j).approx_eq(&a.inverse(), 1e-14));
        assert!(b.conjugate_by(&j).approx_eq(&b.inverse(), 1e-14));
        let p = HPoint::new(2.0, 0.5).unwrap();
        let q = Isometry::half_turn(&p).apply(p);
        assert!((q.x() - 2.0).abs() < 1e-14 && (q.y() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn determinant_stays_unimodular() {
        let mut g = Isometry::IDENTITY;
        let a = m(1.0, 1.0, 1.0, 2.0);
        let b = m(1.0, -1.0, -1.0, 2.0).inverse();
        for i in 0..40 {
            g = g.compose(if i % 3 == 0 { &b } else { &a });
            assert!((g.det() - 1.0).abs() <= 1e-12 * g.entries().iter().fold(1.0f64, |m, v| m.max(v * v)));
        }
    }
}
