use alloc::vec::Vec;
use core::cmp::Ordering;

use super::SpectraError;
use crate::grp::{Ball, Representation, DEFAULT_DEPTH_CAP};
use crate::hypgeom::{Apply, BoundaryPoint, Geodesic, Isometry, COMPARE_EPS};

/// Axes of the hyperbolic elements in a ball, as unoriented geodesics with
/// increasing endpoints, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AxesSet {
    depth: usize,
    axes: Vec<Geodesic>,
}

fn cmp_geodesic(x: &Geodesic, y: &Geodesic) -> Ordering {
    x.repelling()
        .total_cmp(&y.repelling())
        .then_with(|| x.attracting().total_cmp(&y.attracting()))
}

fn lower_end(g: &Geodesic) -> f64 {
    g.repelling().finite().unwrap_or(f64::INFINITY)
}

impl AxesSet {
    /// Canonicalizes, sorts and merges geodesics within `COMPARE_EPS`.
    pub fn from_geodesics<I: IntoIterator<Item = Geodesic>>(depth: usize, axes: I) -> Self {
        let mut all: Vec<Geodesic> = axes.into_iter().map(|g| g.canonical_unoriented()).collect();
        all.sort_by(cmp_geodesic);
        let mut set = AxesSet {
            depth,
            axes: Vec::with_capacity(all.len()),
        };
        for g in all {
            if !set.contains(&g, COMPARE_EPS) {
                set.axes.push(g);
            }
        }
        // merges near the window edge can leave the list slightly unsorted
        set.axes.sort_by(cmp_geodesic);
        set
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Geodesic> {
        self.axes.iter()
    }

    /// Whether some member equals `g` (unoriented) within `tol`.
    pub fn contains(&self, g: &Geodesic, tol: f64) -> bool {
        let g = g.canonical_unoriented();
        let lo = lower_end(&g);
        if !lo.is_finite() {
            return false;
        }
        let slack = tol * lo.abs().max(1.0);
        let start = self.axes.partition_point(|h| lower_end(h) < lo - slack);
        self.axes[start..]
            .iter()
            .take_while(|h| lower_end(h) <= lo + slack)
            .any(|h| h.approx_eq(&g, tol))
            || self.contains_wrapped(&g, tol)
    }

    // A finite endpoint far out matches infinity, which moves it to the
    // other end of the sorted order.
    fn contains_wrapped(&self, g: &Geodesic, tol: f64) -> bool {
        let far = |p: BoundaryPoint| p.approx_eq(BoundaryPoint::Infinity, tol);
        let (lo, hi) = (g.repelling(), g.attracting());
        if !far(lo) && !far(hi) {
            return false;
        }
        self.axes
            .iter()
            .filter(|h| far(h.repelling()) || far(h.attracting()))
            .any(|h| h.approx_eq_unoriented(g, tol))
    }

    /// Every member of `self` is in `other` within `tol`.
    pub fn is_subset(&self, other: &AxesSet, tol: f64) -> bool {
        self.unmatched(other, tol) == 0
    }

    /// Members of `self` with no match in `other`.
    pub fn unmatched(&self, other: &AxesSet, tol: f64) -> usize {
        self.axes.iter().filter(|g| !other.contains(g, tol)).count()
    }

    /// The image of every axis under `g`.
    pub fn transform(&self, g: &Isometry) -> AxesSet {
        AxesSet::from_geodesics(self.depth, self.axes.iter().map(|a| g.apply(*a)))
    }
}

/// Axes of all hyperbolic elements in the ball of radius `depth`.
pub fn axes_set(rep: &Representation, depth: usize) -> Result<AxesSet, SpectraError> {
    axes_set_with_cap(rep, depth, DEFAULT_DEPTH_CAP)
}

pub fn axes_set_with_cap(
    rep: &Representation,
    depth: usize,
    cap: usize,
) -> Result<AxesSet, SpectraError> {
    let ball = Ball::enumerate(rep.rank(), depth, cap)?;
    let axes = rep
        .evaluate_ball(&ball)
        .into_iter()
        .filter_map(|g| g.axis().ok());
    Ok(AxesSet::from_geodesics(depth, axes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::preset;

    #[test]
    fn modular_depth_one_has_two_axes() {
        let rep = preset("modular_torus").unwrap();
        let set = axes_set(&rep, 1).unwrap();
        assert_eq!(set.len(), 2);
        let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
        let a = Geodesic::between(-phi, phi - 1.0).unwrap();
        let b = Geodesic::between(phi, 1.0 - phi).unwrap();
        assert!(set.contains(&a, 1e-12) && set.contains(&b, 1e-12));
    }

    #[test]
    fn powers_add_nothing() {
        let rep = preset("modular_torus").unwrap();
        let words: Vec<_> = ["a", "aa", "aaa", "A"].iter().map(|w| w.parse().unwrap()).collect();
        let set = AxesSet::from_geodesics(3, words.iter().map(|w| rep.evaluate(w).axis().unwrap()));
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn near_infinity_matches_infinity() {
        let set = AxesSet::from_geodesics(1, [Geodesic::new(BoundaryPoint::Finite(0.0), BoundaryPoint::Infinity).unwrap()]);
        assert!(set.contains(&Geodesic::between(0.0, 1e12).unwrap(), 1e-9));
        assert!(set.contains(&Geodesic::between(-1e12, 0.0).unwrap(), 1e-9));
        assert!(!set.contains(&Geodesic::between(0.0, 1e6).unwrap(), 1e-9));
    }
}
