use alloc::vec::Vec;

use super::SpectraError;
use crate::grp::{Ball, Representation, Word, DEFAULT_DEPTH_CAP};
use crate::hypgeom::{distance, Apply, HPoint, Isometry};

/// Ball depth used for crossing-point reduction.
pub const DOMAIN_DEPTH: usize = 3;

const DECREASE_EPS: f64 = 1e-12;
const TIE_EPS: f64 = 1e-9;
const MAX_STEPS: usize = 10_000;

/// Dirichlet domain centered at `center`, cut out by the bisectors of the
/// center and its images under a finite set of group elements.
#[derive(Debug, Clone)]
pub struct DirichletDomain {
    center: HPoint,
    elements: Vec<(Word, Isometry)>,
}

impl DirichletDomain {
    /// Uses the nontrivial words of the ball of radius `depth`, centered at
    /// `i`.
    pub fn new(rep: &Representation, depth: usize) -> Result<Self, SpectraError> {
        Self::with_center(rep, depth, HPoint::I)
    }

    pub fn with_center(
        rep: &Representation,
        depth: usize,
        center: HPoint,
    ) -> Result<Self, SpectraError> {
        let ball = Ball::enumerate(rep.rank(), depth, DEFAULT_DEPTH_CAP)?;
        let images = rep.evaluate_ball(&ball);
        let elements = ball
            .words()
            .iter()
            .cloned()
            .zip(images)
            .skip(1)
            .collect();
        Ok(Self { center, elements })
    }

    pub fn center(&self) -> HPoint {
        self.center
    }

    /// Group elements whose bisectors bound the domain.
    pub fn elements(&self) -> &[(Word, Isometry)] {
        &self.elements
    }

    /// Bisector half-planes as the points `g·center`.
    pub fn half_planes(&self) -> impl Iterator<Item = (&Word, HPoint)> + '_ {
        self.elements.iter().map(|(w, g)| (w, g.apply(self.center)))
    }

    /// Whether `p` is at least as close to the center as to every listed
    /// translate of it, up to `tol`.
    pub fn contains(&self, p: &HPoint, tol: f64) -> bool {
        let d = distance(p, &self.center);
        self.half_planes()
            .all(|(_, c)| d <= distance(p, &c) + tol)
    }

    /// Moves `p` toward the center by the listed elements until no element
    /// decreases the distance, then picks a canonical point among the
    /// equally close translates. Returns the point and the word `w` with
    /// `w·p` equal to it.
    pub fn reduce(&self, p: &HPoint) -> (HPoint, Word) {
        let mut z = *p;
        let mut word = Word::empty();
        let mut d = distance(&z, &self.center);
        for _ in 0..MAX_STEPS {
            let mut best: Option<(f64, usize, HPoint)> = None;
            for (k, (_, g)) in self.elements.iter().enumerate() {
                let q = g.apply(z);
                let dq = distance(&q, &self.center);
                if best.is_none_or(|b| dq < b.0) {
                    best = Some((dq, k, q));
                }
            }
            match best {
                Some((dq, k, q)) if dq < d - DECREASE_EPS => {
                    z = q;
                    d = dq;
                    word = self.elements[k].0.concat(&word);
                }
                _ => break,
            }
        }
        self.break_tie(z, word, d)
    }

    // Points on the boundary of the domain have equally close translates;
    // choose the least one by (x, y) among those reachable through ties.
    fn break_tie(&self, z: HPoint, word: Word, d: f64) -> (HPoint, Word) {
        let mut found: Vec<(HPoint, Word)> = alloc::vec![(z, word)];
        let mut next = 0;
        while next < found.len() && found.len() < 64 {
            let (p, w) = found[next].clone();
            next += 1;
            for (gw, g) in &self.elements {
                let q = g.apply(p);
                if distance(&q, &self.center) > d + TIE_EPS {
                    continue;
                }
                if found.iter().any(|(f, _)| distance(f, &q) < TIE_EPS) {
                    continue;
                }
                found.push((q, gw.concat(&w)));
            }
        }
        found
            .into_iter()
            .min_by(|a, b| {
                a.0.x()
                    .total_cmp(&b.0.x())
                    .then_with(|| a.0.y().total_cmp(&b.0.y()))
            })
            .expect("nonempty")
    }

    /// Whether `p` and `q` are equivalent under the identity or one of the
    /// listed elements, within `tol`.
    pub fn equivalent(&self, p: &HPoint, q: &HPoint, tol: f64) -> bool {
        distance(p, q) < tol
            || self
                .elements
                .iter()
                .any(|(_, g)| distance(&g.apply(*p), q) < tol)
    }
}

/// Reduces `p` using the ball of radius `depth`.
pub fn reduce_point(
    rep: &Representation,
    p: &HPoint,
    depth: usize,
) -> Result<(HPoint, Word), SpectraError> {
    Ok(DirichletDomain::new(rep, depth)?.reduce(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::preset;

    #[test]
    fn center_is_fixed() {
        let rep = preset("modular_torus").unwrap();
        let (z, w) = reduce_point(&rep, &HPoint::I, 1).unwrap();
        assert_eq!(z, HPoint::I);
        assert!(w.is_empty());
    }

    #[test]
    fn diagonal_pulls_back() {
        let rep = Representation::new(
            "diag",
            alloc::vec![
                Isometry::diagonal(2.0).unwrap(),
                Isometry::new(1.25, 0.75, 0.75, 1.25).unwrap(),
            ],
        )
        .unwrap();
        let (z, w) = reduce_point(&rep, &HPoint::new(0.0, 4.0).unwrap(), 1).unwrap();
        assert!(distance(&z, &HPoint::I) < 1e-12);
        assert_eq!(alloc::format!("{w}"), "A");
    }

    #[test]
    fn reduced_points_are_locally_minimal() {
        let rep = preset("modular_torus").unwrap();
        let dom = DirichletDomain::new(&rep, DOMAIN_DEPTH).unwrap();
        for (x, y) in [(3.7, 0.05), (-12.0, 2.0), (0.3, 0.001), (100.0, 40.0)] {
            let p = HPoint::new(x, y).unwrap();
            let (z, w) = dom.reduce(&p);
            assert!(dom.contains(&z, 1e-9), "{z}");
            let moved = rep.evaluate(&w).apply(p);
            assert!(distance(&moved, &z) < 1e-9);
        }
    }
}
