use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::presets::PresetSpec;
use super::word::{Ball, Letter, Word};
use super::GrpError;
use crate::hypgeom::{commutator_trace, Isometry};

/// Images of the free generators in PSL(2,R).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Representation {
    label: String,
    generators: Vec<Isometry>,
    #[cfg_attr(feature = "serde", serde(skip))]
    inverses: Vec<Isometry>,
    preset: Option<PresetSpec>,
    jorgensen: Option<bool>,
}

impl Representation {
    /// Requires every generator image to be hyperbolic. For rank 2 the
    /// Jørgensen inequality is evaluated and recorded, not enforced.
    pub fn new(label: impl Into<String>, generators: Vec<Isometry>) -> Result<Self, GrpError> {
        if let Some(i) = generators.iter().position(|g| !g.is_hyperbolic()) {
            return Err(GrpError::NotHyperbolic(i));
        }
        assert!(generators.len() <= Letter::MAX_RANK, "rank too large");
        let jorgensen = match generators.as_slice() {
            [a, b] => Some(jorgensen_quantity(a, b) >= 1.0),
            _ => None,
        };
        Ok(Self {
            label: label.into(),
            inverses: generators.iter().map(Isometry::inverse).collect(),
            generators,
            preset: None,
            jorgensen,
        })
    }

    pub(crate) fn with_preset(mut self, spec: PresetSpec) -> Self {
        self.preset = Some(spec);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Isometry] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> Isometry {
        self.generators[i]
    }

    /// The preset this representation was built from, if any.
    pub fn preset(&self) -> Option<&PresetSpec> {
        self.preset.as_ref()
    }

    /// Whether the rank-2 Jørgensen inequality held for the generators.
    pub fn jorgensen_ok(&self) -> Option<bool> {
        self.jorgensen
    }

    pub fn letter(&self, l: Letter) -> Isometry {
        if l.is_inverse() {
            self.inverses[l.generator()]
        } else {
            self.generators[l.generator()]
        }
    }

    /// Left-to-right product of the letter images.
    ///
    /// # Panics
    /// If the word uses a generator beyond the rank.
    pub fn evaluate(&self, w: &Word) -> Isometry {
        assert!(w.rank_needed() <= self.rank(), "word {w} exceeds rank {}", self.rank());
        w.letters()
            .iter()
            .fold(Isometry::IDENTITY, |acc, &l| acc.compose(&self.letter(l)))
    }

    /// Images of every word in the ball, sharing prefixes.
    pub fn evaluate_ball(&self, ball: &Ball) -> Vec<Isometry> {
        assert!(ball.rank() <= self.rank(), "ball rank exceeds representation rank");
        let mut out: Vec<Isometry> = Vec::with_capacity(ball.len());
        for (i, w) in ball.words().iter().enumerate() {
            let img = match w.letters().last() {
                None => Isometry::IDENTITY,
                Some(&l) => out[ball.parent(i)].compose(&self.letter(l)),
            };
            out.push(img);
        }
        out
    }

    /// `g ρ g⁻¹`.
    pub fn conjugate(&self, g: &Isometry) -> Self {
        let gens = self.generators.iter().map(|x| x.conjugate_by(g)).collect();
        let mut out = Self::new(format!("{}^g", self.label), gens)
            .expect("conjugation preserves hyperbolicity");
        out.preset = None;
        out
    }

    /// The representation of the free group on the given words, each
    /// evaluated in `self`.
    pub fn subgroup(&self, label: impl Into<String>, words: &[Word]) -> Result<Self, GrpError> {
        let gens = words.iter().map(|w| self.evaluate(w)).collect();
        Self::new(label, gens)
    }

    /// Same representation with new generator images, keeping the label.
    pub fn with_generators(&self, generators: Vec<Isometry>) -> Result<Self, GrpError> {
        let mut out = Self::new(self.label.clone(), generators)?;
        out.preset = self.preset;
        Ok(out)
    }
}

/// `|tr²A − 4| + |tr[A,B] − 2|`; at least 1 for discrete non-elementary
/// two-generator groups.
pub fn jorgensen_quantity(a: &Isometry, b: &Isometry) -> f64 {
    let t = a.trace();
    (t * t - 4.0).abs() + (commutator_trace(a, b) - 2.0).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modular() -> Representation {
        Representation::new(
            "modular",
            alloc::vec![
                Isometry::new(1.0, 1.0, 1.0, 2.0).unwrap(),
                Isometry::new(1.0, -1.0, -1.0, 2.0).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let rep = modular();
        assert_eq!(rep.evaluate(&Word::empty()), Isometry::IDENTITY);
        assert_eq!(rep.evaluate(&"a".parse().unwrap()).entries(), [1.0, 1.0, 1.0, 2.0]);
        assert_eq!(rep.evaluate(&"ab".parse().unwrap()).entries(), [0.0, 1.0, -1.0, 3.0]);
    }

    #[test]
    fn ball_evaluation_matches_direct() {
        let rep = modular();
        let ball = Ball::new(2, 4).unwrap();
        for (w, g) in ball.words().iter().zip(rep.evaluate_ball(&ball)) {
            assert!(g.approx_eq(&rep.evaluate(w), 1e-15), "{w}");
        }
    }

    #[test]
    fn rejects_non_hyperbolic_generator() {
        let r = Representation::new("p", alloc::vec![Isometry::new(1.0, 1.0, 0.0, 1.0).unwrap()]);
        assert_eq!(r.unwrap_err(), GrpError::NotHyperbolic(0));
    }

    #[test]
    fn jorgensen_flag_recorded() {
        assert_eq!(modular().jorgensen_ok(), Some(true));
        let a = modular().generator(0);
        assert!((jorgensen_quantity(&a, &modular().generator(1)) - 9.0).abs() < 1e-12);
    }
}
