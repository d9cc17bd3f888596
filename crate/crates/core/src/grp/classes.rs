use alloc::vec::Vec;
use core::fmt;

use super::word::{Ball, Word};
use super::GrpError;

/// A nontrivial conjugacy class, stored as its canonical word: the least
/// rotation of the cyclic reduction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct ConjClass {
    word: Word,
}

impl ConjClass {
    /// The class of `w`, or `None` for the identity.
    pub fn of(w: &Word) -> Option<Self> {
        let reduced = w.cyclic_reduction();
        if reduced.is_empty() {
            return None;
        }
        Some(ConjClass {
            word: least_rotation(&reduced),
        })
    }

    /// The class of `w` merged with the class of `w⁻¹`, represented by the
    /// smaller canonical word.
    pub fn unoriented_of(w: &Word) -> Option<Self> {
        let c = Self::of(w)?;
        let ci = c.inverse();
        Some(if ci < c { ci } else { c })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn inverse(&self) -> Self {
        ConjClass {
            word: least_rotation(&self.word.inverse()),
        }
    }

    pub fn unoriented(&self) -> Self {
        let ci = self.inverse();
        if ci < *self {
            ci
        } else {
            self.clone()
        }
    }

    /// Smallest `p` with the word equal to its rotation by `p`.
    pub fn period(&self) -> usize {
        let s = self.word.letters();
        let n = s.len();
        (1..=n)
            .find(|&p| n % p == 0 && (0..n).all(|i| s[i] == s[(i + p) % n]))
            .unwrap_or(n)
    }

    /// True unless the class is a proper power.
    pub fn is_primitive(&self) -> bool {
        self.period() == self.len()
    }
}

impl fmt::Display for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.word, f)
    }
}

impl fmt::Debug for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.word)
    }
}

fn least_rotation(w: &Word) -> Word {
    let n = w.len();
    let s = w.letters();
    let mut best = 0;
    for k in 1..n {
        let ord = (0..n)
            .map(|i| s[(k + i) % n].cmp(&s[(best + i) % n]))
            .find(|o| o.is_ne());
        if ord == Some(core::cmp::Ordering::Less) {
            best = k;
        }
    }
    w.rotate(best)
}

/// All nontrivial classes with a cyclically reduced representative of
/// length at most `depth`, in shortlex order of canonical words. With
/// `oriented = false` a class and its inverse are merged.
pub fn conjugacy_classes(
    rank: usize,
    depth: usize,
    oriented: bool,
    cap: usize,
) -> Result<Vec<ConjClass>, GrpError> {
    let ball = Ball::enumerate(rank, depth, cap)?;
    // the canonical word of each class is itself in the ball, so keep the
    // words that are their own canonical form
    let out = ball
        .words()
        .iter()
        .filter(|w| !w.is_empty() && w.is_cyclically_reduced())
        .filter_map(|w| {
            let c = if oriented {
                ConjClass::of(w)?
            } else {
                ConjClass::unoriented_of(w)?
            };
            (c.word == *w).then_some(c)
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::string::String;

    fn class(s: &str) -> ConjClass {
        ConjClass::of(&s.parse().unwrap()).unwrap()
    }

    fn names(cs: &[ConjClass]) -> Vec<String> {
        cs.iter().map(|c| format!("{c}")).collect()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(format!("{}", class("ba")), "ab");
        assert_eq!(format!("{}", class("bAAb")), "AAbb");
        assert_eq!(class("bab"), class("bba"));
        assert_eq!(class("abA"), class("b"));
        assert!(ConjClass::of(&"aA".parse().unwrap()).is_none());
    }

    #[test]
    fn depth_one_and_two() {
        let c1 = conjugacy_classes(2, 1, true, 12).unwrap();
        assert_eq!(names(&c1), ["a", "A", "b", "B"]);
        let c2 = conjugacy_classes(2, 2, true, 12).unwrap();
        assert_eq!(c2.len(), 12);
        assert_eq!(
            names(&c2[4..]),
            ["aa", "ab", "aB", "AA", "Ab", "AB", "bb", "BB"]
        );
        let u2 = conjugacy_classes(2, 2, false, 12).unwrap();
        assert_eq!(names(&u2), ["a", "b", "aa", "ab", "aB", "bb"]);
    }

    #[test]
    fn primitivity() {
        assert!(class("a").is_primitive());
        assert!(!class("aa").is_primitive());
        assert!(!class("abab").is_primitive());
        assert!(class("aab").is_primitive());
        assert_eq!(class("abab").period(), 2);
    }

    #[test]
    fn unoriented_merges_inverse() {
        assert_eq!(class("ab").unoriented(), class("AB").unoriented());
        assert_eq!(format!("{}", class("AB").unoriented()), "ab");
        assert_eq!(class("baBA").unoriented(), class("abAB"));
        assert_ne!(class("baBA"), class("abAB"));
    }
}
