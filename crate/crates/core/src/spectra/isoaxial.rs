use super::axes::{axes_set_with_cap, AxesSet};
use super::{check_tol, SpectraError};
use crate::grp::{Representation, DEFAULT_DEPTH_CAP};

/// Which truncated axes set sits inside the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Direction {
    FirstInSecond,
    SecondInFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    EqualOnTruncation,
    Contained(Direction),
    Distinct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IsoaxialReport {
    pub verdict: Verdict,
    /// Axes of the first group at `depth1` missing from the second at `depth2`.
    pub unmatched_forward: usize,
    /// Axes of the second group at `depth1` missing from the first at `depth2`.
    pub unmatched_backward: usize,
    pub checked_forward: usize,
    pub checked_backward: usize,
}

/// Compares axes sets: each group's axes at `depth1` are looked up among the
/// other group's axes at the deeper `depth2`.
pub fn isoaxial_compare(
    rep1: &Representation,
    rep2: &Representation,
    depth1: usize,
    depth2: usize,
    tol: f64,
) -> Result<IsoaxialReport, SpectraError> {
    check_tol(tol)?;
    let cap = DEFAULT_DEPTH_CAP;
    Ok(isoaxial_compare_sets(
        &axes_set_with_cap(rep1, depth1, cap)?,
        &axes_set_with_cap(rep2, depth1, cap)?,
        &axes_set_with_cap(rep1, depth2, cap)?,
        &axes_set_with_cap(rep2, depth2, cap)?,
        tol,
    ))
}

/// [`isoaxial_compare`] on precomputed axes sets: `small*` at the shallow
/// depth, `big*` at the deep one.
pub fn isoaxial_compare_sets(
    small1: &AxesSet,
    small2: &AxesSet,
    big1: &AxesSet,
    big2: &AxesSet,
    tol: f64,
) -> IsoaxialReport {
    let unmatched_forward = small1.unmatched(big2, tol);
    let unmatched_backward = small2.unmatched(big1, tol);
    let verdict = match (unmatched_forward == 0, unmatched_backward == 0) {
        (true, true) => Verdict::EqualOnTruncation,
        (true, false) => Verdict::Contained(Direction::FirstInSecond),
        (false, true) => Verdict::Contained(Direction::SecondInFirst),
        (false, false) => Verdict::Distinct,
    };
    IsoaxialReport {
        verdict,
        unmatched_forward,
        unmatched_backward,
        checked_forward: small1.len(),
        checked_backward: small2.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{preset, Word};
    use crate::hypgeom::Isometry;

    #[test]
    fn self_and_conjugate_are_equal() {
        let rep = preset("modular_torus").unwrap();
        let r = isoaxial_compare(&rep, &rep, 2, 4, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::EqualOnTruncation);
        let g = rep.evaluate(&"aB".parse::<Word>().unwrap());
        let r = isoaxial_compare(&rep, &rep.conjugate(&g), 2, 6, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::EqualOnTruncation);
    }

    #[test]
    fn infinite_index_subgroup_is_contained() {
        let rep = preset("modular_torus").unwrap();
        let words: alloc::vec::Vec<Word> = ["a", "bAB"].iter().map(|w| w.parse().unwrap()).collect();
        let sub = rep.subgroup("sub", &words).unwrap();
        let r = isoaxial_compare(&sub, &rep, 2, 6, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Contained(Direction::FirstInSecond));
    }

    #[test]
    fn unrelated_groups_are_distinct() {
        let rep = preset("modular_torus").unwrap();
        let other = rep.conjugate(&Isometry::diagonal(1.3).unwrap());
        let r = isoaxial_compare(&rep, &other, 1, 3, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Distinct);
    }
}
