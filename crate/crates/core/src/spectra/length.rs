use alloc::vec::Vec;

use super::{check_tol, cluster_sorted, SpectraError};
use crate::grp::{conjugacy_classes, ConjClass, Representation, DEFAULT_DEPTH_CAP};

/// One value of the length spectrum.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LengthEntry {
    pub length: f64,
    pub multiplicity: usize,
    pub witnesses: Vec<ConjClass>,
}

/// Lengths of the closed geodesics given by primitive unoriented classes
/// up to `depth`, clustered within `tol` and sorted ascending.
pub fn length_spectrum(
    rep: &Representation,
    depth: usize,
    tol: f64,
) -> Result<Vec<LengthEntry>, SpectraError> {
    length_spectrum_with_cap(rep, depth, tol, DEFAULT_DEPTH_CAP)
}

pub fn length_spectrum_with_cap(
    rep: &Representation,
    depth: usize,
    tol: f64,
    cap: usize,
) -> Result<Vec<LengthEntry>, SpectraError> {
    check_tol(tol)?;
    let mut lengths: Vec<(f64, ConjClass)> = conjugacy_classes(rep.rank(), depth, false, cap)?
        .into_iter()
        .filter(ConjClass::is_primitive)
        .filter_map(|c| {
            let l = rep.evaluate(c.word()).translation_length().ok()?;
            Some((l, c))
        })
        .collect();
    lengths.sort_by(|x, y| x.0.total_cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
    let values: Vec<f64> = lengths.iter().map(|x| x.0).collect();
    Ok(cluster_sorted(&values, tol)
        .into_iter()
        .map(|r| {
            let n = r.len();
            LengthEntry {
                length: values[r.clone()].iter().sum::<f64>() / n as f64,
                multiplicity: n,
                witnesses: lengths[r].iter().map(|x| x.1.clone()).collect(),
            }
        })
        .collect())
}
