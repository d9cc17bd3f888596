use alloc::vec::Vec;

use super::angles::{crossing_witnesses, AngleOptions};
use super::SpectraError;
use crate::grp::{ConjClass, Representation};
use crate::math;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CollarReport {
    /// Distinct crossing class pairs examined.
    pub crossing_pairs: usize,
    /// Least `sinh(ℓ₁/2)·sinh(ℓ₂/2)` over those pairs, `+∞` if none.
    pub min_product: f64,
    pub argmin: Option<(ConjClass, ConjClass)>,
    /// Pairs whose product falls below `1 − 1e-9`.
    pub violations: usize,
}

impl CollarReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Checks `sinh(ℓ₁/2)·sinh(ℓ₂/2) ≥ 1` for every crossing pair of primitive
/// classes up to `depth`, with conjugators up to the same depth.
pub fn collar_check(rep: &Representation, depth: usize) -> Result<CollarReport, SpectraError> {
    collar_check_with(rep, &AngleOptions::new(depth))
}

pub fn collar_check_with(
    rep: &Representation,
    opts: &AngleOptions,
) -> Result<CollarReport, SpectraError> {
    let witnesses = crossing_witnesses(rep, opts)?;
    let mut pairs: Vec<(&ConjClass, &ConjClass)> =
        witnesses.iter().map(|w| (&w.first, &w.second)).collect();
    pairs.dedup();
    let half_sinh = |c: &ConjClass| -> Result<f64, SpectraError> {
        Ok(math::sinh(rep.evaluate(c.word()).translation_length()? / 2.0))
    };
    let mut report = CollarReport {
        crossing_pairs: pairs.len(),
        min_product: f64::INFINITY,
        argmin: None,
        violations: 0,
    };
    for (c1, c2) in pairs {
        let p = half_sinh(c1)? * half_sinh(c2)?;
        if p < 1.0 - 1e-9 {
            report.violations += 1;
        }
        if p < report.min_product {
            report.min_product = p;
            report.argmin = Some((c1.clone(), c2.clone()));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::preset;

    #[test]
    fn modular_generators_product() {
        let rep = preset("modular_torus").unwrap();
        let r = collar_check(&rep, 1).unwrap();
        assert!(r.holds());
        assert!((r.min_product - 1.25).abs() < 1e-12);
    }
}
