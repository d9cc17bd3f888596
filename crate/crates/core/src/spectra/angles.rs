use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::dirichlet::{DirichletDomain, DOMAIN_DEPTH};
use super::{check_tol, cluster_sorted, SpectraError, CLUSTER_TOL};
use crate::grp::{conjugacy_classes, Ball, ConjClass, Representation, Word, DEFAULT_DEPTH_CAP};
use crate::hypgeom::{angle, crossing, Apply, Geodesic, HPoint, Isometry, COMPARE_EPS};
use crate::math;

/// Tolerance for treating two crossing configurations as the same.
const CONFIG_EPS: f64 = 1e-6;

/// Default cap on the conjugator depth.
pub const DEFAULT_CONJ_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct AngleOptions {
    /// Maximal length of the class representatives.
    pub depth: usize,
    /// Maximal length of the conjugators moving the second axis.
    pub conj_depth: usize,
    /// Clustering tolerance for angle values.
    pub tol: f64,
    /// Include self-crossings of a single class.
    pub include_self: bool,
    /// Ball depth of the reduction domain.
    pub domain_depth: usize,
    /// Worker threads; 0 uses the default pool. Never changes the output.
    pub workers: usize,
    pub word_cap: usize,
    pub conj_cap: usize,
}

impl AngleOptions {
    pub fn new(depth: usize) -> Self {
        Self {
            depth,
            conj_depth: depth,
            tol: CLUSTER_TOL,
            include_self: true,
            domain_depth: DOMAIN_DEPTH,
            workers: 0,
            word_cap: DEFAULT_DEPTH_CAP,
            conj_cap: DEFAULT_CONJ_CAP,
        }
    }
}

/// One crossing of two closed geodesics, up to the group action.
///
/// The axis of `first` crosses the image of the axis of `second` under
/// `conjugator` at `point` (after reduction), with counter-clockwise angle
/// `angle` from the first line to the second. For self-crossings the angle
/// is folded into `(0, π/2]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AngleWitness {
    pub first: ConjClass,
    pub second: ConjClass,
    pub conjugator: Word,
    pub point: HPoint,
    pub angle: f64,
}

impl AngleWitness {
    /// Recomputes the angle by evaluating the words afresh.
    pub fn recompute(&self, rep: &Representation) -> Result<f64, SpectraError> {
        let g1 = rep.evaluate(self.first.word()).axis()?;
        let k = self.conjugator.clone();
        let h = rep.evaluate(&self.second.word().conjugate_by(&k)).axis()?;
        let theta = angle(&g1, &h)?;
        Ok(if self.first == self.second {
            theta.min(math::PI - theta)
        } else {
            theta
        })
    }

    pub fn is_self_crossing(&self) -> bool {
        self.first == self.second
    }
}

/// One value of the angle spectrum.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AngleEntry {
    pub angle: f64,
    pub multiplicity: usize,
    pub witnesses: Vec<AngleWitness>,
}

struct ClassData {
    class: ConjClass,
    axis: Geodesic,
    // straightens the axis onto the imaginary axis
    unframe: Isometry,
    length: f64,
}

impl ClassData {
    /// Position of a point of the axis along it, modulo the translation
    /// length. Crossings in one group orbit share it.
    fn position(&self, z: &HPoint) -> f64 {
        math::rem_euclid(math::ln(self.unframe.apply(*z).y()), self.length)
    }

    fn same_position(&self, s: f64, t: f64) -> bool {
        let d = (s - t).abs();
        d.min(self.length - d) < CONFIG_EPS
    }
}

fn class_data(rep: &Representation, opts: &AngleOptions) -> Result<Vec<ClassData>, SpectraError> {
    Ok(
        conjugacy_classes(rep.rank(), opts.depth, false, opts.word_cap)?
            .into_iter()
            .filter(ConjClass::is_primitive)
            .filter_map(|class| {
                let g = rep.evaluate(class.word());
                let axis = g.axis().ok()?;
                Some(ClassData {
                    class,
                    axis,
                    unframe: Isometry::frame(&axis).inverse(),
                    length: g.translation_length().ok()?,
                })
            })
            .collect(),
    )
}

// Crossings of the axis of `first` with translates `k·axis(second)`, one per
// group orbit. The stabilizer of the first axis is generated by the
// primitive element itself, so two crossings on it are in one orbit exactly
// when their positions agree modulo its length. A self-crossing `z` also
// appears on the axis as `k⁻¹z`.
fn pair_witnesses(
    first: &ClassData,
    second: &ClassData,
    same: bool,
    conjugators: &[(Word, Isometry)],
    domain: &DirichletDomain,
) -> Vec<AngleWitness> {
    let mut out: Vec<AngleWitness> = Vec::new();
    let mut seen: Vec<(f64, f64)> = Vec::new();
    for (kw, k) in conjugators {
        let moved = k.apply(second.axis);
        if same && moved.approx_eq_unoriented(&first.axis, COMPARE_EPS) {
            continue;
        }
        let z = match crossing(&first.axis, &moved) {
            Ok(Some(z)) => z,
            _ => continue,
        };
        let Ok(mut theta) = angle(&first.axis, &moved) else {
            continue;
        };
        if same {
            theta = theta.min(math::PI - theta);
        }
        let pos = first.position(&z);
        let known = seen
            .iter()
            .any(|&(a, s)| (a - theta).abs() < CONFIG_EPS && first.same_position(s, pos));
        if known {
            continue;
        }
        seen.push((theta, pos));
        if same {
            seen.push((theta, first.position(&k.inverse().apply(z))));
        }
        let (point, _) = domain.reduce(&z);
        out.push(AngleWitness {
            first: first.class.clone(),
            second: second.class.clone(),
            conjugator: kw.clone(),
            point,
            angle: theta,
        });
    }
    out
}

#[cfg(feature = "parallel")]
fn map_pairs<F>(n: usize, workers: usize, f: F) -> Vec<Vec<AngleWitness>>
where
    F: Fn(usize) -> Vec<AngleWitness> + Sync + Send,
{
    use rayon::prelude::*;
    let run = || (0..n).into_par_iter().map(&f).collect();
    if workers == 0 {
        return run();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => (0..n).map(&f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn map_pairs<F>(n: usize, _workers: usize, f: F) -> Vec<Vec<AngleWitness>>
where
    F: Fn(usize) -> Vec<AngleWitness>,
{
    (0..n).map(f).collect()
}

/// All crossing configurations between primitive classes up to the
/// configured depths, one witness per group orbit of (point, class pair).
///
/// Pairs are unordered, taken in class order with the smaller class first.
pub fn crossing_witnesses(
    rep: &Representation,
    opts: &AngleOptions,
) -> Result<Vec<AngleWitness>, SpectraError> {
    check_tol(opts.tol)?;
    let classes = class_data(rep, opts)?;
    let ball = Ball::enumerate(rep.rank(), opts.conj_depth, opts.conj_cap)?;
    let conjugators: Vec<(Word, Isometry)> = ball
        .words()
        .iter()
        .cloned()
        .zip(rep.evaluate_ball(&ball))
        .collect();
    let domain = DirichletDomain::new(rep, opts.domain_depth)?;
    let mut pairs = Vec::new();
    for i in 0..classes.len() {
        for j in i..classes.len() {
            if i != j || opts.include_self {
                pairs.push((i, j));
            }
        }
    }
    let per_pair = map_pairs(pairs.len(), opts.workers, |p| {
        let (i, j) = pairs[p];
        pair_witnesses(&classes[i], &classes[j], i == j, &conjugators, &domain)
    });
    Ok(per_pair.into_iter().flatten().collect())
}

/// The angle spectrum: crossing angles clustered within `opts.tol`, in
/// ascending order, each with its multiplicity and witnesses.
pub fn angle_spectrum(
    rep: &Representation,
    opts: &AngleOptions,
) -> Result<Vec<AngleEntry>, SpectraError> {
    let mut witnesses = crossing_witnesses(rep, opts)?;
    sort_witnesses(&mut witnesses);
    Ok(entries_from_sorted(witnesses, opts.tol))
}

/// The spectrum with each angle `θ` identified with its supplement `π − θ`:
/// witnesses are folded into `(0, π/2]` and reclustered within `tol`.
pub fn folded_spectrum(spec: &[AngleEntry], tol: f64) -> Result<Vec<AngleEntry>, SpectraError> {
    check_tol(tol)?;
    let mut witnesses: Vec<AngleWitness> = spec
        .iter()
        .flat_map(|e| e.witnesses.iter().cloned())
        .map(|mut w| {
            w.angle = w.angle.min(math::PI - w.angle);
            w
        })
        .collect();
    sort_witnesses(&mut witnesses);
    Ok(entries_from_sorted(witnesses, tol))
}

fn sort_witnesses(witnesses: &mut [AngleWitness]) {
    witnesses.sort_by(|a, b| {
        a.angle
            .total_cmp(&b.angle)
            .then_with(|| a.first.cmp(&b.first))
            .then_with(|| a.second.cmp(&b.second))
            .then_with(|| a.conjugator.cmp(&b.conjugator))
    });
}

fn entries_from_sorted(witnesses: Vec<AngleWitness>, tol: f64) -> Vec<AngleEntry> {
    let values: Vec<f64> = witnesses.iter().map(|w| w.angle).collect();
    cluster_sorted(&values, tol)
        .into_iter()
        .map(|r| {
            let n = r.len();
            AngleEntry {
                angle: values[r.clone()].iter().sum::<f64>() / n as f64,
                multiplicity: n,
                witnesses: witnesses[r].to_vec(),
            }
        })
        .collect()
}

/// Summary of how often angle values repeat.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MultiplicityProfile {
    /// Number of distinct values having each multiplicity.
    pub histogram: BTreeMap<usize, usize>,
    pub max_multiplicity: usize,
    /// Values occurring exactly once.
    pub singles: usize,
    /// Values occurring more than once.
    pub repeated: usize,
    pub values: usize,
}

pub fn multiplicity_profile(spec: &[AngleEntry]) -> MultiplicityProfile {
    profile_of(spec.iter().map(|e| e.multiplicity))
}

fn profile_of<I: Iterator<Item = usize>>(mults: I) -> MultiplicityProfile {
    let mut p = MultiplicityProfile::default();
    for m in mults {
        *p.histogram.entry(m).or_insert(0) += 1;
        p.max_multiplicity = p.max_multiplicity.max(m);
        p.values += 1;
        if m == 1 {
            p.singles += 1;
        } else {
            p.repeated += 1;
        }
    }
    p
}

/// Multiplicities after also identifying witnesses related by `symmetry`,
/// an isometry normalizing the group (for instance the half-turn that
/// inverts both generators of a two-generator group).
pub fn symmetric_multiplicity_profile(
    spec: &[AngleEntry],
    symmetry: &Isometry,
    domain: &DirichletDomain,
) -> MultiplicityProfile {
    profile_of(spec.iter().map(|e| {
        let mut reps: Vec<HPoint> = Vec::new();
        for w in &e.witnesses {
            let image = symmetry.apply(w.point);
            let dup = reps.iter().any(|r| {
                domain.equivalent(r, &w.point, CONFIG_EPS) || domain.equivalent(r, &image, CONFIG_EPS)
            });
            if !dup {
                reps.push(w.point);
            }
        }
        reps.len()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{preset, PresetSpec};

    fn modular() -> Representation {
        preset("modular_torus").unwrap()
    }

    #[test]
    fn generator_pair_angle_appears() {
        let spec = angle_spectrum(&modular(), &AngleOptions::new(1)).unwrap();
        let hit = spec.iter().find(|e| (libm::sin(e.angle).powi(2) - 0.64).abs() < 1e-9);
        let hit = hit.expect("generator crossing");
        assert!(hit
            .witnesses
            .iter()
            .any(|w| alloc::format!("{}{}{}", w.first, w.second, w.conjugator) == "ab1"));
    }

    #[test]
    fn schottky_generators_do_not_cross() {
        let rep = PresetSpec::Schottky { lambda: 2.0, mu: 2.0, offset: 3.0 }.build().unwrap();
        let mut opts = AngleOptions::new(1);
        opts.conj_depth = 1;
        assert!(crossing_witnesses(&rep, &opts).unwrap().is_empty());
    }

    #[test]
    fn witnesses_recompute() {
        let rep = modular();
        for e in angle_spectrum(&rep, &AngleOptions::new(2)).unwrap() {
            for w in &e.witnesses {
                assert!((w.recompute(&rep).unwrap() - w.angle).abs() < 1e-9);
                assert!((w.angle - e.angle).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn profile_counts() {
        let entry = |m: usize| AngleEntry {
            angle: 1.0,
            multiplicity: m,
            witnesses: Vec::new(),
        };
        let p = multiplicity_profile(&[entry(1), entry(1), entry(3)]);
        assert_eq!(p.max_multiplicity, 3);
        assert_eq!(p.singles, 2);
        assert_eq!(p.repeated, 1);
        assert_eq!(p.histogram.get(&1), Some(&2));
    }
}
