use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::representation::Representation;
use super::GrpError;
use crate::hypgeom::{BoundaryPoint, Isometry};
use crate::math;

/// A named rank-2 representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PresetSpec {
    /// `a = [[1,1],[1,2]]`, `b = [[1,-1],[-1,2]]`: the arithmetic
    /// once-punctured torus.
    ModularTorus,
    /// A once-punctured torus with generator traces `3 + s` and `3 + √2·s`,
    /// placed in the frame of the modular torus.
    PerturbedTorus { s: f64 },
    /// Translations of lengths `lambda` and `mu` along axes at distance
    /// `offset`.
    Schottky { lambda: f64, mu: f64, offset: f64 },
}

impl PresetSpec {
    pub fn build(&self) -> Result<Representation, GrpError> {
        let gens = match *self {
            PresetSpec::ModularTorus => modular_generators(),
            PresetSpec::PerturbedTorus { s } => perturbed_generators(s)?,
            PresetSpec::Schottky { lambda, mu, offset } => schottky_generators(lambda, mu, offset)?,
        };
        Ok(Representation::new(self.to_string(), gens)?.with_preset(*self))
    }

    /// Whether the representation is expected to have integral traces.
    pub fn is_arithmetic(&self) -> bool {
        matches!(self, PresetSpec::ModularTorus)
            || matches!(self, PresetSpec::PerturbedTorus { s } if *s == 0.0)
    }
}

/// Builds a preset from its textual form, e.g. `perturbed_torus(0.05)`.
pub fn preset(name: &str) -> Result<Representation, GrpError> {
    name.parse::<PresetSpec>()?.build()
}

impl fmt::Display for PresetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresetSpec::ModularTorus => f.write_str("modular_torus"),
            PresetSpec::PerturbedTorus { s } => write!(f, "perturbed_torus({s:?})"),
            PresetSpec::Schottky { lambda, mu, offset } => {
                write!(f, "schottky({lambda:?},{mu:?},{offset:?})")
            }
        }
    }
}

impl FromStr for PresetSpec {
    type Err = GrpError;

    fn from_str(s: &str) -> Result<Self, GrpError> {
        let s = s.trim();
        let unknown = || GrpError::UnknownPreset(s.to_string());
        let (name, args) = match s.find('(') {
            Some(i) => {
                let inner = s[i + 1..].strip_suffix(')').ok_or_else(unknown)?;
                let args = inner
                    .split(',')
                    .map(|a| {
                        a.trim()
                            .parse::<f64>()
                            .map_err(|_| GrpError::InvalidParameter(format!("{a:?} in {s}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                (s[..i].trim(), args)
            }
            None => (s, Vec::new()),
        };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(GrpError::InvalidParameter(format!(
                    "{name} takes {n} parameter(s), got {}",
                    args.len()
                )))
            }
        };
        match name {
            "modular_torus" => arity(0).map(|_| PresetSpec::ModularTorus),
            "perturbed_torus" => arity(1).map(|_| PresetSpec::PerturbedTorus { s: args[0] }),
            "schottky" => arity(3).map(|_| PresetSpec::Schottky {
                lambda: args[0],
                mu: args[1],
                offset: args[2],
            }),
            _ => Err(unknown()),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for PresetSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for PresetSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = <alloc::string::String as serde::Deserialize>::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn modular_generators() -> Vec<Isometry> {
    vec![
        Isometry::new(1.0, 1.0, 1.0, 2.0).expect("unimodular"),
        Isometry::new(1.0, -1.0, -1.0, 2.0).expect("unimodular"),
    ]
}

type Mat = [f64; 4];

fn mul(x: &Mat, y: &Mat) -> Mat {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

fn adj(x: &Mat) -> Mat {
    [x[3], -x[1], -x[2], x[0]]
}

fn det(x: &Mat) -> f64 {
    x[0] * x[3] - x[1] * x[2]
}

/// Möbius matrix sending three distinct finite points to `0, ∞, 1`.
fn to_standard(z: [f64; 3]) -> Mat {
    let [z1, z2, z3] = z;
    [z3 - z2, -z1 * (z3 - z2), z3 - z1, -z2 * (z3 - z1)]
}

/// Normal form with traces `x`, `y` and `tr(AB) = ζ + 1/ζ`:
/// `A = [[x,-1],[1,0]]`, `B = [[0,ζ],[-1/ζ,y]]`.
fn normal_form(x: f64, y: f64, zeta: f64) -> (Mat, Mat) {
    ([x, -1.0, 1.0, 0.0], [0.0, zeta, -1.0 / zeta, y])
}

/// The root of the Markov-type equation `x² + y² + z² = xyz` that equals 3
/// at `x = y = 3`.
fn markov_root(x: f64, y: f64) -> Option<f64> {
    let disc = x * x * y * y - 4.0 * (x * x + y * y);
    if !(x > 2.0 && y > 2.0 && disc > 0.0) {
        return None;
    }
    Some(2.0 * (x * x + y * y) / (x * y + math::sqrt(disc)))
}

fn zeta_for(z: f64, upper: bool) -> f64 {
    let r = math::sqrt(z * z - 4.0);
    if upper {
        (z + r) / 2.0
    } else {
        2.0 / (z + r)
    }
}

fn endpoints(m: &Mat) -> (f64, f64) {
    let g = Isometry::new(m[0], m[1], m[2], m[3]).expect("positive determinant");
    let ax = g.axis().expect("hyperbolic");
    let f = |p: BoundaryPoint| p.finite().expect("finite fixed point");
    (f(ax.repelling()), f(ax.attracting()))
}

/// Conjugator taking the normal form at `x = y = 3` onto the modular torus,
/// and the branch of `ζ` it uses.
fn modular_frame() -> (Mat, bool) {
    let gens = modular_generators();
    let ta = gens[0].axis().expect("hyperbolic");
    let tb = gens[1].axis().expect("hyperbolic");
    let f = |p: BoundaryPoint| p.finite().expect("finite fixed point");
    let target = to_standard([f(ta.repelling()), f(ta.attracting()), f(tb.attracting())]);
    for upper in [true, false] {
        let (a0, b0) = normal_form(3.0, 3.0, zeta_for(3.0, upper));
        let (ar, aa) = endpoints(&a0);
        let (_, ba) = endpoints(&b0);
        let source = to_standard([ar, aa, ba]);
        let h = mul(&adj(&target), &source);
        if det(&h) > 0.0 {
            return (h, upper);
        }
    }
    unreachable!("one branch of ζ gives an orientation-preserving frame")
}

fn perturbed_generators(s: f64) -> Result<Vec<Isometry>, GrpError> {
    let x = 3.0 + s;
    let y = 3.0 + core::f64::consts::SQRT_2 * s;
    let z = markov_root(x, y).ok_or_else(|| {
        GrpError::InvalidParameter(format!("perturbed_torus({s}) has no real torus structure"))
    })?;
    let (h, upper) = modular_frame();
    let (a0, b0) = normal_form(x, y, zeta_for(z, upper));
    let hi = adj(&h);
    let conj = |m: &Mat| {
        let r = mul(&mul(&h, m), &hi);
        Isometry::new(r[0], r[1], r[2], r[3]).expect("positive determinant")
    };
    Ok(vec![conj(&a0), conj(&b0)])
}

fn schottky_generators(lambda: f64, mu: f64, offset: f64) -> Result<Vec<Isometry>, GrpError> {
    let ok = lambda.is_finite() && mu.is_finite() && offset.is_finite();
    if !(ok && lambda > 0.0 && mu > 0.0 && offset >= 0.0) {
        return Err(GrpError::InvalidParameter(format!(
            "schottky({lambda},{mu},{offset}) needs positive lengths and offset ≥ 0"
        )));
    }
    let (hl, hm) = (lambda / 2.0, mu / 2.0);
    let needed = (1.0 + math::cosh(hl) * math::cosh(hm)) / (math::sinh(hl) * math::sinh(hm));
    if math::cosh(offset) < needed {
        return Err(GrpError::InvalidParameter(format!(
            "schottky({lambda},{mu},{offset}) is not a Schottky configuration: need cosh(offset) ≥ {needed}"
        )));
    }
    let a = Isometry::diagonal(math::exp(hl)).expect("nonzero");
    let t = Isometry::new(
        math::cosh(offset / 2.0),
        math::sinh(offset / 2.0),
        math::sinh(offset / 2.0),
        math::cosh(offset / 2.0),
    )
    .expect("unimodular");
    let b = Isometry::diagonal(math::exp(hm)).expect("nonzero").conjugate_by(&t);
    Ok(vec![a, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypgeom::{commutator_trace, crossing, Kind};

    #[test]
    fn parse_round_trip() {
        for s in ["modular_torus", "perturbed_torus(0.05)", "schottky(2.0,2.0,3.5)"] {
            let p: PresetSpec = s.parse().unwrap();
            assert_eq!(format!("{p}"), s);
        }
        assert!(matches!("torus".parse::<PresetSpec>(), Err(GrpError::UnknownPreset(_))));
        assert!(matches!(
            "perturbed_torus".parse::<PresetSpec>(),
            Err(GrpError::InvalidParameter(_))
        ));
        assert!(matches!(
            "perturbed_torus(x)".parse::<PresetSpec>(),
            Err(GrpError::InvalidParameter(_))
        ));
    }

    #[test]
    fn modular_torus_traces() {
        let rep = preset("modular_torus").unwrap();
        let (a, b) = (rep.generator(0), rep.generator(1));
        assert_eq!(a.trace(), 3.0);
        assert_eq!(b.trace(), 3.0);
        assert_eq!(commutator_trace(&a, &b), -2.0);
        let comm = rep.evaluate(&"abAB".parse().unwrap());
        assert_eq!(comm.classify(), Kind::Parabolic);
    }

    #[test]
    fn perturbation_at_zero_is_modular() {
        let rep = PresetSpec::PerturbedTorus { s: 0.0 }.build().unwrap();
        let m = modular_generators();
        assert!(rep.generator(0).approx_eq(&m[0], 1e-12), "{:?}", rep.generator(0));
        assert!(rep.generator(1).approx_eq(&m[1], 1e-12), "{:?}", rep.generator(1));
    }

    #[test]
    fn perturbed_torus_traces() {
        let s = 0.05;
        let rep = PresetSpec::PerturbedTorus { s }.build().unwrap();
        let (a, b) = (rep.generator(0), rep.generator(1));
        assert!((a.abs_trace() - (3.0 + s)).abs() < 1e-12);
        assert!((b.abs_trace() - (3.0 + core::f64::consts::SQRT_2 * s)).abs() < 1e-12);
        assert!((commutator_trace(&a, &b) + 2.0).abs() < 1e-10);
        assert!(crossing(&a.axis().unwrap(), &b.axis().unwrap()).unwrap().is_some());
        assert!(PresetSpec::PerturbedTorus { s: -0.5 }.build().is_err());
    }

    #[test]
    fn schottky_axes_disjoint() {
        let rep = PresetSpec::Schottky { lambda: 2.0, mu: 2.0, offset: 3.0 }.build().unwrap();
        let (a, b) = (rep.generator(0), rep.generator(1));
        assert!((a.translation_length().unwrap() - 2.0).abs() < 1e-12);
        assert!((b.translation_length().unwrap() - 2.0).abs() < 1e-12);
        let (ga, gb) = (a.axis().unwrap(), b.axis().unwrap());
        assert_eq!(crossing(&ga, &gb).unwrap(), None);
        assert!((crate::hypgeom::geodesic_distance(&ga, &gb) - 3.0).abs() < 1e-12);
        assert!(PresetSpec::Schottky { lambda: 2.0, mu: 2.0, offset: 0.5 }.build().is_err());
    }
}
