//! The subcommands. Each writes its files into `out_dir` and returns the
//! manifest.

use isoaxis_core::grp::{ball_size, jorgensen_quantity, PresetSpec, Representation, Word};
use isoaxis_core::hypgeom::{crossing, Isometry};
use isoaxis_core::spectra::{
    angle_spectrum, collar_check_with, folded_spectrum, isoaxial_compare_sets, length_spectrum_with_cap,
    multiplicity_profile, symmetric_multiplicity_profile, AngleEntry, AngleOptions, DirichletDomain,
    Direction, IsoaxialReport, MultiplicityProfile, Verdict, DOMAIN_DEPTH,
};
use isoaxis_core::twist::{
    angle_sweep, boundary_limits, separating_lift, separation_sweep, TwistCurve, TwistFamily,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::config::{parse_word, Against, ExperimentConfig, SweepKind};
use crate::error::CliError;
use crate::output::{fmt, fmt_opt, Run, RunManifest};

/// Presets listed by `presets`.
pub const CATALOGUE: &[(&str, &str)] = &[
    ("modular_torus", "arithmetic once-punctured torus, a = [[1,1],[1,2]], b = [[1,-1],[-1,2]]"),
    (
        "perturbed_torus(0.05)",
        "once-punctured torus with traces 3 + s and 3 + sqrt(2)s; any s in [0, 0.3] works",
    ),
    ("schottky(2,2,3)", "translations of lengths 2 and 2 along axes at distance 3"),
];

#[derive(Debug, Clone, Serialize)]
pub struct PresetInfo {
    pub name: String,
    pub description: String,
    pub generators: Vec<[f64; 4]>,
    pub lengths: Vec<f64>,
    pub commutator_trace: f64,
    pub jorgensen: f64,
    pub arithmetic: bool,
}

pub fn presets() -> Result<Vec<PresetInfo>, CliError> {
    CATALOGUE
        .iter()
        .map(|(name, description)| {
            let spec: PresetSpec = name.parse()?;
            let rep = spec.build()?;
            let (a, b) = (rep.generator(0), rep.generator(1));
            Ok(PresetInfo {
                name: spec.to_string(),
                description: (*description).into(),
                generators: rep.generators().iter().map(Isometry::entries).collect(),
                lengths: rep
                    .generators()
                    .iter()
                    .map(|g| g.translation_length())
                    .collect::<Result<_, _>>()?,
                commutator_trace: isoaxis_core::hypgeom::commutator_trace(&a, &b),
                jorgensen: jorgensen_quantity(&a, &b),
                arithmetic: spec.is_arithmetic(),
            })
        })
        .collect()
}

pub fn spectrum(config: &ExperimentConfig) -> Result<RunManifest, CliError> {
    config.validate()?;
    let mut run = Run::start("spectrum", config)?;
    let rep = config.build(&config.preset)?;
    let spec = length_spectrum_with_cap(&rep, config.depth, config.tol, config.word_cap())?;
    run.phase("enumerate");

    let rows: Vec<Vec<String>> = spec
        .iter()
        .map(|e| {
            vec![
                fmt(e.length),
                e.multiplicity.to_string(),
                join(e.witnesses.iter().map(|c| c.to_string())),
            ]
        })
        .collect();
    run.write_csv("spectrum.csv", &["length", "multiplicity", "classes"], &rows)?;
    run.write_json(
        "spectrum.json",
        json!({
            "preset": rep.label(),
            "depth": config.depth,
            "entries": spec,
        }),
    )?;
    let first = spec.first().map(|e| json!({"length": e.length, "multiplicity": e.multiplicity}));
    run.finish(json!({
        "values": spec.len(),
        "classes": spec.iter().map(|e| e.multiplicity).sum::<usize>(),
        "shortest": first,
    }))
}

fn angle_options(config: &ExperimentConfig) -> AngleOptions {
    AngleOptions {
        depth: config.depth,
        conj_depth: config.conj_depth(),
        tol: config.tol,
        include_self: config.include_self,
        domain_depth: DOMAIN_DEPTH,
        workers: config.workers,
        word_cap: config.word_cap(),
        conj_cap: config.conj_cap(),
    }
}

/// The half-turn about the crossing of the two generator axes, which
/// inverts both generators of a rank-2 group when they cross.
fn half_turn(rep: &Representation) -> Option<Isometry> {
    if rep.rank() != 2 {
        return None;
    }
    let a = rep.generator(0).axis().ok()?;
    let b = rep.generator(1).axis().ok()?;
    crossing(&a, &b).ok().flatten().map(|z| Isometry::half_turn(&z))
}

struct AngleRun {
    label: String,
    spec: Vec<AngleEntry>,
    profile: MultiplicityProfile,
    folded: MultiplicityProfile,
    half_turn: Option<MultiplicityProfile>,
}

fn angle_run(config: &ExperimentConfig, name: &str) -> Result<AngleRun, CliError> {
    let rep = config.build(name)?;
    let spec = angle_spectrum(&rep, &angle_options(config))?;
    let folded = multiplicity_profile(&folded_spectrum(&spec, config.tol)?);
    let half_turn = match half_turn(&rep) {
        Some(j) => {
            let domain = DirichletDomain::new(&rep, DOMAIN_DEPTH)?;
            Some(symmetric_multiplicity_profile(&spec, &j, &domain))
        }
        None => None,
    };
    Ok(AngleRun {
        label: rep.label().into(),
        profile: multiplicity_profile(&spec),
        spec,
        folded,
        half_turn,
    })
}

fn write_angles(run: &mut Run, stem: &str, a: &AngleRun, config: &ExperimentConfig) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> = a
        .spec
        .iter()
        .map(|e| {
            vec![
                fmt(e.angle),
                e.multiplicity.to_string(),
                fmt(e.angle.sin().powi(2)),
                join(
                    e.witnesses
                        .iter()
                        .map(|w| format!("{}|{}|{}", w.first, w.second, w.conjugator)),
                ),
            ]
        })
        .collect();
    run.write_csv(&format!("{stem}.csv"), &["angle", "multiplicity", "sin2", "pairs"], &rows)?;
    run.write_json(
        &format!("{stem}.json"),
        json!({
            "preset": a.label,
            "depth": config.depth,
            "conj_depth": config.conj_depth(),
            "include_self": config.include_self,
            "conventions": {
                "angle": "counter-clockwise from the first axis to the second, in (0, pi)",
                "self_crossings": "folded into (0, pi/2]",
                "pairs": "first|second|conjugator: axis of first meets conjugator * axis of second",
                "folded_profile": "angles identified with their supplements",
                "half_turn_profile": "witnesses also identified under the half-turn about the generator crossing",
            },
            "profile": a.profile,
            "folded_profile": a.folded,
            "half_turn_profile": a.half_turn,
            "entries": a.spec,
        }),
    )
}

fn profile_summary(a: &AngleRun) -> Value {
    json!({
        "preset": a.label,
        "values": a.profile.values,
        "max_multiplicity": a.profile.max_multiplicity,
        "repeated": a.profile.repeated,
        "folded_max_multiplicity": a.folded.max_multiplicity,
        "half_turn_max_multiplicity": a.half_turn.as_ref().map(|p| p.max_multiplicity),
    })
}

pub fn angles(config: &ExperimentConfig) -> Result<RunManifest, CliError> {
    config.validate()?;
    let mut run = Run::start("angles", config)?;
    let main = angle_run(config, &config.preset)?;
    run.phase("enumerate");
    write_angles(&mut run, "angles", &main, config)?;
    let mut summary = json!({ "angles": profile_summary(&main) });
    if let Some(other) = &config.compare_preset {
        let cmp = angle_run(config, other)?;
        run.phase("enumerate_compare");
        write_angles(&mut run, "angles_compare", &cmp, config)?;
        summary["compare"] = profile_summary(&cmp);
    }
    run.finish(summary)
}

pub fn collar_check(config: &ExperimentConfig) -> Result<RunManifest, CliError> {
    config.validate()?;
    let mut run = Run::start("collar-check", config)?;
    let mut names = vec![config.preset.clone()];
    names.extend(config.compare_preset.clone());
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for name in &names {
        let rep = config.build(name)?;
        let r = collar_check_with(&rep, &angle_options(config))?;
        let argmin = r.argmin.as_ref().map(|(x, y)| format!("{x}|{y}")).unwrap_or_default();
        rows.push(vec![
            rep.label().to_string(),
            r.crossing_pairs.to_string(),
            fmt(r.min_product),
            argmin,
            r.violations.to_string(),
            r.holds().to_string(),
        ]);
        reports.push(json!({ "preset": rep.label(), "holds": r.holds(), "report": r }));
    }
    run.phase("check");
    run.write_csv(
        "collar.csv",
        &["preset", "crossing_pairs", "min_product", "argmin", "violations", "holds"],
        &rows,
    )?;
    run.write_json("collar.json", json!({ "depth": config.depth, "reports": reports }))?;
    let holds = reports.iter().all(|r| r["holds"] == json!(true));
    run.finish(json!({ "holds": holds, "reports": reports.len() }))
}

fn family(config: &ExperimentConfig) -> Result<TwistFamily, CliError> {
    let rep = config.build(&config.preset)?;
    let g = config
        .curve_generator()
        .filter(|&g| g < rep.rank())
        .ok_or_else(|| CliError::Config(format!("curve {:?} is not a generator", config.curve)))?;
    // every other generator crosses the curve once
    let incidence = (0..rep.rank()).map(|i| i32::from(i != g)).collect();
    Ok(TwistFamily::new(rep, TwistCurve::new(g, incidence)?)?)
}

pub fn twist_sweep(config: &ExperimentConfig) -> Result<RunManifest, CliError> {
    config.validate()?;
    let mut run = Run::start("twist-sweep", config)?;
    let fam = family(config)?;
    let first = parse_word(&config.first)?;
    let second = parse_word(&config.second)?;
    let conj = parse_word(&config.pair_conjugator)?;
    let grid = config.grid();
    let summary = match config.sweep {
        SweepKind::Angle => sweep_angle(&mut run, config, &fam, (&first, &second, &conj), &grid)?,
        SweepKind::Separation => {
            let second = second.conjugate_by(&conj);
            let lift = separating_lift(&fam, &first, &second)?;
            let d = separation_sweep(&fam, &first, &second, &grid)?;
            run.phase("sweep");
            let rows = grid.iter().zip(&d).map(|(t, x)| vec![fmt(*t), fmt(*x)]).collect::<Vec<_>>();
            run.write_csv("sweep.csv", &["t", "distance"], &rows)?;
            let increasing = d.windows(2).all(|p| p[0] < p[1]);
            let diverging = d.len() >= 2 && d[d.len() - 1] > 2.0 * d[0];
            let body = json!({
                "sweep": "separation",
                "first": first,
                "second": second,
                "separating_lift": lift,
                "grid": grid,
                "distances": d,
                "increasing": increasing,
                "final_over_initial": d.last().zip(d.first()).map(|(l, f)| l / f),
                "pass": increasing && diverging,
            });
            run.write_json("sweep.json", body)?;
            json!({ "sweep": "separation", "pass": increasing && diverging })
        }
        SweepKind::Limits => {
            let w = first.conjugate_by(&conj);
            let limits = boundary_limits(&fam, &w, &grid, config.conj_depth())?;
            run.phase("sweep");
            let rows = limits
                .iter()
                .map(|l| vec![fmt(l.t), fmt(l.repelling_gap), fmt(l.attracting_gap)])
                .collect::<Vec<_>>();
            run.write_csv("sweep.csv", &["t", "repelling_gap", "attracting_gap"], &rows)?;
            let gap = |l: &isoaxis_core::twist::BoundaryLimit| l.repelling_gap.min(l.attracting_gap);
            let closest = limits.iter().map(gap).fold(f64::INFINITY, f64::min);
            run.write_json(
                "sweep.json",
                json!({ "sweep": "limits", "word": w, "limits": limits, "closest_gap": closest }),
            )?;
            json!({ "sweep": "limits", "closest_gap": closest })
        }
    };
    run.finish(summary)
}

fn sweep_angle(
    run: &mut Run,
    config: &ExperimentConfig,
    fam: &TwistFamily,
    pair: (&Word, &Word, &Word),
    grid: &[f64],
) -> Result<Value, CliError> {
    let r = angle_sweep(fam, pair, grid)?;
    run.phase("sweep");
    let rows = r
        .samples
        .iter()
        .map(|s| {
            vec![
                fmt(s.t),
                fmt_opt(s.angle),
                fmt_opt(s.direction),
                fmt_opt(s.cross_gap),
                fmt_opt(s.same_gap),
            ]
        })
        .collect::<Vec<_>>();
    run.write_csv("sweep.csv", &["t", "angle", "direction", "cross_gap", "same_gap"], &rows)?;

    let curve = parse_word(&config.curve)?;
    let simple = *pair.0 == curve || *pair.1 == curve;
    let pi = std::f64::consts::PI;
    let (kind, pass) = if simple {
        let a = r.angles();
        let (lo, hi) = (a[0], a[a.len() - 1]);
        let full = (lo < 0.1 && hi > pi - 0.1) || (hi < 0.1 && lo > pi - 0.1);
        ("simple", full && r.lost_crossing.is_empty())
    } else {
        ("generic", r.delta > 0.0 && r.bound_holds && r.lost_crossing.is_empty())
    };
    let ratio_ok = r.bound_delta <= r.delta * (1.0 + 1e-9) && r.delta <= 2.0 * r.bound_delta;
    run.write_json(
        "sweep.json",
        json!({
            "sweep": "angle",
            "pair": { "first": pair.0, "second": pair.1, "conjugator": pair.2 },
            "kind": kind,
            "pass": pass,
            "bound_within_factor_two": ratio_ok,
            "report": r,
        }),
    )?;
    Ok(json!({
        "sweep": "angle",
        "kind": kind,
        "pass": pass,
        "inf_angle": r.inf_angle,
        "sup_angle": r.sup_angle,
        "delta": r.delta,
        "bound_delta": r.bound_delta,
    }))
}

/// A random isometry `[[a, b], [c, (1 + bc)/a]]` with `a ∈ [0.5, 2]` and
/// `b, c ∈ [-1, 1]`.
pub fn random_isometry(rng: &mut impl Rng) -> Isometry {
    let a: f64 = rng.gen_range(0.5..2.0);
    let b: f64 = rng.gen_range(-1.0..1.0);
    let c: f64 = rng.gen_range(-1.0..1.0);
    Isometry::new(a, b, c, (1.0 + b * c) / a).expect("determinant one")
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::EqualOnTruncation => "equal_on_truncation",
        Verdict::Contained(Direction::FirstInSecond) => "contained",
        Verdict::Contained(Direction::SecondInFirst) => "contains",
        Verdict::Distinct => "distinct",
    }
}

pub fn isoaxial(config: &ExperimentConfig) -> Result<RunManifest, CliError> {
    config.validate()?;
    let mut run = Run::start("isoaxial", config)?;
    let mut cache = Cache::from_env();
    let rep = config.build(&config.preset)?;
    let (d1, d2, cap) = (config.depth, config.depth2(), config.word_cap());
    let small = cache.axes(&rep, d1, cap)?;
    let big = cache.axes(&rep, d2, cap)?;
    run.phase("axes");

    let mut rows = Vec::new();
    let mut table = Vec::new();
    for &against in &config.against {
        // `moved` is what the other group's axes should match: the group's
        // own axes, or their image under a conjugator outside the group
        let (name, detail, other, moved) = match against {
            Against::Itself => ("self", String::new(), rep.clone(), None),
            Against::Conjugate if config.conjugator == "random" => {
                let g = random_isometry(&mut ChaCha8Rng::seed_from_u64(config.seed));
                let detail = format!("{:?}", g.entries());
                let moved = (small.transform(&g), big.transform(&g));
                ("conjugate", detail, rep.conjugate(&g), Some(moved))
            }
            Against::Conjugate => {
                let w = parse_word(&config.conjugator)?;
                ("conjugate", w.to_string(), rep.conjugate(&rep.evaluate(&w)), None)
            }
            Against::Subgroup => {
                let words = config.subgroup.iter().map(|s| parse_word(s)).collect::<Result<Vec<_>, _>>()?;
                let detail = join(words.iter().map(Word::to_string));
                ("subgroup", detail, rep.subgroup("subgroup", &words)?, None)
            }
        };
        let (small2, big2) = match &moved {
            Some((s, b)) => (s, b),
            None => (&small, &big),
        };
        // the group comes second, so "contained" means inside the group
        let other_d2 = deep_depth(other.rank(), d2, cap).max(d1);
        let report: IsoaxialReport = isoaxial_compare_sets(
            &cache.axes(&other, d1, cap)?,
            small2,
            &cache.axes(&other, other_d2, cap)?,
            big2,
            config.tol,
        );
        let contained = report.unmatched_forward == 0;
        rows.push(vec![
            name.to_string(),
            detail.clone(),
            verdict_name(report.verdict).to_string(),
            contained.to_string(),
            report.unmatched_forward.to_string(),
            report.unmatched_backward.to_string(),
            report.checked_forward.to_string(),
            report.checked_backward.to_string(),
        ]);
        table.push(json!({
            "against": name,
            "detail": detail,
            "moved_axes": moved.is_some(),
            "depth2": other_d2,
            "contained_in_group": contained,
            "report": report,
        }));
    }
    run.phase("compare");
    run.write_csv(
        "isoaxial.csv",
        &[
            "against",
            "detail",
            "verdict",
            "contained_in_group",
            "unmatched_forward",
            "unmatched_backward",
            "checked_forward",
            "checked_backward",
        ],
        &rows,
    )?;
    run.write_json(
        "isoaxial.json",
        json!({
            "preset": rep.label(),
            "depth": d1,
            "depth2": d2,
            "axes": { "depth": small.len(), "depth2": big.len() },
            "comparisons": table,
        }),
    )?;
    let verdicts: Value = rows.iter().map(|r| (r[0].clone(), json!(r[2]))).collect::<serde_json::Map<_, _>>().into();
    run.finish(json!({ "verdicts": verdicts }))
}

/// `depth2` lowered until a ball of the given rank fits under the cap.
fn deep_depth(rank: usize, depth2: usize, cap: usize) -> usize {
    let limit = ball_size(2, cap).unwrap_or(usize::MAX);
    (1..=depth2)
        .rev()
        .find(|&d| ball_size(rank, d).is_some_and(|n| n <= limit))
        .unwrap_or(1)
}

fn join(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(" ")
}
