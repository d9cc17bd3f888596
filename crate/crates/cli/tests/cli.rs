use std::path::Path;
use std::process::{Command, Output};

use isoaxis::output::{verify_output, OutputDigest};
use serde_json::Value;
use tempfile::TempDir;

fn isoaxis(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoaxis"))
        .args(args)
        .env("ISOAXIS_CACHE_DIR", dir.join("cache"))
        .output()
        .expect("binary runs")
}

/// Runs a command into `dir/out` and returns the output directory.
fn run_ok(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let out = dir.join(name);
    let mut all = args.to_vec();
    let o = out.to_str().unwrap();
    all.extend(["--out-dir", o]);
    let r = isoaxis(dir, &all);
    assert!(r.status.success(), "{args:?}: {}", String::from_utf8_lossy(&r.stderr));
    out
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    let mut all = args.to_vec();
    let out = dir.join("failed");
    all.extend(["--out-dir", out.to_str().unwrap()]);
    isoaxis(dir, &all).status.code().unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(path).unwrap().records().map(Result::unwrap).collect()
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    assert_eq!(code(d, &["spectrum", "--depth", "0"]), 2);
    assert_eq!(code(d, &["spectrum", "--depth", "13"]), 3);
    assert_eq!(code(d, &["angles", "--conj-depth", "11"]), 3);
    assert_eq!(code(d, &["angles", "--preset", "klein_bottle"]), 2);
    assert_eq!(code(d, &["twist-sweep", "--t-min", "1", "--t-max", "0"]), 2);
    assert_eq!(code(d, &["twist-sweep", "--first", "abaB", "--second", "aBab"]), 4);
    assert_eq!(code(d, &["twist-sweep", "--sweep", "separation"]), 4);

    let cfg = d.join("bad.json");
    std::fs::write(&cfg, r#"{"depht": 3}"#).unwrap();
    assert_eq!(code(d, &["spectrum", "--config", cfg.to_str().unwrap()]), 2);
}

#[test]
fn spectrum_starts_at_the_generator_length() {
    let tmp = TempDir::new().unwrap();
    let out = run_ok(tmp.path(), "s", &["spectrum", "--depth", "6"]);
    let rows = csv_rows(&out.join("spectrum.csv"));
    let length: f64 = rows[0][0].parse().unwrap();
    let m: usize = rows[0][1].parse().unwrap();
    assert!((length - 2.0 * 1.5f64.acosh()).abs() < 1e-12);
    assert!(m >= 2);
    let lengths: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(lengths.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn angles_report_both_presets() {
    let tmp = TempDir::new().unwrap();
    let out = run_ok(
        tmp.path(),
        "a",
        &["angles", "--depth", "4", "--compare-preset", "perturbed_torus(0.05)"],
    );
    let rows = csv_rows(&out.join("angles.csv"));
    assert!(rows.iter().any(|r| (r[2].parse::<f64>().unwrap() - 0.64).abs() < 1e-9));

    let m = json(&out.join("manifest.json"));
    let main = m["summary"]["angles"]["max_multiplicity"].as_u64().unwrap();
    let cmp = m["summary"]["compare"]["max_multiplicity"].as_u64().unwrap();
    assert!(main >= 2 && cmp >= 1);

    let doc = json(&out.join("angles.json"));
    assert!(doc["profile"]["histogram"].is_object());
    assert!(doc["folded_profile"]["max_multiplicity"].as_u64().unwrap() >= main);
}

#[test]
fn config_file_and_flags_combine() {
    let tmp = TempDir::new().unwrap();
    let cfg = tmp.path().join("c.json");
    std::fs::write(&cfg, r#"{"depth": 2, "seed": 9, "tol": 1e-8}"#).unwrap();
    let out = run_ok(
        tmp.path(),
        "s",
        &["spectrum", "--config", cfg.to_str().unwrap(), "--depth", "3"],
    );
    let m = json(&out.join("manifest.json"));
    assert_eq!(m["config"]["depth"], 3);
    assert_eq!(m["config"]["seed"], 9);
    assert_eq!(m["seed"], 9);
    let rows = csv_rows(&out.join("spectrum.csv"));
    assert!(rows.iter().all(|r| &r[4] == "1e-8" && &r[5] == "9"));
}

#[test]
fn every_output_carries_the_digest() {
    let tmp = TempDir::new().unwrap();
    let out = run_ok(tmp.path(), "i", &["isoaxial", "--depth", "2"]);
    let m = json(&out.join("manifest.json"));
    let digest = m["config_digest"].as_str().unwrap();
    let outputs: Vec<OutputDigest> = m["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| OutputDigest {
            file: o["file"].as_str().unwrap().into(),
            sha256: o["sha256"].as_str().unwrap().into(),
            bytes: o["bytes"].as_u64().unwrap() as usize,
        })
        .collect();
    assert_eq!(outputs.len(), 2);
    for o in &outputs {
        assert!(verify_output(&out, o), "{}", o.file);
        let path = out.join(&o.file);
        if o.file.ends_with(".csv") {
            let mut r = csv::Reader::from_path(&path).unwrap();
            let h = r.headers().unwrap().clone();
            let i = h.iter().position(|c| c == "config_digest").unwrap();
            assert!(r.records().all(|row| &row.unwrap()[i] == digest));
        } else {
            let doc = json(&path);
            assert_eq!(doc["config_digest"], digest);
            assert_eq!(doc["tol"], 1e-9);
            assert_eq!(doc["seed"], 0);
        }
    }
}

#[test]
fn isoaxial_verdicts() {
    let tmp = TempDir::new().unwrap();
    let out = run_ok(tmp.path(), "i", &["isoaxial", "--depth", "3"]);
    let v = &json(&out.join("manifest.json"))["summary"]["verdicts"];
    assert_eq!(v["self"], "equal_on_truncation");
    assert_eq!(v["conjugate"], "equal_on_truncation");
    let rows = csv_rows(&out.join("isoaxial.csv"));
    let sub = rows.iter().find(|r| &r[0] == "subgroup").unwrap();
    assert_eq!(&sub[3], "true");

    let out = run_ok(
        tmp.path(),
        "j",
        &["isoaxial", "--depth", "2", "--depth2", "6", "--against", "conjugate", "--conjugator", "ab"],
    );
    let v = &json(&out.join("manifest.json"))["summary"]["verdicts"];
    assert_eq!(v["conjugate"], "equal_on_truncation");

    let out = run_ok(
        tmp.path(),
        "k",
        &["isoaxial", "--depth", "2", "--against", "subgroup", "--subgroup", "a,bab"],
    );
    let v = &json(&out.join("manifest.json"))["summary"]["verdicts"];
    assert_eq!(v["subgroup"], "contained");
}

#[test]
fn twist_sweeps_pass() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let s = json(&run_ok(d, "a", &["twist-sweep"]).join("manifest.json"));
    assert_eq!(s["summary"]["kind"], "simple");
    assert_eq!(s["summary"]["pass"], true);

    let s = json(&run_ok(d, "b", &["twist-sweep", "--first", "aB", "--second", "aab"]).join("manifest.json"));
    assert_eq!(s["summary"]["kind"], "generic");
    assert_eq!(s["summary"]["pass"], true);
    assert!(s["summary"]["delta"].as_f64().unwrap() > 0.05);

    let out = run_ok(
        d,
        "c",
        &[
            "twist-sweep", "--sweep", "separation", "--first", "abaB", "--second", "aBab", "--t-min", "0",
            "--t-step", "10",
        ],
    );
    assert_eq!(csv_rows(&out.join("sweep.csv")).len(), 4);
    assert_eq!(json(&out.join("sweep.json"))["pass"], true);

    let out = run_ok(
        d,
        "e",
        &["twist-sweep", "--sweep", "limits", "--first", "b", "--t-min", "0", "--t-step", "10", "--conj-depth", "2"],
    );
    assert!(json(&out.join("sweep.json"))["closest_gap"].as_f64().unwrap() < 1e-3);
}

#[test]
fn collar_check_holds() {
    let tmp = TempDir::new().unwrap();
    let out = run_ok(
        tmp.path(),
        "c",
        &["collar-check", "--depth", "3", "--compare-preset", "perturbed_torus(0.05)"],
    );
    let rows = csv_rows(&out.join("collar.csv"));
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert!(r[2].parse::<f64>().unwrap() >= 1.0 - 1e-9);
        assert_eq!(&r[5], "true");
    }
}

fn output_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "manifest.json")
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

#[test]
fn reruns_and_worker_counts_are_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let args = ["angles", "--depth", "3", "--compare-preset", "perturbed_torus(0.05)"];
    let base = output_files(&run_ok(d, "w0", &args));
    assert_eq!(base.len(), 4);
    for (name, workers) in [("again", "0"), ("w1", "1"), ("w3", "3")] {
        let mut a = args.to_vec();
        a.extend(["--workers", workers]);
        assert_eq!(output_files(&run_ok(d, name, &a)), base, "workers {workers}");
    }
    // a warm cache gives the same bytes as a cold one
    let iso = ["isoaxial", "--depth", "2"];
    let cold = output_files(&run_ok(d, "i1", &iso));
    let warm = output_files(&run_ok(d, "i2", &iso));
    assert_eq!(cold, warm);
}

#[test]
fn presets_list_as_json() {
    let tmp = TempDir::new().unwrap();
    let r = isoaxis(tmp.path(), &["presets", "--json"]);
    assert!(r.status.success());
    let list: Value = serde_json::from_slice(&r.stdout).unwrap();
    let list = list.as_array().unwrap();
    assert_eq!(list.len(), 3);
    assert_eq!(list[0]["name"], "modular_torus");
    assert!((list[0]["commutator_trace"].as_f64().unwrap() + 2.0).abs() < 1e-12);
}
