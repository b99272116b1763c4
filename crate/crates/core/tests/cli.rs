//! The `fracpois` binary: outputs, exit codes and schema.

use std::process::{Command, Output};

use fracpois::cli::output::{read_records, Format, OutputRecord, Provenance};

fn fracpois(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracpois")).args(args).output().expect("binary runs")
}

fn records(args: &[&str]) -> Vec<OutputRecord> {
    let out = fracpois(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    read_records(&String::from_utf8(out.stdout).unwrap(), Format::Json).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1e-300)
}

#[test]
fn eval_examples() {
    let r = records(&["eval", "ml", "--alpha", "1", "--beta", "1", "--x", "0"]);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].y, 1.0);

    let r = records(&["eval", "gml", "--alpha", "1", "--beta", "3", "--gamma", "3", "--x", "-1"]);
    assert!(close(r[0].y, 0.183_939_720_585_721_16, 1e-12));
    assert_eq!(r[0].meta.provenance, Provenance::Closed);
    assert_eq!(r[0].meta.params["gamma"], 3.0);

    let r = records(&["eval", "wright", "--lam", "-0.5", "--beta", "0.5", "--x", "-1"]);
    assert!(close(r[0].y, 0.439_391_289_467_722_4, 1e-12));

    let r = records(&["eval", "ml", "--alpha", "0.5", "--beta", "1", "--x-min", "-50", "--x-max", "0", "--points", "6"]);
    assert_eq!(r.len(), 6);
    assert_eq!(r[0].x, -50.0);
    assert_eq!(r[0].meta.provenance, Provenance::Integral);
    assert!(r.windows(2).all(|w| w[0].y < w[1].y));
}

#[test]
fn dist_examples() {
    let r = records(&["dist", "--n", "1", "--nu", "1", "--lambda", "1", "pmf", "--t", "1", "--k-max", "3"]);
    let want = [0.367_879_441_171_442_3, 0.367_879_441_171_442_3, 0.183_939_720_585_721_16, 0.061_313_240_195_240_39];
    assert_eq!(r.len(), 4);
    for (rec, w) in r.iter().zip(want) {
        assert!(close(rec.y, w, 1e-13), "{rec:?}");
    }
    assert_eq!(r[3].x, 3.0);

    let r = records(&["dist", "--n", "2", "--nu", "1", "--lambda", "1", "renewal", "--t", "1"]);
    assert!(close(r[0].y, 0.283_833_820_809_153, 1e-12));

    let r = records(&["dist", "--n", "1", "--nu", "0.5", "--lambda", "1", "pmf", "--t", "1", "--k", "0"]);
    assert!(close(r[0].y, 0.427_583_576_155_807, 1e-12));

    let r = records(&["dist", "--n", "2", "--nu", "0.7", "--lambda", "1", "pgf", "--t", "1", "--u", "0.5", "1"]);
    assert_eq!(r.len(), 2);
    assert_eq!(r[0].x, 0.5);
    assert!(close(r[1].y, 1.0, 1e-13));

    for q in ["wtpdf", "wtcdf", "iapdf", "renewal", "moments"] {
        let r = records(&["dist", "--n", "1", "--nu", "0.6", "--lambda", "1", q, "--t-min", "0", "--t-max", "3", "--points", "4"]);
        assert_eq!(r.len(), 4, "{q}");
        assert!(r.iter().all(|x| x.y.is_finite() && !x.meta.divergent), "{q}");
        assert_eq!(r[0].meta.target, q);
    }
}

#[test]
fn verify_exit_codes() {
    for name in ["gen-identity", "fk8"] {
        let out = fracpois(&["verify", "--only", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let arr = v.as_array().unwrap();
        assert!(!arr.is_empty());
        assert!(arr.iter().all(|r| r["pass"] == true));
    }
    assert_eq!(fracpois(&["verify", "--only", "gen-identity", "--tol", "0"]).status.code(), Some(1));
    assert_eq!(fracpois(&["verify", "--only", "nonexistent"]).status.code(), Some(2));
    let list = fracpois(&["verify", "--list"]);
    assert_eq!(list.status.code(), Some(0));
    assert!(String::from_utf8(list.stdout).unwrap().contains("caputo"));
}

#[test]
fn usage_errors() {
    for args in [
        &["eval", "ml", "--alpha", "-1", "--beta", "1", "--x", "0"][..],
        &["dist", "--n", "1", "--nu", "2", "--lambda", "1", "pmf", "--t", "1", "--k", "0"],
        &["dist", "--n", "0", "--nu", "0.5", "--lambda", "1", "pmf", "--t", "1", "--k", "0"],
        &["simulate", "--nu", "0.5", "--lambda", "1", "--horizon", "-1"],
        &["eval", "ml", "--alpha", "0.5", "--beta", "1"],
        &["frobnicate"],
        &[],
    ] {
        assert_eq!(fracpois(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(fracpois(&["--help"]).status.code(), Some(0));
}

#[test]
fn numerical_failure() {
    let out = Command::new(env!("CARGO_BIN_EXE_fracpois"))
        .args(["eval", "ml", "--alpha", "0.5", "--beta", "1", "--x", "1"])
        .env("FRACPOIS_MAX_TERMS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let bad = Command::new(env!("CARGO_BIN_EXE_fracpois"))
        .args(["eval", "ml", "--alpha", "0.5", "--beta", "1", "--x", "1"])
        .env("FRACPOIS_MAX_TERMS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn schema_round_trip() {
    let args = ["dist", "--n", "2", "--nu", "0.6", "--lambda", "1", "pmf", "--t", "0.5", "1", "--k-max", "2"];
    let json = records(&args);
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let out = fracpois(&csv_args);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("x,y,command,target,params,provenance,std_err,reference,divergent,rng\n"));
    let csv = read_records(&text, Format::Csv).unwrap();
    assert_eq!(csv, json);

    // every command writes the same field names
    let keys = |args: &[&str]| -> Vec<String> {
        let out = fracpois(args);
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let first = &v.as_array().unwrap()[0];
        let mut k: Vec<String> = first.as_object().unwrap().keys().cloned().collect();
        k.extend(first["meta"].as_object().unwrap().keys().cloned());
        k.sort();
        k
    };
    let a = keys(&["eval", "ml", "--alpha", "0.5", "--beta", "1", "--x", "-1"]);
    let b = keys(&["dist", "--nu", "0.5", "--lambda", "1", "iapdf", "--t", "1"]);
    let c = keys(&["simulate", "--nu", "0.5", "--lambda", "1", "--horizon", "1", "--paths", "20"]);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn simulation_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, seed: &str| -> (Vec<u8>, Vec<u8>) {
        let path = dir.path().join(name);
        let out = fracpois(&[
            "simulate", "--n", "2", "--nu", "0.6", "--lambda", "1", "--horizon", "2", "--paths", "200", "--seed", seed,
            "--probe", "1", "2", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        (out.stdout, std::fs::read(path).unwrap())
    };
    let (a_out, a_file) = run("a.jsonl", "7");
    let (b_out, b_file) = run("b.jsonl", "7");
    let (_, c_file) = run("c.jsonl", "8");
    assert_eq!(a_out, b_out);
    assert_eq!(a_file, b_file);
    assert_ne!(a_file, c_file);

    let text = String::from_utf8(a_file).unwrap();
    assert_eq!(text.lines().count(), 200);
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["seed_stream"], 0);
    assert!(first["events"].is_array());

    let recs = read_records(&String::from_utf8(a_out).unwrap(), Format::Json).unwrap();
    assert!(recs.iter().all(|r| r.meta.provenance == Provenance::Simulation));
    assert!(recs.iter().all(|r| r.meta.rng.as_deref().is_some_and(|s| s.contains("seed=7"))));
    let pmf: Vec<_> = recs.iter().filter(|r| r.meta.target == "pmf" && r.meta.params["t"] == 1.0).collect();
    assert!((pmf.iter().map(|r| r.y).sum::<f64>() - 1.0).abs() < 1e-12);
    assert!(pmf.iter().all(|r| r.meta.std_err.is_some() && r.meta.reference.is_some()));
}

#[test]
fn poisson_mean_from_cli() {
    let r = records(&["simulate", "--n", "1", "--nu", "1", "--lambda", "1", "--horizon", "10", "--paths", "10000"]);
    let mean = r.iter().find(|r| r.meta.target == "mean").unwrap();
    let se = mean.meta.std_err.unwrap();
    assert!((mean.y - 10.0).abs() < 3.0 * se, "{} ± {se}", mean.y);
    assert_eq!(mean.meta.reference, Some(10.0));
}
