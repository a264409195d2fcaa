use std::path::Path;

use blslab::cli::{dispatch_to, manifest_path};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = dispatch_to(std::iter::once("blslab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fixture() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/data/lognormal_n15.csv").to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn simulate_writes_one_row_per_cell() {
    let (code, out, err) = run(&[
        "simulate", "--model", "lognormal", "--n", "25,50,100,150", "--rho", "0,0.25,0.5,0.95", "--reps", "300", "--seed",
        "42",
    ]);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 17);
    assert!(lines[0].starts_with("n\trho\tbias_eta1\tmse_eta1"));
    assert!(lines[1].starts_with("25\t0\t"));
    assert!(lines[16].starts_with("150\t0.95\t"));
}

#[test]
fn simulate_is_reproducible_across_thread_counts() {
    let args = |t: &'static str| {
        vec!["simulate", "--model", "logt", "--nu", "5", "--n", "20,40", "--rho", "0.3", "--reps", "15", "--seed", "9", "--threads", t]
    };
    let (c1, a, _) = run(&args("1"));
    let (c2, b, _) = run(&args("3"));
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn fit_with_profile_grid_writes_json_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fit.json");
    let (code, _, err) = run(&["fit", "--model", "logt", "--nu-grid", "2:15", "--data", &fixture(), "--out", path_str(&out)]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for key in ["theta_hat", "std_errors", "log_lik", "aic", "bic", "converged", "spec"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["spec"]["family"], "logt");
    let nu = v["spec"]["nu"].as_f64().unwrap();
    assert!((2.0..=15.0).contains(&nu) && nu.fract() == 0.0);
    for p in ["eta1", "eta2", "sigma1", "sigma2", "rho"] {
        assert!(v["std_errors"][p].as_f64().unwrap() > 0.0);
    }
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(manifest_path(&out)).unwrap()).unwrap();
    assert_eq!(m["subcommand"], "fit");
    assert_eq!(m["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(m["flags"]["grids"]["nu_grid"][0], 2.0);
}

#[test]
fn sample_then_summary_and_diagnose() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    let (code, _, err) = run(&[
        "sample", "--model", "logpvii", "--xi", "5", "--theta-gen", "22", "--theta", "1,2,0.5,0.5,0.3", "--n", "80", "--seed",
        "3", "--out", path_str(&data),
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, again, _) = run(&[
        "sample", "--model", "logpvii", "--xi", "5", "--theta-gen", "22", "--theta", "1,2,0.5,0.5,0.3", "--n", "80", "--seed",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(again, std::fs::read_to_string(&data).unwrap());
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(manifest_path(&data)).unwrap()).unwrap();
    assert_eq!(m["seed"], 3);

    let (code, out, _) = run(&["summary", "--data", path_str(&data)]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);

    let (code, out, err) = run(&["diagnose", "--model", "logpvii", "--xi", "5", "--theta-gen", "22", "--data", path_str(&data)]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.lines().count(), 81);
    assert_eq!(out.lines().next(), Some("theoretical\tempirical"));
}

#[test]
fn compare_writes_table_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("cmp.json");
    let (code, out, err) = run(&[
        "compare", "--data", &fixture(), "--models", "lognormal,logt,loglaplace", "--nu-grid", "3:6", "--json", path_str(&json),
    ]);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("logt\t"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let ranks: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["aic_rank"].as_u64().unwrap()).collect();
    let mut sorted = ranks.clone();
    sorted.sort();
    assert_eq!(sorted, vec![1, 2, 3]);
}

#[test]
fn bad_input_exits_one_and_numerical_failure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "a,b\n1,2\n0,1\n").unwrap();
    let (code, _, err) = run(&["summary", "--data", path_str(&bad)]);
    assert_eq!(code, 1);
    assert!(err.contains("row 2"), "{err}");

    let (code, _, err) = run(&["fit", "--model", "lognormal", "--data", path_str(&dir.path().join("missing.csv"))]);
    assert_eq!(code, 1, "{err}");

    // perfectly collinear logs: no finite maximizer
    let line = dir.path().join("line.csv");
    let rows: String = (1..=20).map(|i| format!("{},{}\n", i as f64, (i as f64).powi(2))).collect();
    std::fs::write(&line, format!("t1,t2\n{rows}")).unwrap();
    let (code, _, err) = run(&["fit", "--model", "lognormal", "--data", path_str(&line)]);
    assert_eq!(code, 2, "{err}");
}
