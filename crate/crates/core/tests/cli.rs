use std::path::PathBuf;
use std::process::{Command, Output};

use depcoef::cli::bench_shape;
use depcoef::io::read_matrix;
use depcoef::matrix::DEFAULT_EPS_NORM;
use depcoef::{dependence, InputMode};

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    path.to_str().unwrap().to_string()
}

fn depcoef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_depcoef"))
        .args(args)
        .output()
        .expect("run depcoef")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(json: &'a str, key: &str) -> &'a str {
    let start = json.find(&format!("\"{key}\":")).unwrap_or_else(|| panic!("no {key} in {json}")) + key.len() + 3;
    let rest = &json[start..];
    &rest[..rest.find([',', '}']).unwrap()]
}

fn number(json: &str, key: &str) -> f64 {
    field(json, key).parse().unwrap()
}

#[test]
fn worked_example_report() {
    let json = stdout(&depcoef(&["compute", &fixture("worked.csv")]));
    assert_eq!(
        json.trim_end(),
        "{\"n\":2,\"m\":2,\"transposed\":false,\"dropped_rows\":[],\"dropped_cols\":[],\
         \"mu\":0.010000000000000004,\"mu_f\":0.0625,\"k\":0.16000000000000006,\
         \"classification\":\"intermediate\",\"algorithm\":\"fast\"}"
    );
}

#[test]
fn plain_output() {
    let text = stdout(&depcoef(&["compute", &fixture("functional.csv"), "--output", "plain"]));
    assert_eq!(text, "k=1.0\n");
}

#[test]
fn rectangular_input_is_oriented() {
    let json = stdout(&depcoef(&["compute", &fixture("worked_2x3.csv"), "--orientation", "both"]));
    assert_eq!(field(&json, "n"), "2");
    assert_eq!(field(&json, "m"), "3");
    let (k, kt) = (number(&json, "k"), number(&json, "k_transposed"));
    assert!((k - 0.060763888888888888).abs() < 1e-15);
    assert!((0.0..=1.0).contains(&kt));
    assert!((k - kt).abs() > 1e-6, "k is not symmetric here");
}

#[test]
fn both_kernels_agree_on_fixtures() {
    for name in ["uniform.csv", "functional.csv", "worked.csv", "worked_2x3.csv"] {
        let json = stdout(&depcoef(&["compute", &fixture(name), "--algorithm", "both"]));
        assert_eq!(field(&json, "algorithm"), "\"fast\"");
    }
}

#[test]
fn baselines_are_appended() {
    let json = stdout(&depcoef(&["compute", &fixture("worked.csv"), "--baselines"]));
    let chi = number(&json, "chi_square");
    let v = number(&json, "cramers_v");
    let mi = number(&json, "mutual_information_nats");
    assert!((chi - 1.0 / 6.0).abs() < 1e-14);
    assert!((v - 0.40824829046386302).abs() < 1e-14);
    assert!((mi - 0.086304621735534278).abs() < 1e-14);
}

#[test]
fn counts_are_normalized() {
    let json = stdout(&depcoef(&["compute", &fixture("counts.csv"), "--kind", "matrix-counts"]));
    assert_eq!(field(&json, "k"), "1.0");
    assert_eq!(field(&json, "classification"), "\"functional\"");
}

#[test]
fn estimate_matches_compute_on_pairs() {
    let a = stdout(&depcoef(&["estimate", &fixture("pairs.csv")]));
    let b = stdout(&depcoef(&["compute", &fixture("pairs.csv"), "--kind", "sample-pairs"]));
    assert_eq!(a, b);
    let k = number(&a, "k");
    assert!(k > 0.0 && k < 1.0, "{k}");
}

#[test]
fn generated_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (generator, class) in [("product", "independent"), ("functional", "functional"), ("mixture", "intermediate")] {
        let path = dir.path().join(format!("{generator}.csv"));
        let path = path.to_str().unwrap();
        let args = ["gen", generator, "-n", "4", "-m", "6", "--seed", "11", "--out", path];
        assert!(depcoef(&args).status.success());

        let json = stdout(&depcoef(&["compute", path]));
        assert_eq!(field(&json, "classification"), format!("\"{class}\""), "{generator}");

        let p = read_matrix(path, InputMode::Probabilities, DEFAULT_EPS_NORM).unwrap();
        assert_eq!(number(&json, "k"), dependence(&p).unwrap().k);
    }
}

#[test]
fn gen_is_deterministic() {
    let a = stdout(&depcoef(&["gen", "random", "-n", "3", "-m", "5", "--seed", "7"]));
    let b = stdout(&depcoef(&["gen", "random", "-n", "3", "-m", "5", "--seed", "7"]));
    let c = stdout(&depcoef(&["gen", "random", "-n", "3", "-m", "5", "--seed", "8"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(a.lines().count(), 3);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad_sum = dir.path().join("bad_sum.csv");
    std::fs::write(&bad_sum, "0.5,0.2\n0.1,0.1\n").unwrap();
    let negative = dir.path().join("negative.csv");
    std::fs::write(&negative, "0.6,-0.1\n0.3,0.2\n").unwrap();
    let single_row = dir.path().join("single_row.csv");
    std::fs::write(&single_row, "0.5,0.5\n0,0\n").unwrap();

    let cases = [
        fixture("ragged.csv"),
        bad_sum.to_str().unwrap().to_string(),
        negative.to_str().unwrap().to_string(),
        single_row.to_str().unwrap().to_string(),
        dir.path().join("missing.csv").to_str().unwrap().to_string(),
    ];
    for path in &cases {
        let out = depcoef(&["compute", path]);
        assert_eq!(out.status.code(), Some(1), "{path}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("depcoef: "));
    }
}

#[test]
fn numeric_breakdown_exits_two() {
    let out = depcoef(&["compute", &fixture("extreme_range.csv")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_thresholds_are_rejected() {
    let out = depcoef(&["compute", &fixture("worked.csv"), "--tau-indep", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_rows_are_consistent() {
    let row = bench_shape(8, 12, 3).unwrap();
    assert!((row.mu_naive - row.mu_fast).abs() <= 1e-12 * row.mu_naive);
    assert!(row.speedup() > 0.0);
    assert!(row.to_json().starts_with("{\"n\":8,\"m\":12,"));
}
