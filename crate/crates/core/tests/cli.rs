use std::fs;
use std::path::{Path, PathBuf};

use fifcover::cli::{self, EXIT_DEPTH_CAP, EXIT_IO, EXIT_OK, EXIT_PARSE, EXIT_USAGE, EXIT_VALIDATION, EXIT_VIOLATIONS};
use fifcover::io::{parse_sample_csv, CoveringDocument};
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["fifcover"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn bundled(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn write_input(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn out_path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).0, EXIT_USAGE);
    assert_eq!(run(&["cover", "--input", "x.json"]).0, EXIT_USAGE);
    assert_eq!(run(&["cover", "--input", "x.json", "--depth", "two"]).0, EXIT_USAGE);
    assert_eq!(run(&["render", "--input", "x.json", "--depth", "1", "--svg", "o.svg", "--points", "10"]).0, EXIT_USAGE);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Exit status"));
}

#[test]
fn missing_input_is_io_error() {
    let dir = TempDir::new().unwrap();
    let missing = out_path(&dir, "nope.json");
    let (code, _, err) = run(&["cover", "--input", missing.to_str().unwrap(), "--depth", "1"]);
    assert_eq!(code, EXIT_IO);
    assert!(err.starts_with("error:"));
}

#[test]
fn malformed_input_is_parse_error() {
    let dir = TempDir::new().unwrap();
    let f = write_input(&dir, "bad.json", "{\"x\": [0, 1, 2],\n \"y\": [0, 1 2]}");
    let (code, _, err) = run(&["cover", "--input", &f, "--depth", "1"]);
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn invalid_data_is_validation_error() {
    let dir = TempDir::new().unwrap();
    let two = write_input(&dir, "two.json", r#"{"x":[0,100],"y":[0,0],"d":[0.5]}"#);
    assert_eq!(run(&["cover", "--input", &two, "--depth", "1"]).0, EXIT_VALIDATION);
    let unordered = write_input(&dir, "unordered.json", r#"{"x":[0,2,1],"y":[0,1,0],"d":[0.5,0.5]}"#);
    assert_eq!(run(&["range", "--input", &unordered, "--max-depth", "2"]).0, EXIT_VALIDATION);
    let scale = write_input(&dir, "scale.json", r#"{"x":[0,1,2],"y":[0,1,0],"d":[0.5,1.0]}"#);
    assert_eq!(run(&["check", "--input", &scale, "--depth", "1", "--points", "10", "--seed", "1"]).0, EXIT_VALIDATION);
}

#[test]
fn depth_cap_has_its_own_status() {
    let f1 = bundled("framework1.json");
    let (code, _, err) = run(&["cover", "--input", &f1, "--depth", "6", "--max-maps", "1000"]);
    assert_eq!(code, EXIT_DEPTH_CAP);
    assert!(err.contains("4^6"), "{err}");
}

#[test]
fn cover_writes_all_outputs() {
    let dir = TempDir::new().unwrap();
    let (json, svg, csv) = (out_path(&dir, "c.json"), out_path(&dir, "c.svg"), out_path(&dir, "c.csv"));
    let (code, out, _) = run(&[
        "cover",
        "--input",
        &bundled("framework1.json"),
        "--depth",
        "1",
        "--json",
        json.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("4 rhombi"));

    let doc = CoveringDocument::parse(&fs::read_to_string(&json).unwrap()).unwrap();
    let cov = doc.into_covering().unwrap();
    assert_eq!(cov.len(), 4);
    assert_eq!(cov.depth(), 1);

    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polygon").count(), 4);

    let table = fs::read_to_string(&csv).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("word,u,v,radius,lipschitz"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn appendix_cover_reports_deviations() {
    let (code, out, _) = run(&["cover", "--input", &bundled("framework1.json"), "--depth", "2", "--mode", "appendix"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches("note:").count(), 3);
}

#[test]
fn constant_data_gives_level_rhombi() {
    let dir = TempDir::new().unwrap();
    let f = write_input(&dir, "flat.json", r#"{"x":[0,1,3],"y":[2,2,2],"d":[0.4,0.2]}"#);
    let json = out_path(&dir, "flat.cover.json");
    let (code, _, _) = run(&["cover", "--input", &f, "--depth", "1", "--json", json.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let cov = CoveringDocument::parse(&fs::read_to_string(&json).unwrap()).unwrap().into_covering().unwrap();
    assert_eq!(cov.len(), 2);
    for r in cov.rhombi() {
        assert!((r.center.y - 2.0).abs() < 1e-12);
        let (lo, hi) = r.vertical_span();
        assert!((hi - 2.0 - (2.0 - lo)).abs() < 1e-12);
    }
}

#[test]
fn sample_writes_round_trippable_csv() {
    let dir = TempDir::new().unwrap();
    let out = out_path(&dir, "s.csv");
    let args = ["sample", "--input", &bundled("framework3.json"), "--points", "500", "--seed", "9", "--out", out.to_str().unwrap()];
    let (code, stdout, _) = run(&args);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("500 points"));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("x,y\n"));
    let first = text.lines().nth(1).unwrap();
    let mantissa = first.split(',').next().unwrap().split('e').next().unwrap();
    assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
    let points = parse_sample_csv(&text).unwrap();
    assert_eq!(points.len(), 500);

    // same seed, same file
    run(&args);
    assert_eq!(fs::read_to_string(&out).unwrap(), text);
}

#[test]
fn range_prints_one_row_per_depth() {
    let (code, out, _) = run(&["range", "--input", &bundled("framework1.json"), "--max-depth", "5"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.contains("theorem")));
    assert!(rows[4].contains("1.8744") && rows[4].contains("4.0391"), "{}", rows[4]);
}

#[test]
fn range_with_reference_reports_both_modes() {
    let (code, out, _) = run(&[
        "range",
        "--input",
        &bundled("framework2.json"),
        "--max-depth",
        "3",
        "--reference",
        &bundled("framework2.reference.json"),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("# reference: framework2"));
    assert_eq!(out.matches(" appendix ").count(), 6);
    let (code, out, _) = run(&[
        "range",
        "--input",
        &bundled("framework2.json"),
        "--max-depth",
        "1",
        "--mode",
        "theorem",
        "--reference",
        &bundled("framework2.reference.json"),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains("appendix"));
}

#[test]
fn bad_reference_is_parse_error() {
    let dir = TempDir::new().unwrap();
    let r = write_input(&dir, "ref.json", r#"{"format_version":2,"name":"x","source":"y","rows":[]}"#);
    let (code, _, _) = run(&["range", "--input", &bundled("framework1.json"), "--max-depth", "1", "--reference", &r]);
    assert_eq!(code, EXIT_PARSE);
}

#[test]
fn check_passes_on_framework2() {
    let (code, out, _) = run(&[
        "check", "--input", &bundled("framework2.json"), "--depth", "3", "--points", "100000", "--seed", "42",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("100000 points checked, 0 violations"), "{out}");
}

#[test]
fn check_reports_violations() {
    // a negative tolerance shrinks every rhombus
    let (code, out, err) = run(&[
        "check",
        "--input",
        &bundled("framework1.json"),
        "--depth",
        "2",
        "--points",
        "1000",
        "--seed",
        "1",
        "--tol-rel=-0.5",
    ]);
    assert_eq!(code, EXIT_VIOLATIONS);
    assert!(!out.contains(" 0 violations"));
    assert!(err.contains("outside the covering"));
}

#[test]
fn render_draws_covering_and_overlay() {
    let dir = TempDir::new().unwrap();
    let svg = out_path(&dir, "r.svg");
    let args = [
        "render", "--input", &bundled("framework3.json"), "--depth", "2", "--svg", svg.to_str().unwrap(), "--points", "200", "--seed", "3",
    ];
    assert_eq!(run(&args).0, EXIT_OK);
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"));
    assert_eq!(text.matches("<polygon").count(), 9);
    assert_eq!(text.matches("<circle").count(), 200);
    run(&args);
    assert_eq!(fs::read_to_string(&svg).unwrap(), text);
}
