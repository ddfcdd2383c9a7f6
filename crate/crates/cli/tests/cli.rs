use std::path::Path;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

use redei::{run, PointFile, Report};

fn write_points(dir: &TempDir, name: &str, p: u32, dim: usize, pts: &[Vec<u32>]) -> String {
    let body = serde_json::json!({ "field": { "p": p, "h": 1 }, "dim": dim, "points": pts });
    let path = dir.path().join(name);
    std::fs::write(&path, body.to_string()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn report(dir: &TempDir, args: &[&str]) -> (i32, Value) {
    let out = dir.path().join("report.json");
    let mut argv = vec!["redei"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--json", out.to_str().unwrap()]);
    let code = run(argv);
    let text = std::fs::read_to_string(&out).unwrap_or_else(|_| "null".into());
    std::fs::remove_file(&out).ok();
    (code, serde_json::from_str(&text).unwrap())
}

fn without_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

fn plane_minus_two() -> Vec<Vec<u32>> {
    let mut pts = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            if (a, b) != (0, 0) && (a, b) != (1, 1) {
                pts.push(vec![a, b, 0]);
            }
        }
    }
    pts
}

#[test]
fn analyze_three_points() {
    let dir = TempDir::new().unwrap();
    let f = write_points(
        &dir,
        "u.json",
        3,
        3,
        &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]],
    );
    let (code, r) = report(&dir, &["analyze", "--points", &f]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "analyze");
    assert_eq!(r["version"], redei::VERSION);
    assert_eq!(r["result"]["num_determined"], 3);
    assert_eq!(r["result"]["num_non_determined"], 10);
    assert!(r["wall_time_ms"].is_u64());
}

#[test]
fn derive_f_plane_minus_two() {
    let dir = TempDir::new().unwrap();
    let f = write_points(&dir, "u.json", 3, 3, &plane_minus_two());
    let (code, r) = report(&dir, &["derive-f", "--points", &f, "--expand"]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["eps"], 2);
    assert_eq!(res["star_ok"], true);
    assert_eq!(res["f_expanded"], "X0^2 + X0X1 + X0X2");
    let monos: Vec<(Vec<u64>, u64)> = res["f_monomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| {
            let e = m["exp"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap())
                .collect();
            (e, m["coef"].as_u64().unwrap())
        })
        .collect();
    assert_eq!(
        monos,
        vec![
            (vec![2, 0, 0, 0], 1),
            (vec![1, 1, 0, 0], 1),
            (vec![1, 0, 1, 0], 1)
        ]
    );
}

#[test]
fn classify_plane_minus_two_recovers_holes() {
    let dir = TempDir::new().unwrap();
    let f = write_points(&dir, "u.json", 3, 3, &plane_minus_two());
    let (code, r) = report(&dir, &["classify", "--points", &f]);
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["quadric_class"]["kind"], "two-hyperplanes");
    assert_eq!(res["trichotomy"]["case"], "extendable");
    assert_eq!(res["extensions"]["num_completions"], 1);
    assert_eq!(
        res["extensions"]["completions"][0],
        serde_json::json!([[1, 0, 0, 0], [1, 1, 1, 0]])
    );
}

#[test]
fn pg_verify_hyperoval() {
    let dir = TempDir::new().unwrap();
    let (code, r) = report(&dir, &["pg", "verify", "--q", "4", "--arc", "hyperoval"]);
    assert_eq!(code, 0);
    assert_eq!(
        r["result"],
        serde_json::json!({ "s": 3, "t": 5, "alpha": 1 })
    );
}

#[test]
fn pg_build_denniston() {
    let dir = TempDir::new().unwrap();
    let (code, r) = report(&dir, &["pg", "build", "--q", "8", "--arc", "denniston:4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["num_points"], 512);
    assert_eq!(r["result"]["num_lines"], 1792);
    assert_eq!(r["input"]["arc"], serde_json::json!({ "denniston": 4 }));
}

#[test]
fn echoed_points_round_trip() {
    let dir = TempDir::new().unwrap();
    let pts = vec![vec![2, 1, 0], vec![0, 0, 0], vec![1, 2, 2], vec![0, 1, 1]];
    let f = write_points(&dir, "u.json", 3, 3, &pts);
    let original = PointFile::from_json(&std::fs::read_to_string(&f).unwrap())
        .unwrap()
        .to_set(None, None)
        .unwrap();
    for cmd in ["analyze", "classify"] {
        let (code, r) = report(&dir, &[cmd, "--points", &f]);
        assert_eq!(code, 0);
        let echo = PointFile::from_json(&r["input"]["points"].to_string()).unwrap();
        assert_eq!(echo.to_set(None, None).unwrap(), original);
    }
}

#[test]
fn homogeneous_coordinates_are_accepted() {
    let dir = TempDir::new().unwrap();
    let affine = write_points(&dir, "a.json", 3, 3, &[vec![0, 0, 0], vec![1, 2, 0]]);
    let homog = write_points(&dir, "h.json", 3, 3, &[vec![1, 0, 0, 0], vec![1, 1, 2, 0]]);
    let (_, a) = report(&dir, &["analyze", "--points", &affine]);
    let (_, h) = report(&dir, &["analyze", "--points", &homog]);
    assert_eq!(a["result"], h["result"]);
    assert_eq!(a["input"], h["input"]);
}

#[test]
fn fixed_seed_reports_are_identical() {
    let dir = TempDir::new().unwrap();
    let runs = [
        vec![
            "pg",
            "ovoid-search",
            "--q",
            "4",
            "--trials",
            "20",
            "--seed",
            "11",
        ],
        vec![
            "search-maximal",
            "--q",
            "3",
            "--seed",
            "5",
            "--budget",
            "120",
        ],
    ];
    for args in runs {
        let (c1, r1) = report(&dir, &args);
        let (c2, r2) = report(&dir, &args);
        assert_eq!(c1, 0);
        assert_eq!(c2, 0);
        assert_eq!(without_time(r1), without_time(r2));
    }
}

#[test]
fn ovoid_search_extends_everything_in_gq() {
    let dir = TempDir::new().unwrap();
    let (code, r) = report(
        &dir,
        &[
            "pg",
            "ovoid-search",
            "--q",
            "4",
            "--trials",
            "30",
            "--seed",
            "3",
        ],
    );
    assert_eq!(code, 0);
    let res = &r["result"];
    assert_eq!(res["generated"], 30);
    assert_eq!(res["extendable"], 30);
    assert_eq!(res["in_unique_regime"], 30);
    assert_eq!(res["non_extendable_witnesses"], serde_json::json!([]));
}

#[test]
fn usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"field\": {\"p\": 3}, ").unwrap();
    let bad = bad.to_str().unwrap();
    let good = write_points(&dir, "u.json", 3, 3, &[vec![0, 0, 0]]);
    let outside = write_points(&dir, "o.json", 3, 3, &[vec![0, 0, 7]]);
    assert_eq!(report(&dir, &["analyze", "--points", bad]).0, 1);
    assert_eq!(
        report(&dir, &["analyze", "--points", &good, "--field", "5,1"]).0,
        1
    );
    assert_eq!(
        report(&dir, &["analyze", "--points", &good, "--dim", "4"]).0,
        1
    );
    assert_eq!(report(&dir, &["analyze", "--points", &outside]).0, 1);
    assert_eq!(report(&dir, &["analyze"]).0, 1);
    assert_eq!(report(&dir, &["pg", "build", "--q", "5"]).0, 1);
    assert_eq!(
        report(&dir, &["pg", "build", "--q", "4", "--arc", "oval"]).0,
        1
    );
    assert_eq!(report(&dir, &["frobnicate"]).0, 1);
}

#[test]
fn violations_exit_two() {
    let r = Report {
        command: "analyze".into(),
        version: redei::VERSION,
        input: Value::Null,
        result: Value::Null,
        violations: vec!["direction has 3 empty lines, expected 2".into()],
        wall_time_ms: 0,
    };
    assert_eq!(r.exit_code(), 2);
    assert_eq!(
        redei::CliError::Core(redei_core::Error::InvariantViolated("x")).exit_code(),
        2
    );
}

#[test]
fn binary_exit_status() {
    let bin = Path::new(env!("CARGO_BIN_EXE_redei"));
    let ok = Command::new(bin)
        .args(["pg", "verify", "--q", "4"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["result"]["t"], 5);
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    let bad = Command::new(bin)
        .args(["analyze", "--seed", "x"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
