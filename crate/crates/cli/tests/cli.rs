use std::process::{Command, Output};

use serde_json::Value;

fn ges(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ges"))
        .args(args)
        .env("RUST_LOG", "off")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = ges(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn amplitude(records: &Value, label: &str) -> (f64, f64) {
    records
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["basis_label"] == label)
        .map(|r| (f(&r["re"]), f(&r["im"])))
        .unwrap_or((0.0, 0.0))
}

const SEED_SIGNS: [(&str, f64); 8] = [
    ("0000", 1.0),
    ("1111", 1.0),
    ("0110", -1.0),
    ("1100", -1.0),
    ("1010", -1.0),
    ("0011", -1.0),
    ("0101", -1.0),
    ("1001", -1.0),
];

fn assert_is_seed(records: &Value) {
    assert_eq!(records.as_array().unwrap().len(), 8);
    let w = 1.0 / 8f64.sqrt();
    for (label, sign) in SEED_SIGNS {
        let (re, im) = amplitude(records, label);
        assert!((re - sign * w).abs() < 1e-12 && im.abs() < 1e-12, "{label}: {re} {im}");
    }
}

#[test]
fn simulate_d2_at_ges_point() {
    let v = json(&[
        "simulate",
        "--phi",
        "pi/2",
        "--theta",
        "pi/4",
        "--outcome",
        "d2",
        "--json",
    ]);
    let o = &v["outcomes"][0];
    assert_eq!(o["outcome"], "d2");
    assert!((f(&o["probability"]) - 0.5).abs() < 1e-12);
    assert_is_seed(&o["state"]);
}

#[test]
fn simulate_zero_phase_leaves_atoms_alone() {
    let v = json(&["simulate", "--phi", "0", "--theta", "0.3,0.7,0.1,1.2", "--json"]);
    let outcomes = v["outcomes"].as_array().unwrap();
    let d1 = outcomes.iter().find(|o| o["outcome"] == "d1").unwrap();
    assert!(f(&d1["probability"]) < 1e-12);
    assert!(d1["state"].is_null());
    let d2 = outcomes.iter().find(|o| o["outcome"] == "d2").unwrap();
    assert!((f(&d2["probability"]) - 1.0).abs() < 1e-12);
    // Product state: amplitude of |0000⟩ is ∏ cos θ_i.
    let want: f64 = [0.3f64, 0.7, 0.1, 1.2].iter().map(|t| t.cos()).product();
    let (re, im) = amplitude(&d2["state"], "0000");
    assert!((re - want).abs() < 1e-12 && im.abs() < 1e-12);
}

#[test]
fn simulate_deterministic_with_lossy_detectors() {
    let v = json(&[
        "simulate",
        "--phi",
        "pi/2",
        "--theta",
        "pi/4",
        "--eta",
        "0.8",
        "--deterministic",
        "--json",
    ]);
    let d = &v["deterministic"];
    assert!((f(&d["total_probability"]) - 0.8).abs() < 1e-12);
    assert_is_seed(&d["state"]);
}

#[test]
fn sweep_equal_angles() {
    let v = json(&["sweep", "--theta", "0:pi/2:5", "--lock-equal", "--json"]);
    let cols: Vec<&str> = v["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    let col = |n: &str| cols.iter().position(|c| *c == n).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let quarter = &rows[2];
    assert!((f(&quarter[col("theta1")]) - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    for b in ["prime", "double_prime"] {
        assert!(f(&quarter[col(&format!("concurrence_num_{b}"))]).abs() < 1e-10);
        assert!((f(&quarter[col(&format!("entropy_num_{b}"))]) - 1.0).abs() < 1e-10);
    }
    assert!((f(&rows[1][col("lambda_plus")]) - 0.2).abs() < 1e-12);
    for r in rows {
        for (k, name) in cols.iter().enumerate() {
            if name.contains("_diff_") && !r[k].is_null() {
                assert!(f(&r[k]) <= 1e-9, "{name}");
            }
        }
    }
}

#[test]
fn sweep_product_grid_csv() {
    let out = ges(&[
        "sweep",
        "--theta1",
        "0.1:1.4:3",
        "--theta3",
        "0.2:1.2:2",
        "--eta",
        "0.5,1",
        "--csv",
    ]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let header = rdr.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 12);
    let idx = |n: &str| header.iter().position(|h| h == n).unwrap();
    // Lexicographic: θ1 outer, θ3 next, η innermost.
    assert_eq!(rows[0][idx("eta")].parse::<f64>().unwrap(), 0.5);
    assert_eq!(rows[1][idx("eta")].parse::<f64>().unwrap(), 1.0);
    assert_eq!(rows[0][idx("theta1")].parse::<f64>().unwrap(), 0.1);
    assert_eq!(rows[11][idx("theta1")].parse::<f64>().unwrap(), 1.4);
    for r in &rows {
        let p2: f64 = r[idx("p_d2")].parse().unwrap();
        let p1: f64 = r[idx("p_d1")].parse().unwrap();
        let eta: f64 = r[idx("eta")].parse().unwrap();
        assert!((p1 + p2 - eta).abs() < 1e-12);
        for name in header.iter().filter(|h| h.contains("_diff_")) {
            if let Ok(d) = r[idx(name)].parse::<f64>() {
                assert!(d <= 1e-9);
            }
        }
    }
}

#[test]
fn sweep_cap_and_bad_columns_are_usage_errors() {
    let out = ges(&["sweep", "--theta", "0:1:100", "--max-points", "50"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = ges(&["sweep", "--columns", "phi,nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ges(&["sweep", "--theta", "0:1:0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn basis_commands() {
    let v = json(&["basis", "--verify", "--json"]);
    assert!(f(&v["max_orthonormality_deviation"]) <= 1e-12);
    assert!(f(&v["max_completeness_deviation"]) <= 1e-12);
    assert!(v["states"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s["report"]["is_genuine"] == true));

    let v = json(&["basis", "--list", "--index", "1,0", "--json"]);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_is_seed(&v[0]["amplitudes"]);

    let v = json(&["basis", "--compare-generated", "--json"]);
    let a = v.as_array().unwrap();
    assert_eq!(a.len(), 16);
    assert!(a.iter().all(|x| x["equal_up_to_global_phase"] == true));

    assert_eq!(ges(&["basis", "--list", "--index", "5,0"]).status.code(), Some(2));
}

#[test]
fn decompose_named_states() {
    let v = json(&["decompose", "ghz4", "--json"]);
    let big: Vec<&Value> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| f(&c["abs2"]) > 1e-12)
        .collect();
    assert_eq!(big.len(), 4);
    assert!(big.iter().all(|c| (f(&c["abs2"]) - 0.25).abs() < 1e-12));

    let v = json(&["decompose", "cl4", "--json"]);
    let w = 1.0 / 8f64.sqrt();
    let signs: Vec<(String, f64)> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| f(&c["abs2"]) > 1e-12)
        .map(|c| (c["index"].as_str().unwrap().to_owned(), f(&c["re"])))
        .collect();
    assert_eq!(signs.len(), 8);
    for (i, re) in &signs {
        let positive = i == "2,3" || i == "4,0";
        assert!((re - if positive { w } else { -w }).abs() < 1e-12, "{i}");
    }
    assert!(f(&v["reference"]["max_deviation"]) <= 1e-12);
}

#[test]
fn decompose_state_files() {
    let dir = tempfile::tempdir().unwrap();
    let element = dir.path().join("element.json");
    let listed = json(&["basis", "--list", "--index", "2,3", "--json"]);
    std::fs::write(&element, listed[0]["amplitudes"].to_string()).unwrap();
    let v = json(&["decompose", "--file", element.to_str().unwrap(), "--json"]);
    for c in v["coefficients"].as_array().unwrap() {
        let want = if c["index"] == "2,3" { 1.0 } else { 0.0 };
        assert!((f(&c["abs2"]) - want).abs() < 1e-12);
    }

    let unnormalized = dir.path().join("u.json");
    std::fs::write(
        &unnormalized,
        r#"[{"basis_label":"0000","re":1,"im":0},{"basis_label":"1111","re":1,"im":0}]"#,
    )
    .unwrap();
    let out = ges(&["decompose", "--file", unnormalized.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--normalize"));
    let v = json(&[
        "decompose",
        "--file",
        unnormalized.to_str().unwrap(),
        "--normalize",
        "--json",
    ]);
    assert!((f(&v["weight"]) - 1.0).abs() < 1e-12);

    let broken = dir.path().join("b.json");
    std::fs::write(&broken, "[{").unwrap();
    assert_eq!(
        ges(&["decompose", "--file", broken.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        ges(&["decompose", "--file", "/nonexistent/state.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_is_deterministic_and_passes() {
    let a = ges(&["verify", "--seed", "42", "--json"]);
    let b = ges(&["verify", "--seed", "42", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["report"]["failed"], 0);
    let topics: Vec<&str> = v["discrepancy_log"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["topic"].as_str().unwrap())
        .collect();
    for t in ["success_probability", "upper_port_normalization", "pauli_phases"] {
        assert!(topics.contains(&t), "{t}");
    }
    let c = ges(&["verify", "--seed", "43", "--json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn injected_fault_fails_verification() {
    let out = ges(&["verify", "--inject-fault", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let oracle = v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "oracle_equivalence")
        .unwrap();
    assert_eq!(oracle["status"], "fail");
}

#[test]
fn out_flag_and_format_conflicts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sim.json");
    let out = ges(&["simulate", "--json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["outcomes"].as_array().unwrap().len(), 4);

    assert_eq!(ges(&["simulate", "--json", "--csv"]).status.code(), Some(2));
    assert_eq!(ges(&["simulate", "--theta", "0.1,0.2"]).status.code(), Some(2));
    assert_eq!(ges(&["simulate", "--outcome", "d3"]).status.code(), Some(2));
    assert_eq!(ges(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn identical_flags_give_identical_output() {
    for args in [
        &["simulate", "--theta", "0.3,0.7,0.1,1.2", "--phi", "1.1", "--csv"][..],
        &["sweep", "--theta", "0:pi/2:4", "--csv"][..],
        &["decompose", "w4", "--json"][..],
    ] {
        assert_eq!(ges(args).stdout, ges(args).stdout);
    }
}
