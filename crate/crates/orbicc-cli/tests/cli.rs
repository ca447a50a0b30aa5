use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn orbicc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbicc")).args(args).env_remove("ORBIFOLD_MAX_N").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn golden(name: &str) -> String {
    format!("{}/../orbicc/golden/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("orbicc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn arc_listings() {
    let o = orbicc(&["arcs", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 12);
    assert_eq!(stdout(&orbicc(&["arcs", "2"])).lines().count(), 6);
    assert_eq!(stdout(&orbicc(&["triangulations", "3"])).lines().count(), 20);
}

#[test]
fn output_is_deterministic() {
    for args in [&["triangulations", "4"][..], &["cc-table", "3", "--json"][..], &["verify", "2", "--json"][..]] {
        assert_eq!(orbicc(args).stdout, orbicc(args).stdout);
    }
}

#[test]
fn bound_on_n() {
    assert!(!orbicc(&["arcs", "7"]).status.success());
    assert!(!orbicc(&["arcs", "1"]).status.success());
    assert!(orbicc(&["arcs", "7", "--max-n", "7"]).status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_orbicc")).args(["arcs", "4"]).env("ORBIFOLD_MAX_N", "3").output().unwrap();
    assert!(!o.status.success());
}

#[test]
fn golden_tables() {
    let tau = r#"["A:0:2:-","A:0:2:+","P:0"]"#;
    let o = orbicc(&["cc-table", "3", "--tau", tau, "--golden", &golden("flipped_sigma3.json")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = orbicc(&["cc-table", "5", "--golden", &golden("special_sigma5.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.starts_with("A:2:4:-\t")));
}

#[test]
fn golden_mismatch_fails() {
    let text = std::fs::read_to_string(golden("flipped_sigma3.json")).unwrap();
    let broken = text.replacen("\"y2+y3\"", "\"y2+2*y3\"", 1);
    assert_ne!(text, broken);
    let path = scratch("broken.json", &broken);
    let tau = r#"["A:0:2:-","A:0:2:+","P:0"]"#;
    let o = orbicc(&["cc-table", "3", "--tau", tau, "--golden", path.to_str().unwrap()]);
    assert!(!o.status.success());
}

#[test]
fn table_json_shape() {
    let o = orbicc(&["cc-table", "3", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["triangulation"].as_array().unwrap().len(), 3);
    assert_eq!(v["entries"].as_object().unwrap().len(), 18);
    assert!(v["entries"]["P:1"]["terms"].is_array());
}

#[test]
fn mutation_of_special_seed() {
    let seed = stdout(&orbicc(&["seed", "3"]));
    let path = scratch("seed3.json", &seed);
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&orbicc(&["mutate", p])), seed);
    assert_eq!(stdout(&orbicc(&["mutate", p, "2", "2"])), seed);
    let v: Value = serde_json::from_slice(&orbicc(&["mutate", p, "3"]).stdout).unwrap();
    let terms: Vec<Vec<i64>> = v["cluster"][2]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| serde_json::from_value(t["e"].clone()).unwrap())
        .collect();
    assert_eq!(terms, vec![vec![0, 0, -1], vec![0, 1, -1], vec![0, 2, -1]]);
    assert!(!orbicc(&["mutate", p, "4"]).status.success());
    assert!(!orbicc(&["mutate", p, "0"]).status.success());
}

#[test]
fn verification_suites() {
    let o = orbicc(&["verify", "2", "--all"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().last().unwrap().starts_with("PASS"));
    let o = orbicc(&["verify", "3", "--flip-exchange"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[A:0:2:-, A:0:2:+, P:0]: x3 * x3' = x2^2 + x1*x2 + x1^2"));
    let v: Value = serde_json::from_slice(&orbicc(&["verify", "3", "--json"]).stdout).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["triangulations"], 20);
    assert_eq!(v["suites"].as_array().unwrap().len(), 5);
}
