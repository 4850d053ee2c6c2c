use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn multlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multlab")).args(args).env_remove("MULTLAB_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn file(dir: &TempDir, name: &str, body: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn shear(dir: &TempDir) -> String {
    file(dir, "shear.json", r#"{"n": 2, "mode": "affine", "components": ["1", "x1"]}"#)
}

#[test]
fn mult_finite_and_inconclusive() {
    let dir = TempDir::new().unwrap();
    let f = shear(&dir);
    let o = multlab(&["--format", "json", "mult", "--field", &f, "--poly", "x2", "--point", "0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 2);
    let o = multlab(&["mult", "--field", &f, "--poly", "x2", "--point", "0,0", "--cutoff", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("inconclusive"));
}

#[test]
fn mult_domain_errors() {
    let dir = TempDir::new().unwrap();
    let sing = file(&dir, "s.json", r#"{"n": 2, "components": ["x1", "x2"]}"#);
    let o = multlab(&["mult", "--field", &sing, "--poly", "x2", "--point", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("singular point of V"));
    let f = shear(&dir);
    let o = multlab(&["mult", "--field", &f, "--poly", "x2 +", "--point", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = file(&dir, "bad.json", "{not json");
    assert_eq!(multlab(&["mult", "--field", &bad, "--poly", "x2", "--point", "0,0"]).status.code(), Some(1));
    assert_eq!(multlab(&["mult", "--poly", "x2"]).status.code(), Some(1));
}

#[test]
fn mult_certified_and_sum() {
    let dir = TempDir::new().unwrap();
    let eig = file(&dir, "e.json", r#"{"n": 2, "components": ["2*x1", "3*x2"]}"#);
    let o = multlab(&["--format", "json", "mult", "--field", &eig, "--poly", "x1^3 - x2^2", "--point", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certified_infinite"));
    let o = multlab(&["--format", "json", "mult", "--field", &eig, "--poly", "x1^3 - x2^2", "--point", "1,1", "--certify"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["vanishes"].as_bool(), v["bound"].as_u64()), (Some(true), Some(72)));

    let f = shear(&dir);
    let pts = file(&dir, "p.json", r#"[["0","0"],["1","1"]]"#);
    let o = multlab(&["--format", "json", "mult", "--field", &f, "--poly", "x2", "--points", &pts]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sum"], 2);
}

#[test]
fn bounds_tables() {
    let o = multlab(&["bounds", "--n", "2", "--d", "3", "--delta", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    for want in ["2696", "76", "128"] {
        assert!(t.contains(want), "{want} missing from\n{t}");
    }
    let o = multlab(&["--format", "csv", "bounds", "--n", "3", "--d", "3", "--delta", "2", "--which", "gr"]);
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>()[1..].iter().map(|l| l.split(',').nth(1).unwrap()).collect::<Vec<_>>(), ["99", "87"]);
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.json", r#"{"n": 2, "points": [[0]]}"#);
    let o = multlab(&["bounds", "--n", "2", "--d", "3", "--delta", "2", "--poly-polytope", &bad, "--field-polytope", &bad]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bounds_with_polytopes() {
    let dir = TempDir::new().unwrap();
    let dp = file(&dir, "dp.json", r#"{"n": 2, "points": [[0,0],[3,0],[0,3]]}"#);
    let dv = file(&dir, "dv.json", r#"{"n": 2, "points": [[0,0],[1,0],[0,1]]}"#);
    let o = multlab(&["--format", "json", "bounds", "--n", "2", "--d", "3", "--delta", "2", "--poly-polytope", &dp, "--field-polytope", &dv]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let get = |name: &str| v["entries"].as_array().unwrap().iter().find(|e| e["name"] == name).unwrap()["value"].clone();
    assert_eq!(get("mc_polytope_sum[0]"), "34");
    assert_eq!(get("mc_polytope_sum[1]"), "3");
    assert_eq!(get("mc_degree[0]"), "64");
}

#[test]
fn polytope_commands() {
    let dir = TempDir::new().unwrap();
    let sq = file(&dir, "sq.json", r#"{"n": 2, "points": [[0,0],[1,0],[0,1],[1,1]]}"#);
    let tri = file(&dir, "tri.json", r#"{"n": 2, "points": [[0,0],[1,0],[0,1]]}"#);
    let o = multlab(&["--format", "json", "polytope", "bk-count", &sq, &tri]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"2\""));
    let o = multlab(&["polytope", "volume", &sq]);
    assert!(stdout(&o).contains("volume: 1"));
    let o = multlab(&["polytope", "quermass", &tri, "--j", "1"]);
    assert!(stdout(&o).contains("1/2"));
    let o = multlab(&["polytope", "mixed-volume", &tri]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn witness_commands() {
    let dir = TempDir::new().unwrap();
    let pts = file(&dir, "p.json", r#"[["0"],["1"],["2"],["3"]]"#);
    let o = multlab(&["--format", "json", "witness", "set", "--points", &pts, "--n", "1", "--degree", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!([["0"], ["1"]]));
    let cyc = file(&dir, "c.json", r#"[{"type": "hypersurface", "data": "x1 - x2", "coeff": 2}, {"type": "point", "data": ["5","5"], "coeff": 1}]"#);
    let o = multlab(&["witness", "degf", "--cycle", &cyc, "--n", "2", "--point", "5,5"]);
    assert!(stdout(&o).contains("degf: 3"));
    let lv = file(&dir, "l.json", r#"{"n": 1, "D": 1, "levels": [{"i": 1, "points": [["0"],["1"],["2"],["3"]]}, {"i": 2, "points": [["0"],["1"]]}]}"#);
    let o = multlab(&["--format", "json", "witness", "family", "--levels", &lv]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn experiment_runs_and_replays() {
    let o = multlab(&["experiment", "--n", "2", "--trials", "100", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 101);
    let again = multlab(&["experiment", "--n", "2", "--trials", "100", "--seed", "1"]);
    assert_eq!(o.stdout, again.stdout);

    let empty = multlab(&["experiment", "--trials", "0"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(empty.stdout.is_empty());

    let dir = TempDir::new().unwrap();
    let one = multlab(&["experiment", "--trials", "4", "--seed", "7", "--target-orders", "3"]);
    let last_row = stdout(&one).lines().last().unwrap().to_string();
    let cfg: serde_json::Value = serde_json::json!({"n": 2, "trials": 4, "seed": 7, "target_orders": [3]});
    let config = file(&dir, "cfg.json", &cfg.to_string());
    let via_config = multlab(&["experiment", "--config", &config]);
    assert_eq!(stdout(&via_config).lines().last().unwrap(), last_row);
}

#[test]
fn seed_from_environment() {
    let run = |seed: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_multlab"));
        c.args(["experiment", "--trials", "3"]);
        match seed {
            Some(s) => c.env("MULTLAB_SEED", s),
            None => c.env_remove("MULTLAB_SEED"),
        };
        c.output().unwrap().stdout
    };
    let explicit = multlab(&["experiment", "--trials", "3", "--seed", "42"]).stdout;
    assert_eq!(run(Some("42")), explicit);
    assert_ne!(run(None), explicit);
}

#[test]
fn usage_and_help_exit_codes() {
    assert_eq!(multlab(&["nonsense"]).status.code(), Some(1));
    assert_eq!(multlab(&["--help"]).status.code(), Some(0));
    assert_eq!(multlab(&["--version"]).status.code(), Some(0));
}
