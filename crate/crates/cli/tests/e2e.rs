use hb_lab::{run_experiment, ExperimentConfig};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn shipped_configs() -> Vec<PathBuf> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(configs_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    assert!(!paths.is_empty());
    paths
}

fn hb_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hb-lab")).args(args).env("HB_LAB_THREADS", "2").output().unwrap()
}

fn run_config(config: &Path, out: &Path, format: &str) -> Output {
    hb_lab(&["run", config.to_str().unwrap(), "--out", out.to_str().unwrap(), "--format", format])
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn list_prints_the_catalog() {
    let out = hb_lab(&["--list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for needle in ["u0", "wolf", "rational_pole", "criterion_probe", "carleman_transform"] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

#[test]
fn every_shipped_config_round_trips() {
    for path in shipped_configs() {
        let cfg = ExperimentConfig::load(&path).unwrap();
        let again = ExperimentConfig::parse(&cfg.emit().unwrap()).unwrap();
        assert_eq!(cfg, again, "{}", path.display());
    }
}

#[test]
fn every_shipped_config_runs_without_contradiction() {
    let tmp = tempfile::tempdir().unwrap();
    for path in shipped_configs() {
        let name = path.file_stem().unwrap().to_string_lossy().to_string();
        let out = run_config(&path, &tmp.path().join(&name), "json");
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "{name}: {stdout}{}", String::from_utf8_lossy(&out.stderr));
        assert!(!stdout.contains("CONTRADICTION"), "{name}: {stdout}");
        let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(tmp.path().join(&name).join("report.json")).unwrap()).unwrap();
        assert_eq!(report["schema"], "hb-lab/1");
        assert_eq!(report["status"], "ok", "{name}");
    }
}

#[test]
fn unknown_field_name_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("bad.toml");
    std::fs::write(
        &path,
        "schema = \"hb-lab/1\"\nid = \"bad\"\n\n[[task]]\nkind = \"audit_classical\"\nfield = \"u9\"\ntheorem = \"dahlberg\"\n",
    )
    .unwrap();
    let out = run_config(&path, &tmp.path().join("out"), "json");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("u9"));
    assert!(!tmp.path().join("out").exists());
}

#[test]
fn missing_config_is_a_config_error() {
    let out = hb_lab(&["run", "/nonexistent/config.toml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_config_writes_header_only_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_config(&configs_dir().join("empty.toml"), tmp.path(), "csv");
    assert_eq!(out.status.code(), Some(0));
    for table in ["summary", "growth", "limits", "audits", "criterion", "evolution", "carleman"] {
        let (header, rows) = read_csv(&tmp.path().join(format!("{table}.csv")));
        assert!(!header.is_empty(), "{table}");
        assert!(rows.is_empty(), "{table}");
    }
}

#[test]
fn numeric_payload_is_reproducible() {
    let cfg = ExperimentConfig::load(&configs_dir().join("semigroup.toml")).unwrap();
    let a = run_experiment(&cfg).unwrap().numeric_payload();
    let b = run_experiment(&cfg).unwrap().numeric_payload();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());

    let tmp = tempfile::tempdir().unwrap();
    let path = configs_dir().join("semigroup.toml");
    let first = run_config(&path, &tmp.path().join("a"), "csv");
    let second = run_config(&path, &tmp.path().join("b"), "csv");
    assert!(first.status.success() && second.status.success());
    for table in ["criterion", "evolution"] {
        let x = std::fs::read(tmp.path().join("a").join(format!("{table}.csv"))).unwrap();
        let y = std::fs::read(tmp.path().join("b").join(format!("{table}.csv"))).unwrap();
        assert_eq!(x, y, "{table}");
    }
}

#[test]
fn seed_override_changes_random_vectors_only() {
    let tmp = tempfile::tempdir().unwrap();
    let path = configs_dir().join("semigroup.toml");
    let base = run_config(&path, &tmp.path().join("a"), "json");
    let other = hb_lab(&["run", path.to_str().unwrap(), "--out", tmp.path().join("b").to_str().unwrap(), "--format", "json", "--seed", "99"]);
    assert!(base.status.success() && other.status.success());
    let load = |d: &str| -> serde_json::Value {
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join(d).join("report.json")).unwrap()).unwrap()
    };
    let (a, b) = (load("a"), load("b"));
    let records = |v: &serde_json::Value| v["records"].as_array().unwrap().clone();
    let (ra, rb) = (records(&a), records(&b));
    for (x, y) in ra.iter().zip(&rb) {
        if x["label"].as_str().unwrap().contains("random") {
            assert_ne!(x["output"], y["output"]);
        } else {
            assert_eq!(x["output"], y["output"]);
        }
    }
}

#[test]
fn growth_table_is_monotone_in_the_level_coordinate() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_config(&configs_dir().join("dahlberg_u0.toml"), tmp.path(), "csv");
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = read_csv(&tmp.path().join("growth.csv"));
    assert_eq!(header[0], "r");
    assert!(!rows.is_empty());
    let mut by_task: std::collections::BTreeMap<String, Vec<f64>> = Default::default();
    for row in &rows {
        by_task.entry(row[4].clone()).or_default().push(row[0].parse().unwrap());
    }
    for (task, r) in by_task {
        assert!(r.windows(2).all(|w| w[1] > w[0]), "task {task}: {r:?}");
    }
}

#[test]
fn unitary_criterion_rows_have_negative_slopes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_config(&configs_dir().join("semigroup.toml"), tmp.path(), "csv");
    assert!(out.status.success());
    let (_, summary) = read_csv(&tmp.path().join("summary.csv"));
    let unitary: Vec<String> = summary.iter().filter(|r| r[1] == "criterion_probe" && r[3] == "blow_up").map(|r| r[0].clone()).collect();
    assert!(!unitary.is_empty(), "{summary:?}");
    let (_, rows) = read_csv(&tmp.path().join("criterion.csv"));
    for task in unitary {
        let slopes: Vec<f64> = rows.iter().filter(|r| r[4] == task).map(|r| r[3].parse().unwrap()).collect();
        assert!(!slopes.is_empty());
        assert!(slopes.iter().all(|s| (s + 0.5).abs() < 0.05), "{slopes:?}");
    }
}
