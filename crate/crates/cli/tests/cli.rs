use std::process::{Command, Output};

use serde_json::Value;

fn orbifold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbifold"))
        .args(args)
        .env_remove("ORBIFOLD_TOLERANCE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(csv: &str) -> usize {
    csv.lines().skip(1).filter(|l| !l.is_empty()).count()
}

#[test]
fn classify_tables() {
    let pos = orbifold(&["classify", "--curvature", "pos", "--format", "csv"]);
    assert_eq!(pos.status.code(), Some(0));
    assert_eq!(data_rows(&stdout(&pos)), 13);
    let flat = orbifold(&["classify", "--curvature", "flat", "--format", "csv"]);
    assert_eq!(data_rows(&stdout(&flat)), 4);
    let all: Value = serde_json::from_str(&stdout(&orbifold(&["classify"]))).unwrap();
    assert_eq!(all.as_array().unwrap().len(), 17);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        orbifold(&["classify", "--curvature", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        orbifold(&["pipeline", "--case", "99"]).status.code(),
        Some(2)
    );
    assert_eq!(
        orbifold(&["pipeline", "--angles", "1/2", "1/7", "1/3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        orbifold(&["pipeline", "--case", "4", "--param", "r=3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(orbifold(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn untileable_cases_exit_three() {
    for id in ["2", "3", "9", "10"] {
        let o = orbifold(&["pipeline", "--case", id]);
        assert_eq!(o.status.code(), Some(3), "case {id}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("no constant-curvature tiling"));
    }
    assert_eq!(
        orbifold(&["pipeline", "--case", "4"]).status.code(),
        Some(3)
    );
}

#[test]
fn pipeline_case_six() {
    let o = orbifold(&[
        "pipeline", "--case", "6", "--n-max", "20", "--m", "0", "--seed", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["report"]["verdict"], "elliptic-consistent");
    assert_eq!(v["result"]["tile_count"], 48);
    assert_eq!(v["run"]["seeds"], 10);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = orbifold(&[
            "pipeline",
            "--case",
            "15",
            "--n-max",
            "4",
            "--seeds",
            "3",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "case = 13\nseed = 5\nn_max = 3\nseeds = 2\nm = -1\n").unwrap();
    let o = orbifold(&["--config", cfg.to_str().unwrap(), "pipeline", "--seed", "7"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["run"]["seed"], 7);
    assert_eq!(v["run"]["n_max"], 3);
    assert_eq!(v["run"]["m"], -1);
    assert_eq!(v["result"]["report"]["lambda"], 2);
    std::fs::write(&cfg, "colour = 3\n").unwrap();
    assert_eq!(
        orbifold(&["--config", cfg.to_str().unwrap(), "classify"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_orbifold"))
        .args(["geodesics", "--case", "1", "--n-max", "1"])
        .env("ORBIFOLD_TOLERANCE", "1e-7")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["run"]["tolerance"], 1e-7);
    let o = orbifold(&[
        "geodesics",
        "--case",
        "1",
        "--n-max",
        "1",
        "--tolerance",
        "1e-8",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["run"]["tolerance"], 1e-8);
}

#[test]
fn angles_and_params_select_cases() {
    let o = orbifold(&[
        "pipeline", "--angles", "1/2", "1/3", "1/4", "--n-max", "2", "--seeds", "1",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["case_id"], 13);
    let o = orbifold(&["tile", "--case", "11", "--param", "alpha=3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["group_order"], 12);
    let o = orbifold(&[
        "tile", "--angles", "1/3", "1/3", "1/3", "--n-max", "2", "--format", "csv",
    ]);
    assert_eq!(data_rows(&stdout(&o)), 25);
}

#[test]
fn geodesics_and_plot_outputs() {
    let o = orbifold(&[
        "geodesics",
        "--case",
        "8",
        "--n-max",
        "0",
        "--format",
        "csv",
    ]);
    assert_eq!(data_rows(&stdout(&o)), 2);
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("plot.json");
    let o = orbifold(&[
        "pipeline",
        "--case",
        "17",
        "--n-max",
        "5",
        "--seeds",
        "1",
        "--format",
        "csv",
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(
        stdout(&o).lines().next(),
        Some("n,cumulative,bound,satisfied")
    );
    let series: Value = serde_json::from_str(&std::fs::read_to_string(&plot).unwrap()).unwrap();
    assert_eq!(series[1]["name"], "bound");
    assert_eq!(series[1]["y"][5], 4 * 121);
}
