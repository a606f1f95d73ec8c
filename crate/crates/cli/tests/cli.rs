use std::process::{Command, Output};

fn fracwl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracwl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn wl_reports_equivalence_through_exit_code() {
    let o = fracwl(&["wl", "shrikhande", "rook4", "-k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("EQUIVALENT\n"));
    assert!(stdout(&o).contains("palette_sizes: "));

    let o = fracwl(&["wl", "shrikhande", "rook4", "-k", "1"]);
    assert_eq!(o.status.code(), Some(0));

    let o = fracwl(&["wl", "cycle(6)", "complete_bipartite(3,3)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("DISTINGUISHED\n"));
}

#[test]
fn gen_writes_files_that_wl_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = fracwl(&["--out", out, "gen", "cycle(6)", "matched_cliques(3)"]);
    assert!(o.status.success(), "{o:?}");
    let c6 = dir.path().join("cycle_6.txt");
    let text = std::fs::read_to_string(&c6).unwrap();
    assert!(text.starts_with("6 6\n"));

    let mc = dir.path().join("matched_cliques_3.txt");
    let o = fracwl(&["wl", c6.to_str().unwrap(), mc.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let o = fracwl(&["--out", out, "gen", "--format", "dot", "shrikhande"]);
    assert!(o.status.success());
    let dot = std::fs::read_to_string(dir.path().join("shrikhande.dot")).unwrap();
    assert!(dot.contains("graph"));
}

#[test]
fn gen_rejects_unknown_family() {
    let o = fracwl(&["gen", "moebius(8)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lp_prints_exact_value() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.lp");
    std::fs::write(
        &path,
        "max: 1 1 1\nrow: 1 0 1 <= 1\nrow: 1 1 0 <= 1\nrow: 0 1 1 <= 1\n",
    )
    .unwrap();
    let o = fracwl(&["lp", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3/2");

    std::fs::write(&path, "max: 1\nrow: 1 <= 1\nrow: -1 <= -2\n").unwrap();
    assert_eq!(
        stdout(&fracwl(&["lp", path.to_str().unwrap()])).trim(),
        "infeasible"
    );

    std::fs::write(&path, "max: 1 1\nrow: 1 <= 1\n").unwrap();
    assert_eq!(
        fracwl(&["lp", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn pack_emits_json() {
    let o = fracwl(&[
        "pack",
        "--pattern",
        "complete(3)",
        "--host",
        "shrikhande",
        "--mode",
        "edge",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value_num"], 16);
    assert_eq!(v["value_den"], 1);
    assert!(v["witness"].is_null());

    let o = fracwl(&[
        "pack",
        "--pattern",
        "complete(3)",
        "--host",
        "rook4",
        "--mode",
        "edge",
        "--integral",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value_num"], 8);
    let witness = v["witness"].as_array().unwrap();
    assert_eq!(witness.len(), 8);
    let mut edges: Vec<(u64, u64)> = witness
        .iter()
        .flat_map(|t| t.as_array().unwrap().iter())
        .map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap()))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    assert_eq!(edges.len(), 24);

    let o = fracwl(&["pack", "--pattern", "complete(2)", "--host", "cycle(5)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        (v["value_num"].as_i64(), v["value_den"].as_i64()),
        (Some(5), Some(2))
    );
}

#[test]
fn exp_run_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = fracwl(&["--out", out, "exp", "run", "triangle-wl1-wl2-separation"]);
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("triangle-wl1-wl2-separation: PASS"));
    let report =
        std::fs::read_to_string(dir.path().join("triangle-wl1-wl2-separation.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["passed"], true);
    let csv = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert!(csv.starts_with("experiment_id,passed,runtime_ms,key_values\n"));
    assert!(csv.contains("triangle-wl1-wl2-separation,true,"));
}

#[test]
fn exp_config_controls_selection_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("out");

    std::fs::write(&cfg, "experiments =\n").unwrap();
    let o = fracwl(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "exp",
        "run",
        "all",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 run"));

    std::fs::write(&cfg, "max_tuples = 10\nexperiments = tensor-square-wl2\n").unwrap();
    let o = fracwl(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "exp",
        "run",
        "all",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tensor-square-wl2: SKIPPED"));
    let csv = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert!(csv.contains("tensor-square-wl2,\"skipped: "));

    std::fs::write(&cfg, "max_tuples = 0\n").unwrap();
    let o = fracwl(&["--config", cfg.to_str().unwrap(), "exp", "run", "all"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exp_unknown_id_fails() {
    let o = fracwl(&["exp", "run", "unknown"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fracwl(&["exp", "list"]);
    assert!(stdout(&o).lines().count() >= 13);
}
