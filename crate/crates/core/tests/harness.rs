use fracwl::harness::*;
use fracwl::Error;

fn config(dir: &std::path::Path, ids: &[&str]) -> HarnessConfig {
    HarnessConfig {
        experiments: Some(ids.iter().map(|s| s.to_string()).collect()),
        out_dir: dir.to_path_buf(),
        ..HarnessConfig::default()
    }
}

const CHEAP: [&str; 4] = [
    "triangle-wl1-wl2-separation",
    "matching-ratio-cycle-s2",
    "fano-freeness",
    "permutation-robustness",
];

#[test]
fn reports_are_byte_identical_across_runs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_all(&config(a.path(), &CHEAP)).unwrap();
    run_all(&config(b.path(), &CHEAP)).unwrap();
    for id in CHEAP {
        let name = format!("{id}.json");
        let x = std::fs::read(a.path().join(&name)).unwrap();
        let y = std::fs::read(b.path().join(&name)).unwrap();
        assert_eq!(x, y, "{id}");
    }
}

#[test]
fn parallel_run_matches_sequential() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let seq = run_all(&config(a.path(), &CHEAP)).unwrap();
    let par = run_all(&HarnessConfig {
        parallel: true,
        ..config(b.path(), &CHEAP)
    })
    .unwrap();
    let json = |s: &RunSummary| {
        s.reports
            .iter()
            .map(ExperimentReport::to_json)
            .collect::<Vec<_>>()
    };
    assert_eq!(json(&seq), json(&par));
    assert!(par.all_passed());
}

#[test]
fn reports_carry_seed_and_exact_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = HarnessConfig {
        seed: 7,
        ..config(dir.path(), &["fano-freeness"])
    };
    let summary = run_all(&cfg).unwrap();
    let report = &summary.reports[0];
    assert!(report.passed);
    let v: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("fano-freeness.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(v["seed"], 7);
    let nu = v["computed"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "nu_f_fano")
        .unwrap();
    assert_eq!(nu["value"], "7/3");
    assert!(v["expected"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| ["published", "derived", "trivial"].contains(&e["source"].as_str().unwrap())));
}

#[test]
fn empty_selection_yields_empty_summary() {
    let dir = tempfile::tempdir().unwrap();
    let summary = run_all(&config(dir.path(), &[])).unwrap();
    assert!(summary.reports.is_empty());
    assert!(summary.all_passed());
    let csv = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_eq!(csv, "experiment_id,passed,runtime_ms,key_values\n");
}

#[test]
fn unknown_ids_are_rejected() {
    assert!(matches!(
        run_experiment("unknown", &HarnessConfig::default()),
        Err(Error::UnknownExperiment(_))
    ));
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(
        run_all(&config(dir.path(), &["fano-freeness", "unknown"])),
        Err(Error::UnknownExperiment(_))
    ));
}

#[test]
fn tuple_cap_marks_experiment_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = HarnessConfig {
        max_tuples: 10,
        ..config(dir.path(), &["tensor-square-wl2"])
    };
    let summary = run_all(&cfg).unwrap();
    assert_eq!(summary.skipped().len(), 1);
    assert!(summary.failed().is_empty());
    let r = &summary.reports[0];
    assert!(!r.passed);
    assert!(r.skipped.as_ref().unwrap().contains("resource limit"));
    // Partial results computed before the cap survive.
    assert!(r.computed_value("vertices").is_some());
}

#[test]
fn node_budget_marks_experiment_skipped() {
    let cfg = HarnessConfig {
        node_budget: 1,
        ..HarnessConfig::default()
    };
    let r = run_experiment("ratio-shrikhande-rook", &cfg).unwrap();
    assert!(r.skipped.is_some());
}

#[test]
fn config_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.cfg");
    std::fs::write(
        &path,
        "# caps\nmax_tuples = 1000\nnode_budget = 50\nexperiments = fano-freeness, permutation-robustness\nseed = 3\nparallel = true\n",
    )
    .unwrap();
    let cfg = HarnessConfig::load(&path).unwrap();
    assert_eq!(cfg.max_tuples, 1000);
    assert_eq!(cfg.node_budget, 50);
    assert_eq!(cfg.seed, 3);
    assert!(cfg.parallel);
    assert_eq!(
        cfg.experiments,
        Some(vec![
            "fano-freeness".to_string(),
            "permutation-robustness".to_string()
        ])
    );
    std::fs::write(&path, "node_budget = -1\n").unwrap();
    assert!(matches!(
        HarnessConfig::load(&path),
        Err(Error::Parse { line: 1, .. })
    ));
}

#[test]
fn registry_is_complete() {
    let ids = experiment_ids();
    for prefix in [
        "ratio-shrikhande-rook",
        "triangle-wl1-wl2-separation",
        "matching-ratio-cycle-s",
        "paley-domination-q",
        "vertex-cover-matched-cliques-s",
        "htw-classification",
        "tensor-square-wl2",
        "k3-decomposition-products",
        "uncovered-edges-accounting",
        "fano-freeness",
        "lp-reduction-incidence-pairs",
        "fractional-iso-cross-validation",
        "permutation-robustness",
    ] {
        assert!(ids.iter().any(|id| id.starts_with(prefix)), "{prefix}");
    }
    for e in registry() {
        assert!(!e.claim.is_empty(), "{}", e.id);
    }
}
