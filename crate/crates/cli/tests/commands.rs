use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdposet")).current_dir(root()).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_summary_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("twocyc.json");
    let o = run(&["build", "-g", "corpus/twocyc.json", "--base", "s", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "elements=4 maxima=2 ranks=[2, 2]\n");
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["elements"].as_array().unwrap().len(), 4);
    assert_eq!(doc["basepoint"], "s");

    let dot = dir.path().join("twocyc.dot");
    let o = run(&["build", "-g", "corpus/twocyc.json", "--format", "dot", "-o", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph qd {"));

    let o = run(&["build", "-g", "corpus/path2.json"]);
    assert_eq!(stdout(&o), "elements=1 maxima=1 ranks=[1]\n");
    let o = run(&["build", "-g", "corpus/four_cycle.edges"]);
    assert_eq!(stdout(&o), "elements=8 maxima=4 ranks=[4, 4]\n");
}

#[test]
fn polarization_file() {
    let dir = tempfile::tempdir().unwrap();
    let mu = dir.path().join("mu.json");
    std::fs::write(&mu, r#"{"s": "1/2", "t": "-1/2"}"#).unwrap();
    let o = run(&["build", "-g", "corpus/twocyc.json", "--polarization", mu.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("elements=4 "));
    std::fs::write(&mu, r#"{"s": "1/2"}"#).unwrap();
    let o = run(&["build", "-g", "corpus/twocyc.json", "--polarization", mu.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["build", "-g", "fixtures/malformed.json"]).status.code(), Some(2));
    assert_eq!(run(&["build", "-g", "fixtures/missing.json"]).status.code(), Some(2));
    assert_eq!(run(&["build", "-g", "fixtures/disconnected.json"]).status.code(), Some(3));
    assert_eq!(run(&["torelli", "-g", "corpus/triangle.json", "-h2", "fixtures/missing.json"]).status.code(), Some(2));
    let o = run(&["tropical", "-g", "fixtures/bridged_metric.json", "-h2", "corpus/m_twocyc_3_5.json"]);
    assert_eq!(o.status.code(), Some(5));
    assert_eq!(run(&["verify", "fixtures/empty_corpus"]).status.code(), Some(2));
    let o = run(&["verify", "fixtures/corrupt_corpus"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("twocyc  cache      FAIL"));
    assert!(String::from_utf8_lossy(&o.stderr).contains(r#""falsifier":"cache""#));
}

#[test]
fn edge_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qdposet"))
        .current_dir(root())
        .env("QDPOSET_MAX_EDGES", "3")
        .args(["build", "-g", "corpus/dumb.json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn torelli_verdicts() {
    let o = run(&["torelli", "-g", "corpus/triangle_pendant_x.json", "-h2", "corpus/triangle_pendant_y.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["poset_isomorphic"].as_bool(), v["agree"].as_bool()), (Some(true), Some(true)));
    let o = run(&["torelli", "-g", "corpus/triangle.json", "--graph2", "corpus/theta.json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["poset_isomorphic"].as_bool(), v["agree"].as_bool()), (Some(false), Some(true)));
}

#[test]
fn iso_accepts_graphs_and_posets() {
    let o = run(&["iso", "-g", "corpus/twocyc.poset.json", "-h2", "corpus/m_twocyc_3_4.json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["isomorphic"], true);
    let o = run(&["iso", "-g", "corpus/whitney_a.json", "-h2", "corpus/whitney_b.json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["isomorphic"], false);
}

#[test]
fn tropical_outputs() {
    let o = run(&["tropical", "-g", "corpus/m_twocyc_3_5.json"]);
    assert_eq!(stdout(&o), "volume=8 fvector=[2, 2]\n");
    let o = run(&["tropical", "-g", "corpus/m_theta_1_1_1.json"]);
    assert_eq!(stdout(&o), "volume=3 fvector=[3, 6, 3]\n");
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("tree.json");
    std::fs::write(&tree, r#"{"vertices":[{"id":"u"},{"id":"v"}],"edges":[{"id":"b","ends":["u","v"],"length":"7/2"}]}"#)
        .unwrap();
    let o = run(&["tropical", "-g", tree.to_str().unwrap()]);
    assert_eq!(stdout(&o), "volume=1 fvector=[1]\n");
    let o = run(&["tropical", "-g", "corpus/m_twocyc_3_5.json", "-h2", "corpus/m_twocyc_5_3.json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["poset_isomorphic"].as_bool(), v["components_match"].as_bool()), (Some(true), Some(true)));
    let o = run(&["tropical", "-g", "corpus/twocyc.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_recomputes_cache() {
    let o = run(&["oracle", "-g", "corpus/dumb.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("cache=match\n"));
    let o = run(&["oracle", "-g", "fixtures/corrupt_corpus/twocyc.json"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).ends_with("cache=differs\n"));
}

#[test]
fn verify_is_byte_stable_and_seeded() {
    let a = run(&["verify", "corpus"]);
    let b = run(&["verify", "corpus"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "corpus", "--seed", "7"]);
    assert!(stdout(&c).contains("seed 0x7"));
}
