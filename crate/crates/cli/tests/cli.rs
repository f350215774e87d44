use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfstate")).args(args).env_remove("HOPFSTATE_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn summary(o: &Output) -> serde_json::Value {
    let text = stdout(o);
    let json = text.split("--- summary ---\n").nth(1).expect("summary block");
    serde_json::from_str(json.trim()).unwrap()
}

#[test]
fn verify_passes_on_zoo_algebra() {
    let o = run(&["verify", "--zoo", "S3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("algebra = C[S3]"));
    assert!(text.contains("suites = axioms,haar,reps"));
    assert!(text.contains("seed = 7"));
    assert!(text.contains("status = pass"));
    let s = summary(&o);
    assert_eq!(s["exit_code"], 0);
    assert!(s["max_residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn every_subcommand_runs() {
    for sub in ["cluster", "lcp", "symmetry", "qd", "tn", "fusion", "hypergraph"] {
        let o = run(&[sub, "--zoo", "Z3"]);
        assert_eq!(o.status.code(), Some(0), "{sub}: {}", stdout(&o));
        assert_eq!(summary(&o)["suites"][0], sub);
    }
}

#[test]
fn chain_option_is_reported() {
    let o = run(&["lcp", "--zoo", "Z2", "--chain", "L=3,open"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("chain = L=3,open"));
}

#[test]
fn runs_are_deterministic_for_a_seed() {
    let a = run(&["verify", "--zoo", "F(S3)", "--suite", "lcp,symmetry", "--chain", "2,open", "--seed", "42"]);
    let b = run(&["verify", "--zoo", "F(S3)", "--suite", "lcp,symmetry", "--chain", "2,open", "--seed", "42"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn corrupted_algebra_file_exits_with_axiom_code() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("z2.json");
    let text = hopfstate::io::serialize_algebra(&hopfstate::zoo::by_name("Z2").unwrap(), None).unwrap();
    std::fs::write(&good, &text).unwrap();
    let o = run(&["verify", "--file", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["counit"][1] = serde_json::json!([-1.0, 0.0]);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = run(&["verify", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("axiom"));
}

#[test]
fn parse_errors_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("junk.json");
    std::fs::write(&p, "{ nope").unwrap();
    assert_eq!(run(&["verify", "--file", p.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--file", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--zoo", "Q8"]).status.code(), Some(2));
    assert_eq!(run(&["lcp", "--chain", "L=x"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--budget", "0"]).status.code(), Some(2));
}

#[test]
fn budget_overflow_exits_with_code_4() {
    let o = run(&["qd", "--zoo", "S3", "--chain", "3,periodic", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(&["tn", "--zoo", "S3", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(4));
    let o = Command::new(env!("CARGO_BIN_EXE_hopfstate"))
        .args(["lcp", "--zoo", "S3"])
        .env("HOPFSTATE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn residual_failures_exit_with_code_5() {
    let o = run(&["symmetry", "--zoo", "F(S3)", "--chain", "2,periodic"]);
    assert_eq!(o.status.code(), Some(5));
    let s = summary(&o);
    let names: Vec<&str> = s["failures"].as_array().unwrap().iter().map(|f| f[0].as_str().unwrap()).collect();
    assert!(names.iter().all(|n| n.starts_with("symmetry.[F_g, B")));
    assert!(stdout(&o).contains("status = fail"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("report.txt");
    let o = run(&["fusion", "--zoo", "S3", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&p).unwrap(), stdout(&o));
    assert!(stdout(&o).contains("fusion.rep2 x rep2 = "));
}

#[test]
fn graph_and_hypergraph_files_are_used() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    std::fs::write(&g, r#"{"odd": 2, "even": 1, "edges": [[0, 0, "odd_to_even"], [1, 0, "even_to_odd"]]}"#).unwrap();
    let o = run(&["tn", "--zoo", "S3", "--graph", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("g.json network - circuit"));
    let o = run(&["cluster", "--zoo", "F(S3)", "--graph", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let h = dir.path().join("h.json");
    std::fs::write(&h, r#"{"mode": "hopf", "vertices": ["trivial", "unit"], "hyperedges": [{"vertices": [0, 1], "functional": {"dual": "haar"}}]}"#).unwrap();
    let o = run(&["hypergraph", "--zoo", "S3", "--hypergraph", h.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("hypergraph.dims = [6, 6]"));
}

#[test]
fn group_table_files_load() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("z2.json");
    std::fs::write(&p, r#"{"name": "Z2", "table": [[0, 1], [1, 0]], "dual": true}"#).unwrap();
    let o = run(&["verify", "--file", p.to_str().unwrap(), "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
