mod common;

use hopfstate::cluster::{self, Boundary, Parity};
use hopfstate::io::{self, Hypergraph};
use hopfstate::rep;
use hopfstate::zoo;
use hopfstate::{linalg, Error};
use proptest::prelude::*;

#[test]
fn algebra_files_round_trip() {
    for a in common::zoo_all() {
        let text = io::serialize_algebra(&a, None).unwrap();
        let back = io::parse_algebra(&text).unwrap().algebra;
        assert_eq!(back.name(), a.name());
        assert_eq!(back.dim(), a.dim());
        assert!(linalg::max_abs_diff(&back.data().mul, &a.data().mul) == 0.0);
        assert!(linalg::max_abs_diff(&back.data().comul, &a.data().comul) == 0.0);
        assert_eq!(io::serialize_algebra(&back, None).unwrap(), text);
    }
}

#[test]
fn irreps_survive_a_round_trip() {
    let a = zoo::by_name("S3").unwrap();
    let irreps = rep::decompose_irreps(&a, None).unwrap();
    let text = io::serialize_algebra(&a, Some(&irreps)).unwrap();
    let loaded = io::parse_algebra(&text).unwrap();
    let back = loaded.irreps.unwrap();
    assert_eq!(back.len(), 3);
    assert_eq!(rep::decompose_irreps(&loaded.algebra, Some(&back)).unwrap().len(), 3);
}

#[test]
fn group_tables_load_as_group_and_function_algebras() {
    let text = r#"{"name": "Z3", "table": [[0,1,2],[1,2,0],[2,0,1]]}"#;
    let a = io::parse_algebra(text).unwrap().algebra;
    assert_eq!(a.dim(), 3);
    assert!(a.is_cocommutative());
    let text = r#"{"table": [[0,1,2,3,4,5],[1,2,0,5,3,4],[2,0,1,4,5,3],[3,4,5,0,1,2],[4,5,3,2,0,1],[5,3,4,1,2,0]], "dual": true}"#;
    let f = io::parse_algebra(text).unwrap().algebra;
    assert!(f.is_commutative() && !f.is_cocommutative());
    let bad = r#"{"table": [[0,1],[1,1]]}"#;
    assert!(matches!(io::parse_algebra(bad), Err(Error::NotAGroup(_))));
}

#[test]
fn corrupted_algebra_files_are_rejected() {
    let a = zoo::by_name("S3").unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&io::serialize_algebra(&a, None).unwrap()).unwrap();
    v["counit"][1] = serde_json::json!([0.5, 0.0]);
    assert!(matches!(io::parse_algebra(&v.to_string()), Err(Error::AxiomViolation { .. })));

    let mut v: serde_json::Value = serde_json::from_str(&io::serialize_algebra(&a, None).unwrap()).unwrap();
    v["mul"][3][3] = serde_json::json!(2.0);
    assert!(matches!(io::parse_algebra(&v.to_string()), Err(Error::AxiomViolation { .. })));

    let mut v: serde_json::Value = serde_json::from_str(&io::serialize_algebra(&a, None).unwrap()).unwrap();
    v["mul"][0][0] = serde_json::json!(17);
    assert!(matches!(io::parse_algebra(&v.to_string()), Err(Error::DimensionMismatch(_))));

    let mut v: serde_json::Value = serde_json::from_str(&io::serialize_algebra(&a, None).unwrap()).unwrap();
    v["extra"] = serde_json::json!(1);
    assert!(matches!(io::parse_algebra(&v.to_string()), Err(Error::Parse(_))));

    assert!(matches!(io::parse_algebra("{not json"), Err(Error::Parse(_))));
}

#[test]
fn graph_files_round_trip() {
    let graphs = vec![
        cluster::build_1d_lattice(3, Boundary::Periodic).unwrap(),
        cluster::build_1d_lattice(2, Boundary::Open).unwrap(),
        cluster::build_cluster_graph(3, 1, &[(0, 3), (3, 1), (2, 3)], Some(&[2, 0, 1])).unwrap(),
    ];
    for k in graphs {
        let text = io::serialize_graph(&k).unwrap();
        let back = io::parse_graph(&text).unwrap();
        // Files number odd vertices first, so chains come back relabelled.
        assert_eq!(io::serialize_graph(&back).unwrap(), text);
        assert_eq!(back.edges().len(), k.edges().len());
        assert_eq!(back.is_lattice(), k.is_lattice());
        let odd_first = k.parities().windows(2).all(|w| !(w[0] == Parity::Even && w[1] == Parity::Odd));
        if odd_first {
            assert_eq!(back, k);
        }
    }
}

#[test]
fn graph_file_errors() {
    let r = io::parse_graph(r#"{"odd": 1, "even": 1, "edges": [[0, 3, "odd_to_even"]]}"#);
    assert!(matches!(r, Err(Error::UnknownVertex(_))));
    let r = io::parse_graph(r#"{"odd": 1, "even": 1, "edges": [[0, 0, "sideways"]]}"#);
    assert!(matches!(r, Err(Error::Parse(_))));
    let r = io::parse_graph(r#"{"odd": 2, "even": 1, "edges": [[0, 0, "odd_to_even"]], "lattice": true}"#);
    assert!(r.is_err());
}

#[test]
fn qudit_hypergraph_file() {
    let text = r#"{
        "mode": "qudit",
        "vertices": ["plus", "plus", "plus"],
        "hyperedges": [{"vertices": [0, 1, 2], "functional": {"phase_table": [0,0,0,0,0,0,0,3.141592653589793]}, "directed": false}]
    }"#;
    let Hypergraph::Qudit(g) = io::parse_hypergraph(text, None).unwrap() else { panic!("qudit mode") };
    let want = hopfstate::suite::ccz_hypergraph().state().unwrap();
    assert!(g.state().unwrap().max_diff(&want) <= 1e-15);
}

#[test]
fn hopf_hypergraph_file() {
    let a = zoo::by_name("S3").unwrap();
    let scaled: Vec<[f64; 2]> = a.haar_measure().unwrap().coeffs.iter().map(|z| [6.0 * z.re, 6.0 * z.im]).collect();
    let text = serde_json::json!({
        "mode": "hopf",
        "vertices": ["haar", "haar"],
        "hyperedges": [{"vertices": [1, 0], "functional": {"dual": scaled}}],
    })
    .to_string();
    let Hypergraph::Hopf(g) = io::parse_hypergraph(&text, Some(&a)).unwrap() else { panic!("hopf mode") };
    let want = hopfstate::suite::edge_hypergraph(&a).unwrap().state(&a).unwrap();
    assert!(g.state(&a).unwrap().max_diff(&want) <= 1e-12);

    let doubled = serde_json::json!({
        "mode": "hopf",
        "vertices": ["trivial", "unit"],
        "hyperedges": [{"vertices": [0, 1], "functional": {"dual": "counit"}, "multiplicity": 2}],
    })
    .to_string();
    let Hypergraph::Hopf(g) = io::parse_hypergraph(&doubled, Some(&a)).unwrap() else { panic!("hopf mode") };
    assert_eq!(g.edges.len(), 2);
    assert_eq!(g.ordering[0].len(), 3);
}

#[test]
fn hypergraph_file_errors() {
    let a = zoo::by_name("Z2").unwrap();
    let r = io::parse_hypergraph(r#"{"mode": "hopf", "vertices": ["unit"], "hyperedges": []}"#, None);
    assert!(matches!(r, Err(Error::Parse(_))));
    let r = io::parse_hypergraph(r#"{"mode": "hopf", "vertices": ["bogus"], "hyperedges": []}"#, Some(&a));
    assert!(matches!(r, Err(Error::Parse(_))));
    let r = io::parse_hypergraph(
        r#"{"mode": "qudit", "vertices": ["zero"], "hyperedges": [{"vertices": [0], "functional": {"dual": "haar"}}]}"#,
        None,
    );
    assert!(matches!(r, Err(Error::Parse(_))));
    let r = io::parse_hypergraph(
        r#"{"mode": "hopf", "vertices": ["unit", "unit"], "hyperedges": [{"vertices": [0, 1], "functional": {"dual": "delta:9"}}]}"#,
        Some(&a),
    );
    assert!(matches!(r, Err(Error::Parse(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_graphs_round_trip(edges in prop::collection::vec((0usize..3, 0usize..3, any::<bool>()), 1..6)) {
        let mut directed = Vec::new();
        for (o, e, fwd) in edges {
            let pair = if fwd { (o, 3 + e) } else { (3 + e, o) };
            if !directed.iter().any(|&(x, y)| (x, y) == pair || (y, x) == pair) {
                directed.push(pair);
            }
        }
        let k = cluster::build_cluster_graph(3, 3, &directed, None).unwrap();
        let back = io::parse_graph(&io::serialize_graph(&k).unwrap()).unwrap();
        prop_assert_eq!(back, k);
    }
}
