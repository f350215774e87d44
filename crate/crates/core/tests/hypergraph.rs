mod common;

use std::f64::consts::PI;

use hopfstate::cluster::{self, OddNormalization, Parity};
use hopfstate::hypergraph::{EdgeFunctional, HopfHyperedge, HopfHypergraph, QuditHyperedge, QuditHypergraph, Slot};
use hopfstate::lattice::product_values;
use hopfstate::suite;
use hopfstate::zoo;
use hopfstate::{Error, C64};
use proptest::prelude::*;

fn plus(d: usize) -> Vec<C64> {
    vec![C64::new(1.0 / (d as f64).sqrt(), 0.0); d]
}

fn cz_edge(u: usize, v: usize) -> QuditHyperedge {
    QuditHyperedge { vertices: vec![u, v], theta: vec![0.0, 0.0, 0.0, PI], directed: false, multiplicity: 1 }
}

#[test]
fn ccz_matches_hand_oracle() {
    let psi = suite::ccz_hypergraph().state().unwrap();
    let s = 1.0 / 8f64.sqrt();
    let oracle = [s, s, s, s, s, s, s, -s];
    for (z, w) in psi.amps().iter().zip(oracle) {
        assert!((z - C64::new(w, 0.0)).norm() <= 1e-15);
    }
}

#[test]
fn triangle_graph_state() {
    let g = QuditHypergraph { dims: vec![2; 3], initial: vec![plus(2); 3], edges: vec![cz_edge(0, 1), cz_edge(1, 2), cz_edge(0, 2)] };
    let psi = g.state().unwrap();
    for (i, z) in psi.amps().iter().enumerate() {
        let (x0, x1, x2) = (i >> 2 & 1, i >> 1 & 1, i & 1);
        let sign = if (x0 * x1 + x1 * x2 + x0 * x2) % 2 == 0 { 1.0 } else { -1.0 };
        assert!((z - C64::new(sign / 8f64.sqrt(), 0.0)).norm() <= 1e-15);
    }
}

#[test]
fn multiplicity_repeats_the_gate() {
    let theta: Vec<f64> = (0..9).map(|i| 2.0 * PI * ((i / 3) * (i % 3)) as f64 / 3.0).collect();
    let once = QuditHyperedge { vertices: vec![0, 1], theta: theta.clone(), directed: false, multiplicity: 1 };
    let twice = QuditHyperedge { multiplicity: 2, ..once.clone() };
    let a = QuditHypergraph { dims: vec![3, 3], initial: vec![plus(3); 2], edges: vec![once.clone(), once] };
    let b = QuditHypergraph { dims: vec![3, 3], initial: vec![plus(3); 2], edges: vec![twice] };
    assert!(a.state().unwrap().max_diff(&b.state().unwrap()) <= 1e-14);
    let three = QuditHypergraph { edges: vec![QuditHyperedge { multiplicity: 3, vertices: vec![0, 1], theta, directed: false }], ..b };
    let want = hopfstate::state::StateVector::product(&[plus(3), plus(3)]).unwrap();
    assert!(three.state().unwrap().max_diff(&want) <= 1e-14);
}

#[test]
fn qudit_validation_errors() {
    let base = QuditHypergraph { dims: vec![2, 3], initial: vec![plus(2), plus(3)], edges: vec![] };
    let mut g = base.clone();
    g.edges.push(QuditHyperedge { vertices: vec![0, 1], theta: vec![0.0; 5], directed: true, multiplicity: 1 });
    assert!(matches!(g.state(), Err(Error::ArityMismatch(_))));
    let mut g = base.clone();
    g.edges.push(QuditHyperedge { vertices: vec![0, 4], theta: vec![0.0; 4], directed: true, multiplicity: 1 });
    assert!(matches!(g.state(), Err(Error::UnknownVertex(_))));
    let mut g = base.clone();
    g.edges.push(QuditHyperedge { vertices: vec![0, 1], theta: vec![0.0; 6], directed: false, multiplicity: 1 });
    assert!(matches!(g.state(), Err(Error::AsymmetricFunctional(_))));
    let g = QuditHypergraph {
        dims: vec![2, 2],
        initial: vec![plus(2); 2],
        edges: vec![QuditHyperedge { vertices: vec![0, 1], theta: vec![0.0, 1.0, 0.0, 0.0], directed: false, multiplicity: 1 }],
    };
    assert!(matches!(g.state(), Err(Error::AsymmetricFunctional(_))));
    let mut g = base;
    g.edges.push(QuditHyperedge { vertices: vec![1, 1], theta: vec![0.0; 9], directed: true, multiplicity: 1 });
    assert!(matches!(g.state(), Err(Error::ArityMismatch(_))));
}

#[test]
fn hopf_edge_equals_cluster_edge() {
    for a in common::zoo_all() {
        let k = cluster::ClusterGraph::new(vec![Parity::Odd, Parity::Even], &[(1, 0)]).unwrap();
        let want = cluster::cluster_state(&a, &k, OddNormalization::Haar).unwrap();
        let got = suite::edge_hypergraph(&a).unwrap().state(&a).unwrap();
        assert!(got.max_diff(&want) <= 1e-12, "{}", a.name());
    }
}

#[test]
fn explicit_table_equals_product_functional() {
    let a = zoo::by_name("S3").unwrap();
    let mut g = suite::edge_hypergraph(&a).unwrap();
    let direct = g.state(&a).unwrap();
    if let EdgeFunctional::Product(phi) = &g.edges[0].functional {
        let t = product_values(&a, phi, 2);
        g.edges[0].functional = EdgeFunctional::Table(t);
    }
    assert!(g.state(&a).unwrap().max_diff(&direct) <= 1e-12);
    g.ordering = vec![vec![Slot::Own, Slot::Edge(0)], vec![Slot::Edge(0), Slot::Own]];
    assert!(g.state(&a).unwrap().max_diff(&direct) <= 1e-12);
}

#[test]
fn hopf_validation_errors() {
    let a = zoo::by_name("S3").unwrap();
    let lam = a.haar_integral().unwrap().clone();
    let mut t = vec![C64::new(0.0, 0.0); 36];
    t[1] = C64::new(1.0, 0.0);
    let asym = HopfHypergraph::new(
        vec![lam.clone(), lam.clone()],
        vec![HopfHyperedge { vertices: vec![0, 1], functional: EdgeFunctional::Table(t), directed: false }],
    );
    assert!(matches!(asym.state(&a), Err(Error::AsymmetricFunctional(_))));
    let short = HopfHypergraph::new(
        vec![lam.clone(), lam.clone()],
        vec![HopfHyperedge { vertices: vec![0, 1], functional: EdgeFunctional::Table(vec![C64::new(0.0, 0.0); 6]), directed: true }],
    );
    assert!(matches!(short.state(&a), Err(Error::ArityMismatch(_))));
    let mut bad_order = suite::edge_hypergraph(&a).unwrap();
    bad_order.ordering[0] = vec![Slot::Own];
    assert!(matches!(bad_order.state(&a), Err(Error::ArityMismatch(_))));
}

#[test]
fn hopf_hyperedge_of_arity_three() {
    // A counit functional decouples the vertices.
    let a = zoo::by_name("Z3").unwrap();
    let lam = a.haar_integral().unwrap().clone();
    let g = HopfHypergraph::new(
        vec![lam.clone(); 3],
        vec![HopfHyperedge { vertices: vec![0, 1, 2], functional: EdgeFunctional::Product(a.counit_dual()), directed: false }],
    );
    let want = hopfstate::state::StateVector::product(&vec![lam.coeffs.clone(); 3]).unwrap();
    assert!(g.state(&a).unwrap().max_diff(&want) <= 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn diagonal_phases_preserve_norm(theta in prop::collection::vec(0.0f64..6.3, 8), m in 1u32..4) {
        let g = QuditHypergraph {
            dims: vec![2; 3],
            initial: vec![plus(2); 3],
            edges: vec![QuditHyperedge { vertices: vec![2, 0, 1], theta, directed: true, multiplicity: m }],
        };
        let psi = g.state().unwrap();
        prop_assert!((psi.norm_sqr() - 1.0).abs() <= 1e-12);
        prop_assert!(psi.amps().iter().all(|z| (z.norm() - 1.0 / 8f64.sqrt()).abs() <= 1e-12));
    }
}
