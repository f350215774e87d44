mod common;

use hopfstate::cluster::{self, Boundary, OddNormalization};
use hopfstate::rep;
use hopfstate::tn::{self, AntipodeEncoding, Leg, LegRef, NodeKind, TensorNetwork, TensorNode};
use hopfstate::zoo;
use hopfstate::{Error, C64};
use proptest::prelude::*;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn matrix_node(label: &str, r: usize, k: usize, data: &[f64], phys: (bool, bool)) -> TensorNode {
    let leg = |p: bool, d: usize| if p { Leg::physical(d) } else { Leg::virt(d) };
    TensorNode::new(NodeKind::Element, label, vec![leg(phys.0, r), leg(phys.1, k)], data.iter().map(|&x| c(x)).collect()).unwrap()
}

#[test]
fn contraction_of_a_matrix_product() {
    let mut net = TensorNetwork::new();
    let a = net.add(matrix_node("a", 2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], (true, false)));
    let b = net.add(matrix_node("b", 3, 2, &[1.0, 0.0, -1.0, 2.0, 0.5, 1.0], (false, true)));
    net.bond(LegRef { node: a, slot: 1 }, LegRef { node: b, slot: 0 }).unwrap();
    net.expose(LegRef { node: b, slot: 1 }).unwrap();
    net.expose(LegRef { node: a, slot: 0 }).unwrap();
    let out = net.contract(None).unwrap();
    // (AB)^T, since open legs are listed as [b.col, a.row].
    let ab = [[1.0 - 2.0 + 1.5, 4.0 + 3.0], [4.0 - 5.0 + 3.0, 10.0 + 6.0]];
    assert_eq!(out.dims(), &[2, 2]);
    for i in 0..2 {
        for j in 0..2 {
            assert!((out.get(&[j, i]) - c(ab[i][j])).norm() < 1e-14);
        }
    }
}

#[test]
fn self_bond_is_a_trace() {
    let mut net = TensorNetwork::new();
    let n = net.add(matrix_node("m", 3, 3, &[1.0, 9.0, 9.0, 9.0, 2.0, 9.0, 9.0, 9.0, 3.5], (false, false)));
    net.bond(LegRef { node: n, slot: 0 }, LegRef { node: n, slot: 1 }).unwrap();
    let out = net.contract(None).unwrap();
    assert!((out.amps()[0] - c(6.5)).norm() < 1e-14);
}

#[test]
fn disconnected_pieces_give_outer_products() {
    let mut net = TensorNetwork::new();
    let x = TensorNode::new(NodeKind::Element, "x", vec![Leg::physical(2)], vec![c(1.0), c(2.0)]).unwrap();
    let y = TensorNode::new(NodeKind::Element, "y", vec![Leg::physical(2)], vec![c(3.0), c(-1.0)]).unwrap();
    let (i, j) = (net.add(x), net.add(y));
    net.expose(LegRef { node: i, slot: 0 }).unwrap();
    net.expose(LegRef { node: j, slot: 0 }).unwrap();
    let out = net.contract(None).unwrap();
    let want = [3.0, -1.0, 6.0, -2.0];
    for (z, w) in out.amps().iter().zip(want) {
        assert!((z - c(w)).norm() < 1e-14);
    }
}

#[test]
fn malformed_networks_are_rejected() {
    let mut net = TensorNetwork::new();
    let a = net.add(matrix_node("a", 2, 3, &[0.0; 6], (false, false)));
    let b = net.add(matrix_node("b", 2, 2, &[0.0; 4], (false, false)));
    let r = net.bond(LegRef { node: a, slot: 1 }, LegRef { node: b, slot: 0 });
    assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    net.bond(LegRef { node: a, slot: 0 }, LegRef { node: b, slot: 0 }).unwrap();
    let r = net.bond(LegRef { node: a, slot: 0 }, LegRef { node: b, slot: 1 });
    assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    assert!(net.contract(None).is_err());
    let rep = TensorNode::new(NodeKind::RepMatrix, "r", vec![Leg::rep(2)], vec![c(0.0); 2]).unwrap();
    let r_id = net.add(rep);
    let r = net.bond(LegRef { node: b, slot: 1 }, LegRef { node: r_id, slot: 0 });
    assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    let r = TensorNode::new(NodeKind::Unit, "u", vec![Leg::virt(3)], vec![c(0.0); 2]);
    assert!(matches!(r, Err(Error::DimensionMismatch(_))));
}

#[test]
fn structure_tensors_satisfy_the_axioms() {
    for a in common::zoo_all() {
        let r = tn::structure_axioms(&a).unwrap();
        assert_eq!(r.entries.len(), 9);
        assert!(r.max() <= 1e-10, "{}: {:?}", a.name(), r.failures(1e-10));
    }
}

#[test]
fn odd_tensor_is_cyclic() {
    for a in common::zoo_small() {
        assert!(tn::odd_cyclicity_residual(&a, 4).unwrap() <= 1e-10, "{}", a.name());
    }
}

#[test]
fn rewrite_rules_hold() {
    for name in ["Z2", "Z3", "S3", "F(S3)", "D4", "F(D4)"] {
        let a = zoo::by_name(name).unwrap();
        let irreps = rep::decompose_irreps(&a, None).unwrap();
        let r = tn::verify_rewrite_rules(&a, &irreps).unwrap();
        assert_eq!(r.entries.len(), 10);
        assert!(r.max() <= 1e-10, "{name}: {:?}", r.failures(1e-10));
        let j = tn::j_composition(&a, &irreps).unwrap();
        assert!(j.max() <= 1e-10, "{name}: {:?}", j.failures(1e-10));
    }
}

#[test]
fn network_equals_circuit() {
    for name in ["Z2", "S3", "F(S3)"] {
        let a = zoo::by_name(name).unwrap();
        let graphs = vec![
            cluster::build_cluster_graph(1, 1, &[(0, 1)], None).unwrap(),
            cluster::build_cluster_graph(1, 1, &[(1, 0)], None).unwrap(),
            cluster::build_1d_lattice(2, Boundary::Open).unwrap(),
            cluster::build_1d_lattice(3, Boundary::Open).unwrap(),
            cluster::build_1d_lattice(2, Boundary::Periodic).unwrap(),
            cluster::build_cluster_graph(3, 1, &[(0, 3), (3, 1), (2, 3)], None).unwrap(),
        ];
        for k in graphs {
            for norm in [OddNormalization::Trivial, OddNormalization::Haar] {
                let r = tn::tn_vs_circuit(&a, &k, norm).unwrap();
                assert!(r.max() <= 1e-10, "{name}: {:?}", r.entries);
            }
        }
    }
}

#[test]
fn contraction_order_does_not_change_the_state() {
    let a = zoo::by_name("S3").unwrap();
    let k = cluster::build_1d_lattice(2, Boundary::Periodic).unwrap();
    let net = tn::cluster_network(&a, &k, OddNormalization::Trivial, AntipodeEncoding::OddSide).unwrap();
    let base = net.contract(None).unwrap();
    let rev: Vec<usize> = (0..net.bonds.len()).rev().collect();
    assert!(net.contract(Some(&rev)).unwrap().max_diff(&base) <= 1e-12);
    assert!(net.contract(Some(&[2])).unwrap().max_diff(&base) <= 1e-12);
    assert!(net.contract(Some(&[99])).is_err());
}

#[test]
fn contraction_budget_is_enforced() {
    let a = zoo::by_name("S3").unwrap();
    let k = cluster::build_1d_lattice(2, Boundary::Periodic).unwrap();
    let net = tn::cluster_network(&a, &k, OddNormalization::Trivial, AntipodeEncoding::OddSide).unwrap();
    hopfstate::state::set_amplitude_budget(Some(500));
    let r = net.contract(None);
    hopfstate::state::set_amplitude_budget(None);
    assert!(matches!(r, Err(Error::ContractionBudgetExceeded { budget: 500, .. })));
}

#[test]
fn vertex_builders_check_parity() {
    let a = zoo::by_name("Z2").unwrap();
    let k = cluster::build_cluster_graph(1, 1, &[(0, 1)], None).unwrap();
    let r = tn::odd_vertex_node(&a, &k, 1, &a.unit(), AntipodeEncoding::OddSide);
    assert!(matches!(r, Err(Error::UnknownVertex(_))));
    let r = tn::even_vertex_node(&a, &k, 0, AntipodeEncoding::OddSide);
    assert!(matches!(r, Err(Error::UnknownVertex(_))));
}

#[test]
fn dump_lists_every_node_and_bond() {
    let a = zoo::by_name("Z3").unwrap();
    let k = cluster::build_1d_lattice(2, Boundary::Open).unwrap();
    let net = tn::cluster_network(&a, &k, OddNormalization::Trivial, AntipodeEncoding::EvenSide).unwrap();
    let dump = net.dump();
    assert_eq!(dump.nodes.len(), 3);
    assert_eq!(dump.bonds.len(), 2);
    assert_eq!(dump.open.len(), 3);
    let json = serde_json::to_value(&dump).unwrap();
    assert_eq!(json["nodes"][0]["kind"], "OddVertex");
    assert_eq!(json["nodes"][1]["data"], "node1");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn greedy_and_ordered_contractions_agree(k in 0usize..4, perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle()) {
        let a = &common::zoo_small()[k];
        let g = cluster::build_1d_lattice(2, Boundary::Periodic).unwrap();
        let net = tn::cluster_network(a, &g, OddNormalization::Trivial, AntipodeEncoding::OddSide).unwrap();
        let base = cluster::cluster_state(a, &g, OddNormalization::Trivial).unwrap();
        prop_assert!(net.contract(Some(&perm)).unwrap().max_diff(&base) <= 1e-10);
    }
}
