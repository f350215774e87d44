use super::build::{self, AntipodeEncoding};
use super::{permute, LegRef, TensorNetwork, TensorNode};
use crate::cluster::{self, Boundary, ClusterGraph, OddNormalization};
use crate::error::Result;
use crate::hopf::HopfAlgebra;
use crate::linalg::{self, CMat};
use crate::ops::{self, XKind, ZKind};
use crate::rep::{self, Representation};
use crate::report::Residuals;
use crate::state::StateVector;

fn at(node: usize, slot: usize) -> LegRef {
    LegRef { node, slot }
}

/// Small builder: nodes, bonds `(n, s) – (m, t)`, then open legs in order.
fn network(nodes: Vec<TensorNode>, bonds: &[(usize, usize, usize, usize)], open: &[(usize, usize)]) -> Result<StateVector> {
    let mut net = TensorNetwork::new();
    for n in nodes {
        net.add(n);
    }
    for &(n, s, m, t) in bonds {
        net.bond(at(n, s), at(m, t))?;
    }
    for &(n, s) in open {
        net.expose(at(n, s))?;
    }
    net.contract(None)
}

fn diff(x: &StateVector, y: &[linalg::C64]) -> f64 {
    linalg::max_abs_diff(x.amps(), y)
}

/// The Hopf-algebra axioms as tensor-network equations.
pub fn structure_axioms(a: &HopfAlgebra) -> Result<Residuals> {
    let d = a.dim();
    let (mul, comul, s, eps, unit) =
        (build::mul_node(a), build::comul_node(a), build::antipode_node(a), build::counit_node(a), build::unit_node(a));
    let id = build::identity_data(d);
    let mut out = Residuals::new();

    let left = network(vec![unit.clone(), mul.clone()], &[(0, 0, 1, 0)], &[(1, 1), (1, 2)])?;
    let right = network(vec![unit.clone(), mul.clone()], &[(0, 0, 1, 1)], &[(1, 0), (1, 2)])?;
    out.push("unit", diff(&left, &id).max(diff(&right, &id)));

    let left = network(vec![comul.clone(), eps.clone()], &[(0, 1, 1, 0)], &[(0, 0), (0, 2)])?;
    let right = network(vec![comul.clone(), eps.clone()], &[(0, 2, 1, 0)], &[(0, 0), (0, 1)])?;
    out.push("counit", diff(&left, &id).max(diff(&right, &id)));

    let lhs = network(vec![mul.clone(), mul.clone()], &[(0, 2, 1, 0)], &[(0, 0), (0, 1), (1, 1), (1, 2)])?;
    let rhs = network(vec![mul.clone(), mul.clone()], &[(0, 2, 1, 1)], &[(1, 0), (0, 0), (0, 1), (1, 2)])?;
    out.push("associativity", lhs.max_diff(&rhs));

    let lhs = network(vec![comul.clone(), comul.clone()], &[(0, 1, 1, 0)], &[(0, 0), (1, 1), (1, 2), (0, 2)])?;
    let rhs = network(vec![comul.clone(), comul.clone()], &[(0, 2, 1, 0)], &[(0, 0), (0, 1), (1, 1), (1, 2)])?;
    out.push("coassociativity", lhs.max_diff(&rhs));

    // Δ∘μ = (μ⊗μ)(id⊗τ⊗id)(Δ⊗Δ)
    let lhs = network(vec![mul.clone(), comul.clone()], &[(0, 2, 1, 0)], &[(0, 0), (0, 1), (1, 1), (1, 2)])?;
    let rhs = network(
        vec![comul.clone(), comul.clone(), mul.clone(), mul.clone()],
        &[(0, 1, 2, 0), (1, 1, 2, 1), (0, 2, 3, 0), (1, 2, 3, 1)],
        &[(0, 0), (1, 0), (2, 2), (3, 2)],
    )?;
    out.push("comultiplication is multiplicative", lhs.max_diff(&rhs));

    let lhs = network(vec![unit.clone(), comul.clone()], &[(0, 0, 1, 0)], &[(1, 1), (1, 2)])?;
    let rhs = network(vec![unit.clone(), unit.clone()], &[], &[(0, 0), (1, 0)])?;
    out.push("comultiplication is unital", lhs.max_diff(&rhs));

    let lhs = network(vec![mul.clone(), eps.clone()], &[(0, 2, 1, 0)], &[(0, 0), (0, 1)])?;
    let rhs = network(vec![eps.clone(), eps.clone()], &[], &[(0, 0), (1, 0)])?;
    out.push("counit is multiplicative", lhs.max_diff(&rhs));

    let counit_unit = network(vec![eps.clone(), unit.clone()], &[], &[(0, 0), (1, 0)])?;
    // Σ C_a^{bc} S_b^d A_{dc}^e and Σ C_a^{bc} S_c^d A_{bd}^e
    let lhs = network(
        vec![comul.clone(), s.clone(), mul.clone()],
        &[(0, 1, 1, 0), (1, 1, 2, 0), (0, 2, 2, 1)],
        &[(0, 0), (2, 2)],
    )?;
    out.push("left antipode", lhs.max_diff(&counit_unit));
    let rhs = network(vec![comul, s, mul], &[(0, 2, 1, 0), (1, 1, 2, 1), (0, 1, 2, 0)], &[(0, 0), (2, 2)])?;
    out.push("right antipode", rhs.max_diff(&counit_unit));
    Ok(out)
}

/// Largest change of `Δ_n(λ)` under a cyclic shift of its legs, for `n` in `2..=max_n`.
pub fn odd_cyclicity_residual(a: &HopfAlgebra, max_n: usize) -> Result<f64> {
    let lam = a.haar_integral()?;
    let mut worst: f64 = 0.0;
    for n in 2..=max_n {
        let t = a.comultiply_n(lam, n);
        let dims = vec![a.dim(); n];
        let perm: Vec<usize> = (1..n).chain(std::iter::once(0)).collect();
        worst = worst.max(linalg::max_abs_diff(&permute(&t.tensor, &dims, &perm), &t.tensor));
    }
    Ok(worst)
}

/// Nodes and (input, output) legs of the traced gadget for `J`-type operator `kind`.
fn j_gadget(a: &HopfAlgebra, kind: ZKind, gamma: &Representation, base: usize) -> Result<(Vec<TensorNode>, Vec<(usize, usize, usize, usize)>, LegRef, LegRef)> {
    let (c, s, r) = (base, base + 1, base + 2);
    let rep_node = build::rep_node(a, gamma)?;
    let trace = (r, 1, r, 2);
    // comul legs [in, (1), (2)]; antipode [in, out]; rep [in, row, col]
    let (bonds, output) = match kind {
        ZKind::Z => (vec![(c, 2, r, 0), trace, (c, 1, s, 0)], at(s, 1)),
        ZKind::ZDagger => (vec![(c, 1, s, 0), (s, 1, r, 0), trace], at(c, 2)),
        ZKind::ZTilde => (vec![(c, 1, r, 0), trace, (c, 2, s, 0)], at(s, 1)),
        ZKind::ZTildeDagger => (vec![(c, 2, s, 0), (s, 1, r, 0), trace], at(c, 1)),
    };
    // Kinds without an antipode route the free leg through an identity map.
    let map = match kind {
        ZKind::Z | ZKind::ZTilde => identity_node(a),
        _ => build::antipode_node(a),
    };
    Ok((vec![build::comul_node(a), map, rep_node], bonds, at(c, 0), output))
}

fn identity_node(a: &HopfAlgebra) -> TensorNode {
    let d = a.dim();
    TensorNode::new(super::NodeKind::Antipode, "identity", vec![super::Leg::virt(d); 2], build::identity_data(d)).expect("identity shape")
}

/// `[in, out]` tensor of a chain of gadgets, the first applied first.
fn j_chain(a: &HopfAlgebra, kind: ZKind, reps: &[&Representation]) -> Result<StateVector> {
    let mut net = TensorNetwork::new();
    let mut ends: Vec<(LegRef, LegRef)> = Vec::new();
    for g in reps {
        let (nodes, bonds, i, o) = j_gadget(a, kind, g, net.nodes.len())?;
        for n in nodes {
            net.add(n);
        }
        for (n, s, m, t) in bonds {
            net.bond(at(n, s), at(m, t))?;
        }
        ends.push((i, o));
    }
    for w in ends.windows(2) {
        net.bond(w[0].1, w[1].0)?;
    }
    net.expose(ends[0].0)?;
    net.expose(ends[ends.len() - 1].1)?;
    net.contract(None)
}

/// `J_Γ J_Φ` against `J_{Γ⊗Φ}` (`J_{Φ⊗Γ}` for the tilde kinds), all built from
/// traced gadget networks, plus each single gadget against the operator matrix.
pub fn j_composition(a: &HopfAlgebra, irreps: &[Representation]) -> Result<Residuals> {
    let mut out = Residuals::new();
    for kind in ZKind::ALL {
        let name = kind.name();
        for g in irreps {
            let t = j_chain(a, kind, &[g])?;
            let m = ops::j_matrix(a, kind, g);
            let d = a.dim();
            let flat: Vec<_> = (0..d * d).map(|i| m[(i % d, i / d)]).collect();
            out.record(&format!("{name} gadget - operator"), diff(&t, &flat));
            for f in irreps {
                let stacked = j_chain(a, kind, &[f, g])?;
                let fused = match kind {
                    ZKind::Z | ZKind::ZDagger => rep::tensor_product(a, g, f),
                    _ => rep::tensor_product(a, f, g),
                };
                out.record(&format!("{name} composition"), stacked.max_diff(&j_chain(a, kind, &[&fused])?));
            }
        }
    }
    Ok(out)
}

fn apply_kernel(psi: &StateVector, leg: usize, k: &CMat) -> Result<StateVector> {
    psi.apply(&[leg], k)
}

/// Acting on an input leg of a map tensor is the transpose acting on its data.
fn apply_input(psi: &StateVector, leg: usize, k: &CMat) -> Result<StateVector> {
    psi.apply(&[leg], &k.transpose())
}

/// Residuals of the local rewrite identities for the odd tensor `[L, R, P]`
/// and the even multiplication tensor `[L, R, P]` of the 1D lattice, over
/// every basis element and every irrep.
pub fn verify_rewrite_rules(a: &HopfAlgebra, irreps: &[Representation]) -> Result<Residuals> {
    let k = cluster::build_1d_lattice(3, Boundary::Open)?;
    let lam = a.haar_integral()?;
    let odd = build::node_state(&build::odd_vertex_node(a, &k, 2, lam, AntipodeEncoding::OddSide)?)?;
    let even = build::node_state(&build::even_vertex_node(a, &k, 1, AntipodeEncoding::OddSide)?)?;
    rewrite_residuals(a, irreps, &odd, &even)
}

fn rewrite_residuals(a: &HopfAlgebra, irreps: &[Representation], odd: &StateVector, even: &StateVector) -> Result<Residuals> {
    let d = a.dim();
    let (l, r, p) = (0, 1, 2);
    let mut out = Residuals::new();
    let tl = ops::x_family(a, XKind::TildeLeft);
    let tr = ops::x_family(a, XKind::TildeRight);
    for x in 0..d {
        let gx = a.basis(x);
        let dx = a.comultiply(&gx);
        let lhs = apply_kernel(odd, p, &ops::x_matrix(a, XKind::Right, &gx))?;
        let rhs = odd.apply(&[l, r], &ops::product_kernel(&dx.tensor, &[tl.clone(), tr.clone()]))?;
        out.record("X<- through odd tensor", lhs.max_diff(&rhs));

        let lhs = apply_kernel(odd, p, &ops::x_matrix(a, XKind::Left, &gx))?;
        let rhs = odd.apply(&[r, l], &ops::product_kernel(&dx.tensor, &[tl.clone(), tr.clone()]))?;
        out.record("X-> through odd tensor", lhs.max_diff(&rhs));

        let m = ops::x_matrix(a, XKind::Left, &gx);
        out.record("X-> through even tensor", apply_kernel(even, p, &m)?.max_diff(&apply_input(even, l, &m)?));
        let m = ops::x_matrix(a, XKind::Right, &gx);
        out.record("X<- through even tensor", apply_kernel(even, p, &m)?.max_diff(&apply_input(even, r, &m)?));
    }
    for g in irreps {
        let z = |kind, site| ops::apply_z(a, kind, g, odd, site);
        out.record("Z on odd tensor", z(ZKind::Z, p)?.max_diff(&z(ZKind::ZTildeDagger, l)?));
        out.record("Z-dagger on odd tensor", z(ZKind::ZDagger, p)?.max_diff(&z(ZKind::ZTildeDagger, r)?));
        out.record("Z-dagger left vs Z-tilde right", z(ZKind::ZDagger, l)?.max_diff(&z(ZKind::ZTilde, r)?));
        out.record("Z-tilde left vs Z-dagger right", z(ZKind::ZTilde, l)?.max_diff(&z(ZKind::ZDagger, r)?));
        let n = g.dim;
        for row in 0..n {
            for col in 0..n {
                let lhs = apply_kernel(even, p, &ops::z_slice(a, ZKind::Z, g, row, col))?;
                let mut rhs = StateVector::zeros(even.dims().to_vec())?;
                for s in 0..n {
                    let t = apply_input(even, l, &ops::z_slice(a, ZKind::Z, g, row, s))?;
                    rhs = &rhs + &apply_input(&t, r, &ops::z_slice(a, ZKind::Z, g, s, col))?;
                }
                out.record("Z splits on even tensor", lhs.max_diff(&rhs));

                let lhs = apply_kernel(even, p, &ops::z_slice(a, ZKind::ZDagger, g, row, col))?;
                let mut rhs = StateVector::zeros(even.dims().to_vec())?;
                for s in 0..n {
                    let t = apply_input(even, r, &ops::z_slice(a, ZKind::ZDagger, g, row, s))?;
                    rhs = &rhs + &apply_input(&t, l, &ops::z_slice(a, ZKind::ZDagger, g, s, col))?;
                }
                out.record("Z-dagger splits on even tensor", lhs.max_diff(&rhs));
            }
        }
    }
    Ok(out)
}

/// Tensor-network state (both antipode encodings) against the circuit state.
pub fn tn_vs_circuit(a: &HopfAlgebra, k: &ClusterGraph, norm: OddNormalization) -> Result<Residuals> {
    let circuit = cluster::cluster_state(a, k, norm)?;
    let mut out = Residuals::new();
    for (name, enc) in [("odd-side antipode", AntipodeEncoding::OddSide), ("even-side antipode", AntipodeEncoding::EvenSide)] {
        let tn = build::tn_cluster_state(a, k, norm, enc)?;
        out.push(format!("network - circuit ({name})"), tn.max_diff(&circuit));
    }
    Ok(out)
}
