use super::{Leg, LegRef, NodeKind, TensorNetwork, TensorNode};
use crate::cluster::{self, ClusterGraph, OddNormalization, Orientation, Parity};
use crate::error::{Error, Result};
use crate::hopf::{AlgebraElement, HopfAlgebra};
use crate::linalg::{C64, ZERO};
use crate::rep::Representation;
use crate::state::StateVector;

/// Where the antipode of an even→odd edge is placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AntipodeEncoding {
    /// On the odd-vertex leg of the edge.
    #[default]
    OddSide,
    /// On the matching input of the even-vertex multiplication.
    EvenSide,
}

/// `A_ab^c` with legs `[a, b, c]`.
pub fn mul_node(a: &HopfAlgebra) -> TensorNode {
    let d = a.dim();
    let data = a.data().mul.clone();
    TensorNode::new(NodeKind::Mul, "mul", vec![Leg::virt(d); 3], data).expect("mul shape")
}

/// `C_a^{bc}` with legs `[a, b, c]`.
pub fn comul_node(a: &HopfAlgebra) -> TensorNode {
    let d = a.dim();
    let data = a.data().comul.clone();
    TensorNode::new(NodeKind::Comul, "comul", vec![Leg::virt(d); 3], data).expect("comul shape")
}

/// `S_a^b` with legs `[a, b]`.
pub fn antipode_node(a: &HopfAlgebra) -> TensorNode {
    let d = a.dim();
    let s = a.antipode_matrix();
    let data = (0..d * d).map(|i| s[(i / d, i % d)]).collect();
    TensorNode::new(NodeKind::Antipode, "antipode", vec![Leg::virt(d); 2], data).expect("antipode shape")
}

pub fn counit_node(a: &HopfAlgebra) -> TensorNode {
    TensorNode::new(NodeKind::Counit, "counit", vec![Leg::virt(a.dim())], a.counit_vec().to_vec()).expect("counit shape")
}

pub fn unit_node(a: &HopfAlgebra) -> TensorNode {
    TensorNode::new(NodeKind::Unit, "unit", vec![Leg::virt(a.dim())], a.unit().coeffs).expect("unit shape")
}

pub fn element_node(a: &HopfAlgebra, h: &AlgebraElement, label: &str) -> Result<TensorNode> {
    TensorNode::new(NodeKind::Element, label, vec![Leg::virt(a.dim())], h.coeffs.clone())
}

/// `Γ(g_a)_rc` with legs `[a, r, c]`.
pub fn rep_node(a: &HopfAlgebra, gamma: &Representation) -> Result<TensorNode> {
    if gamma.matrices.len() != a.dim() {
        return Err(Error::InvalidRepresentation(format!("{} has {} matrices", gamma.label, gamma.matrices.len())));
    }
    let n = gamma.dim;
    let mut data = Vec::with_capacity(a.dim() * n * n);
    for m in &gamma.matrices {
        for r in 0..n {
            for c in 0..n {
                data.push(m[(r, c)]);
            }
        }
    }
    TensorNode::new(NodeKind::RepMatrix, format!("rep {}", gamma.label), vec![Leg::virt(a.dim()), Leg::rep(n), Leg::rep(n)], data)
}

/// Odd vertex: `Δ_{n+1}(h)` with component `k` on incident edge `k` (local
/// order) and the last on the physical leg. With the odd-side encoding the
/// components on even→odd edges carry an antipode.
pub fn odd_vertex_node(
    a: &HopfAlgebra,
    k: &ClusterGraph,
    v: usize,
    h: &AlgebraElement,
    enc: AntipodeEncoding,
) -> Result<TensorNode> {
    k.check_vertex(v)?;
    if k.parity(v) != Parity::Odd {
        return Err(Error::UnknownVertex(format!("{v} is not an odd vertex")));
    }
    let inc = k.incident(v);
    let mut t = a.comultiply_n(h, inc.len() + 1);
    if enc == AntipodeEncoding::OddSide {
        let s = a.antipode_operator();
        for (leg, &e) in inc.iter().enumerate() {
            if k.edges()[e].orientation == Orientation::EvenToOdd {
                t = a.map_leg(&t, leg, &s);
            }
        }
    }
    let d = a.dim();
    let mut legs = vec![Leg::virt(d); inc.len()];
    legs.push(Leg::physical(d));
    TensorNode::new(NodeKind::OddVertex, format!("odd {v}"), legs, t.tensor)
}

/// Even vertex: the product `x_{m}⋯x_{1} · y_1⋯y_n` of the components arriving
/// on odd→even edges `x` (in reverse local order) and on even→odd edges `y`
/// (in local order), physical leg last. With the even-side encoding each `y`
/// enters through an antipode.
pub fn even_vertex_node(a: &HopfAlgebra, k: &ClusterGraph, v: usize, enc: AntipodeEncoding) -> Result<TensorNode> {
    k.check_vertex(v)?;
    if k.parity(v) != Parity::Even {
        return Err(Error::UnknownVertex(format!("{v} is not an even vertex")));
    }
    let inc = k.incident(v);
    let n = inc.len();
    let d = a.dim();
    let inputs: Vec<AlgebraElement> = (0..d).map(|i| a.basis(i)).collect();
    let antipoded: Vec<AlgebraElement> = inputs.iter().map(|x| a.antipode(x)).collect();
    let into: Vec<usize> = (0..n).rev().filter(|&l| k.edges()[inc[l]].orientation == Orientation::OddToEven).collect();
    let out: Vec<usize> = (0..n).filter(|&l| k.edges()[inc[l]].orientation == Orientation::EvenToOdd).collect();
    let order: Vec<usize> = into.iter().chain(&out).copied().collect();
    let total = d.pow(n as u32);
    let mut data = vec![ZERO; total * d];
    let mut idx = vec![0usize; n];
    for flat in 0..total {
        let mut rem = flat;
        for l in (0..n).rev() {
            idx[l] = rem % d;
            rem /= d;
        }
        let factors: Vec<&AlgebraElement> = order
            .iter()
            .map(|&l| {
                let flip = enc == AntipodeEncoding::EvenSide && out.contains(&l);
                if flip {
                    &antipoded[idx[l]]
                } else {
                    &inputs[idx[l]]
                }
            })
            .collect();
        let p = if factors.is_empty() { a.unit() } else { a.multiply_all(&factors)? };
        data[flat * d..(flat + 1) * d].copy_from_slice(&p.coeffs);
    }
    let mut legs = vec![Leg::virt(d); n];
    legs.push(Leg::physical(d));
    TensorNode::new(NodeKind::EvenVertex, format!("even {v}"), legs, data)
}

/// The Hopf tensor network of a cluster graph: one vertex tensor per vertex,
/// one bond per edge, physical legs open in vertex order. Lattices get the
/// edge order as their default contraction order.
pub fn cluster_network(
    a: &HopfAlgebra,
    k: &ClusterGraph,
    norm: OddNormalization,
    enc: AntipodeEncoding,
) -> Result<TensorNetwork> {
    let h = cluster::odd_state(a, norm)?;
    let mut net = TensorNetwork::new();
    for v in 0..k.num_vertices() {
        let node = match k.parity(v) {
            Parity::Odd => odd_vertex_node(a, k, v, &h, enc)?,
            Parity::Even => even_vertex_node(a, k, v, enc)?,
        };
        net.add(node);
    }
    for (e, edge) in k.edges().iter().enumerate() {
        let slot = |v: usize| k.incident(v).iter().position(|&x| x == e).expect("incident edge");
        net.bond(LegRef { node: edge.odd, slot: slot(edge.odd) }, LegRef { node: edge.even, slot: slot(edge.even) })?;
    }
    for v in 0..k.num_vertices() {
        net.expose(LegRef { node: v, slot: k.incident(v).len() })?;
    }
    if k.is_lattice() {
        net.default_order = Some((0..k.edges().len()).collect());
    }
    Ok(net)
}

pub fn tn_cluster_state(
    a: &HopfAlgebra,
    k: &ClusterGraph,
    norm: OddNormalization,
    enc: AntipodeEncoding,
) -> Result<StateVector> {
    cluster_network(a, k, norm, enc)?.contract(None)
}

pub(crate) fn node_state(node: &TensorNode) -> Result<StateVector> {
    StateVector::new(node.dims(), node.data.clone())
}

pub(crate) fn identity_data(d: usize) -> Vec<C64> {
    (0..d * d).map(|i| if i / d == i % d { crate::linalg::ONE } else { ZERO }).collect()
}
