//! Hypergraph states: qudit phase-gate circuits and the Hopf contraction form.

use crate::error::{Error, Result};
use crate::hopf::{AlgebraElement, DualElement, HopfAlgebra};
use crate::lattice::product_values;
use crate::linalg::C64;
use crate::state::{self, StateVector};
use crate::tn::{Leg, LegRef, NodeKind, TensorNetwork, TensorNode};

/// A hyperedge of a qudit hypergraph: `U_e|I⟩ = e^{iθ(I)}|I⟩` over the listed
/// vertices, applied `multiplicity` times.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditHyperedge {
    pub vertices: Vec<usize>,
    /// Phase table, row-major over the vertex list.
    pub theta: Vec<f64>,
    pub directed: bool,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuditHypergraph {
    pub dims: Vec<usize>,
    /// `H_v|0⟩` per vertex.
    pub initial: Vec<Vec<C64>>,
    pub edges: Vec<QuditHyperedge>,
}

fn check_vertices(vertices: &[usize], n: usize, e: usize) -> Result<()> {
    if vertices.is_empty() {
        return Err(Error::ArityMismatch(format!("hyperedge {e} has no vertices")));
    }
    for (k, &v) in vertices.iter().enumerate() {
        if v >= n {
            return Err(Error::UnknownVertex(format!("{v} in hyperedge {e}")));
        }
        if vertices[..k].contains(&v) {
            return Err(Error::ArityMismatch(format!("vertex {v} repeated in hyperedge {e}")));
        }
    }
    Ok(())
}

/// Checks invariance of a row-major table under every adjacent transposition
/// of its arguments, which generate all permutations.
fn check_symmetric<T: Copy>(table: &[T], dims: &[usize], close: impl Fn(T, T) -> bool, e: usize) -> Result<()> {
    let m = dims.len();
    for k in 0..m.saturating_sub(1) {
        if dims[k] != dims[k + 1] {
            return Err(Error::AsymmetricFunctional(format!("hyperedge {e}: arguments {k} and {} differ in dimension", k + 1)));
        }
    }
    let mut st = vec![1usize; m];
    for k in (0..m.saturating_sub(1)).rev() {
        st[k] = st[k + 1] * dims[k + 1];
    }
    for (i, &v) in table.iter().enumerate() {
        for k in 0..m.saturating_sub(1) {
            let (x, y) = ((i / st[k]) % dims[k], (i / st[k + 1]) % dims[k + 1]);
            let j = i - x * st[k] - y * st[k + 1] + y * st[k] + x * st[k + 1];
            if !close(v, table[j]) {
                return Err(Error::AsymmetricFunctional(format!("hyperedge {e}: swapping arguments {k} and {} changes the value", k + 1)));
            }
        }
    }
    Ok(())
}

impl QuditHypergraph {
    pub fn validate(&self) -> Result<()> {
        let n = self.dims.len();
        if self.initial.len() != n {
            return Err(Error::DimensionMismatch(format!("{} initial states for {n} vertices", self.initial.len())));
        }
        for (v, (h, &d)) in self.initial.iter().zip(&self.dims).enumerate() {
            if h.len() != d {
                return Err(Error::DimensionMismatch(format!("vertex {v}: state of length {} in dimension {d}", h.len())));
            }
        }
        for (e, edge) in self.edges.iter().enumerate() {
            check_vertices(&edge.vertices, n, e)?;
            let dims: Vec<usize> = edge.vertices.iter().map(|&v| self.dims[v]).collect();
            let size: usize = dims.iter().product();
            if edge.theta.len() != size {
                return Err(Error::ArityMismatch(format!("hyperedge {e}: {} phases for {size} configurations", edge.theta.len())));
            }
            if !edge.directed {
                check_symmetric(&edge.theta, &dims, |a, b| (a - b).abs() <= 1e-12, e)?;
            }
        }
        Ok(())
    }

    /// `(Π_e U_e^{m_e}) ⊗_v H_v|0⟩`.
    pub fn state(&self) -> Result<StateVector> {
        self.validate()?;
        state::check_budget(&self.dims)?;
        let mut psi = StateVector::product(&self.initial)?;
        for edge in &self.edges {
            let m = f64::from(edge.multiplicity);
            let n = edge.theta.len();
            let mut k = crate::CMat::zeros(n, n);
            for (i, &t) in edge.theta.iter().enumerate() {
                k[(i, i)] = C64::from_polar(1.0, m * t);
            }
            psi = psi.apply(&edge.vertices, &k)?;
        }
        Ok(psi)
    }
}

/// An edge functional `ψ_e` on `𝒜^{⊗m}`.
#[derive(Debug, Clone, PartialEq)]
pub enum EdgeFunctional {
    /// Values on basis tuples, row-major.
    Table(Vec<C64>),
    /// `φ(x_1 ⋯ x_m)`.
    Product(DualElement),
}

#[derive(Debug, Clone, PartialEq)]
pub struct HopfHyperedge {
    /// Vertices in the edge's own order.
    pub vertices: Vec<usize>,
    pub functional: EdgeFunctional,
    pub directed: bool,
}

/// A position in a vertex's local ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Own,
    Edge(usize),
}

/// Hopf hypergraph: `h_v` per vertex, local orderings of `{v} ∪ N(v)`, and
/// edge functionals. Repeated hyperedges are listed separately.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfHypergraph {
    pub states: Vec<AlgebraElement>,
    pub edges: Vec<HopfHyperedge>,
    pub ordering: Vec<Vec<Slot>>,
}

impl HopfHypergraph {
    /// Default local ordering: incident edges in listing order, own slot last.
    pub fn new(states: Vec<AlgebraElement>, edges: Vec<HopfHyperedge>) -> Self {
        let ordering = (0..states.len())
            .map(|v| {
                let mut o: Vec<Slot> =
                    edges.iter().enumerate().filter(|(_, e)| e.vertices.contains(&v)).map(|(i, _)| Slot::Edge(i)).collect();
                o.push(Slot::Own);
                o
            })
            .collect();
        HopfHypergraph { states, edges, ordering }
    }

    fn table(&self, a: &HopfAlgebra, e: usize) -> Vec<C64> {
        let edge = &self.edges[e];
        match &edge.functional {
            EdgeFunctional::Table(t) => t.clone(),
            EdgeFunctional::Product(phi) => product_values(a, phi, edge.vertices.len()),
        }
    }

    pub fn validate(&self, a: &HopfAlgebra) -> Result<()> {
        let n = self.states.len();
        let d = a.dim();
        for (v, h) in self.states.iter().enumerate() {
            if h.len() != d {
                return Err(Error::DimensionMismatch(format!("vertex {v}: element of length {} in dimension {d}", h.len())));
            }
        }
        for (e, edge) in self.edges.iter().enumerate() {
            check_vertices(&edge.vertices, n, e)?;
            let m = edge.vertices.len();
            let size = d.pow(m as u32);
            match &edge.functional {
                EdgeFunctional::Table(t) if t.len() != size => {
                    return Err(Error::ArityMismatch(format!("hyperedge {e}: {} values for arity {m}", t.len())));
                }
                EdgeFunctional::Product(phi) if phi.len() != d => {
                    return Err(Error::DimensionMismatch(format!("hyperedge {e}: functional of length {}", phi.len())));
                }
                _ => {}
            }
            if !edge.directed {
                check_symmetric(&self.table(a, e), &vec![d; m], |x, y| (x - y).norm() <= 1e-10, e)?;
            }
        }
        if self.ordering.len() != n {
            return Err(Error::DimensionMismatch(format!("{} local orderings for {n} vertices", self.ordering.len())));
        }
        for (v, o) in self.ordering.iter().enumerate() {
            let mut expected: Vec<Slot> =
                self.edges.iter().enumerate().filter(|(_, e)| e.vertices.contains(&v)).map(|(i, _)| Slot::Edge(i)).collect();
            expected.push(Slot::Own);
            let same = o.len() == expected.len() && expected.iter().all(|s| o.contains(s));
            if !same {
                return Err(Error::ArityMismatch(format!("vertex {v}: local ordering must list itself and each incident hyperedge once")));
            }
        }
        Ok(())
    }

    /// `Σ Π_e ψ_e(h^{(e)}_{v_{e,1}}, …) ⊗_v |h_v^{(v)}⟩`, contracted as a
    /// tensor network.
    pub fn state(&self, a: &HopfAlgebra) -> Result<StateVector> {
        self.validate(a)?;
        let d = a.dim();
        state::check_budget(&vec![d; self.states.len()])?;
        let mut net = TensorNetwork::new();
        for (v, h) in self.states.iter().enumerate() {
            let o = &self.ordering[v];
            let t = a.comultiply_n(h, o.len());
            let legs = o.iter().map(|s| if *s == Slot::Own { Leg::physical(d) } else { Leg::virt(d) }).collect();
            net.add(TensorNode::new(NodeKind::Element, format!("vertex {v}"), legs, t.tensor)?);
        }
        let base = net.nodes.len();
        for (e, edge) in self.edges.iter().enumerate() {
            let legs = vec![Leg::virt(d); edge.vertices.len()];
            net.add(TensorNode::new(NodeKind::Functional, format!("edge {e}"), legs, self.table(a, e))?);
            for (k, &v) in edge.vertices.iter().enumerate() {
                let slot = self.ordering[v].iter().position(|s| *s == Slot::Edge(e)).expect("validated ordering");
                net.bond(LegRef { node: v, slot }, LegRef { node: base + e, slot: k })?;
            }
        }
        for (v, o) in self.ordering.iter().enumerate() {
            let slot = o.iter().position(|s| *s == Slot::Own).expect("validated ordering");
            net.expose(LegRef { node: v, slot })?;
        }
        net.contract(None)
    }
}
