//! Cluster graphs, the entangler circuit and Hopf cluster states.

use crate::error::{Error, Result};
use crate::hopf::{AlgebraElement, HopfAlgebra};
use crate::ops::{self, Direction, XKind, ZKind};
use crate::rep::Representation;
use crate::state::{self, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    OddToEven,
    EvenToOdd,
}

impl Orientation {
    /// The entangler placed on an edge of this orientation.
    pub fn direction(self) -> Direction {
        match self {
            Orientation::OddToEven => Direction::Left,
            Orientation::EvenToOdd => Direction::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub odd: usize,
    pub even: usize,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    /// Open chain with odd vertices at both ends.
    Open,
}

/// Bipartite graph with oriented edges stored in global order.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterGraph {
    parity: Vec<Parity>,
    edges: Vec<Edge>,
    lattice: bool,
    warnings: Vec<String>,
}

impl ClusterGraph {
    /// Validates a graph from per-vertex parities and directed edges `(from, to)`
    /// listed in global order.
    pub fn new(parity: Vec<Parity>, directed: &[(usize, usize)]) -> Result<Self> {
        let n = parity.len();
        let mut edges = Vec::with_capacity(directed.len());
        for &(from, to) in directed {
            if from >= n || to >= n {
                return Err(Error::UnknownVertex(format!("edge ({from}, {to}) on {n} vertices")));
            }
            let e = match (parity[from], parity[to]) {
                (Parity::Odd, Parity::Even) => Edge { odd: from, even: to, orientation: Orientation::OddToEven },
                (Parity::Even, Parity::Odd) => Edge { odd: to, even: from, orientation: Orientation::EvenToOdd },
                _ => return Err(Error::NotBipartite(from, to)),
            };
            edges.push(e);
        }
        let warnings = (0..n)
            .filter(|&v| !edges.iter().any(|e| e.odd == v || e.even == v))
            .map(|v| format!("dangling vertex {v}"))
            .collect();
        Ok(ClusterGraph { parity, edges, lattice: false, warnings })
    }

    /// Marks the graph as a cluster lattice after checking that every even
    /// vertex has exactly one incoming and one outgoing edge.
    pub fn into_lattice(mut self) -> Result<Self> {
        for v in self.even_vertices() {
            let inc = self.incident(v);
            let ins = inc.iter().filter(|&&k| self.edges[k].orientation == Orientation::OddToEven).count();
            if inc.len() != 2 || ins != 1 {
                return Err(Error::InvalidSize(format!("even vertex {v} is not bivalent with one input and one output")));
            }
        }
        self.lattice = true;
        Ok(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self, v: usize) -> Parity {
        self.parity[v]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn odd_vertices(&self) -> Vec<usize> {
        (0..self.parity.len()).filter(|&v| self.parity[v] == Parity::Odd).collect()
    }

    pub fn even_vertices(&self) -> Vec<usize> {
        (0..self.parity.len()).filter(|&v| self.parity[v] == Parity::Even).collect()
    }

    /// Indices (global positions) of the edges at `v`: its local ordering.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&k| self.edges[k].odd == v || self.edges[k].even == v).collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.parity.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    /// For lattices, the gate indices of each `W_v` block in application order,
    /// keyed by odd vertex. `None` for general graphs.
    pub fn w_blocks(&self) -> Option<Vec<(usize, Vec<usize>)>> {
        if !self.lattice {
            return None;
        }
        let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            match blocks.iter_mut().find(|b| b.0 == e.odd) {
                Some(b) => b.1.push(k),
                None => blocks.push((e.odd, vec![k])),
            }
        }
        Some(blocks)
    }
}

/// Graph with odd vertices `0..odd` and even vertices `odd..odd+even`.
pub fn build_cluster_graph(odd: usize, even: usize, edges: &[(usize, usize)], order: Option<&[usize]>) -> Result<ClusterGraph> {
    let mut parity = vec![Parity::Odd; odd];
    parity.extend(std::iter::repeat_n(Parity::Even, even));
    let ordered: Vec<(usize, usize)> = match order {
        None => edges.to_vec(),
        Some(o) => {
            let mut seen = vec![false; edges.len()];
            if o.len() != edges.len() || o.iter().any(|&k| k >= edges.len() || std::mem::replace(&mut seen[k], true)) {
                return Err(Error::InvalidSize(format!("{o:?} is not an ordering of {} edges", edges.len())));
            }
            o.iter().map(|&k| edges[k]).collect()
        }
    };
    ClusterGraph::new(parity, &ordered)
}

/// A 1D chain with all edges pointing left to right.
///
/// Vertex `k` is site `k + 1` of the chain; `first_odd` fixes the parity of
/// site 1. Edges are ordered per odd vertex, left edge first.
pub fn build_chain(sites: usize, first_odd: bool, periodic: bool) -> Result<ClusterGraph> {
    if sites == 0 || (periodic && (sites < 4 || sites % 2 == 1)) {
        return Err(Error::InvalidSize(format!("{sites}-site {} chain", if periodic { "periodic" } else { "open" })));
    }
    let parity: Vec<Parity> =
        (0..sites).map(|k| if (k % 2 == 0) == first_odd { Parity::Odd } else { Parity::Even }).collect();
    let mut directed = Vec::new();
    for v in (0..sites).filter(|&v| parity[v] == Parity::Odd) {
        if v > 0 || periodic {
            directed.push(((v + sites - 1) % sites, v));
        }
        if v + 1 < sites || periodic {
            directed.push((v, (v + 1) % sites));
        }
    }
    let g = ClusterGraph::new(parity, &directed)?;
    let interior_even = (0..sites).all(|v| {
        g.parity(v) == Parity::Odd || g.incident(v).len() == 2
    });
    if interior_even {
        g.into_lattice()
    } else {
        Ok(g)
    }
}

/// 1D cluster lattice with `l` odd vertices.
pub fn build_1d_lattice(l: usize, boundary: Boundary) -> Result<ClusterGraph> {
    match boundary {
        Boundary::Periodic if l >= 2 => build_chain(2 * l, true, true),
        Boundary::Open if l >= 1 => build_chain(2 * l - 1, true, false),
        _ => Err(Error::InvalidSize(format!("L = {l} with {boundary:?} boundary"))),
    }
}

/// Cluster lattice over the 1-skeleton of a cellulation: skeleton vertices
/// become odd vertices `0..n`, each oriented skeleton edge `(u, v)` gets an
/// even vertex `n + k` with edges `u → e → v`.
pub fn build_skeleton_lattice(n: usize, skeleton: &[(usize, usize)]) -> Result<ClusterGraph> {
    let mut parity = vec![Parity::Odd; n];
    parity.extend(std::iter::repeat_n(Parity::Even, skeleton.len()));
    let mut directed = Vec::new();
    for v in 0..n {
        for (k, &(a, b)) in skeleton.iter().enumerate() {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidSize(format!("skeleton edge ({a}, {b})")));
            }
            if b == v {
                directed.push((n + k, v));
            }
            if a == v {
                directed.push((v, n + k));
            }
        }
    }
    ClusterGraph::new(parity, &directed)?.into_lattice()
}

/// Square cellulation of the `nx × ny` torus, edges oriented along +x and +y.
pub fn torus_skeleton(nx: usize, ny: usize) -> Result<(usize, Vec<(usize, usize)>)> {
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidSize(format!("{nx}x{ny} torus")));
    }
    let id = |x: usize, y: usize| (y % ny) * nx + (x % nx);
    let mut edges = Vec::new();
    for y in 0..ny {
        for x in 0..nx {
            edges.push((id(x, y), id(x + 1, y)));
            edges.push((id(x, y), id(x, y + 1)));
        }
    }
    Ok((nx * ny, edges))
}

/// Which multiple of the Haar integral sits on odd vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OddNormalization {
    /// `|𝟙⟩ = √|𝒜| λ`, unit norm.
    #[default]
    Trivial,
    /// Plain `λ`.
    Haar,
}

pub fn odd_state(a: &HopfAlgebra, norm: OddNormalization) -> Result<AlgebraElement> {
    match norm {
        OddNormalization::Trivial => a.trivial_state(),
        OddNormalization::Haar => Ok(a.haar_integral()?.clone()),
    }
}

/// `|Ω⟩`: the odd-vertex state on odd vertices and the unit on even ones.
pub fn preferred_state(a: &HopfAlgebra, k: &ClusterGraph, norm: OddNormalization) -> Result<StateVector> {
    state::check_budget(&vec![a.dim(); k.num_vertices()])?;
    let odd = odd_state(a, norm)?.coeffs;
    let unit = a.unit().coeffs;
    let factors: Vec<_> =
        k.parities().iter().map(|p| if *p == Parity::Odd { odd.clone() } else { unit.clone() }).collect();
    StateVector::product(&factors)
}

/// One edge entangler: control is the odd endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gate {
    pub edge: usize,
    pub control: usize,
    pub target: usize,
    pub direction: Direction,
}

/// Gates in application order (global edge order).
pub fn entangler_circuit(k: &ClusterGraph) -> Vec<Gate> {
    k.edges()
        .iter()
        .enumerate()
        .map(|(i, e)| Gate { edge: i, control: e.odd, target: e.even, direction: e.orientation.direction() })
        .collect()
}

/// Cached kernels for a circuit over one algebra.
pub struct Circuit<'a> {
    algebra: &'a HopfAlgebra,
    gates: Vec<Gate>,
    kernels: [crate::CMat; 4],
}

impl<'a> Circuit<'a> {
    pub fn new(a: &'a HopfAlgebra, k: &ClusterGraph) -> Self {
        let kernels = [
            ops::controlled_x_kernel(a, Direction::Left, false),
            ops::controlled_x_kernel(a, Direction::Left, true),
            ops::controlled_x_kernel(a, Direction::Right, false),
            ops::controlled_x_kernel(a, Direction::Right, true),
        ];
        Circuit { algebra: a, gates: entangler_circuit(k), kernels }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    fn kernel(&self, dir: Direction, inverse: bool) -> &crate::CMat {
        let i = match dir {
            Direction::Left => 0,
            Direction::Right => 2,
        } + usize::from(inverse);
        &self.kernels[i]
    }

    pub fn apply_gate(&self, g: &Gate, inverse: bool, psi: &StateVector) -> Result<StateVector> {
        psi.apply(&[g.control, g.target], self.kernel(g.direction, inverse))
    }

    /// Applies the listed gates in order.
    pub fn apply_gates(&self, idx: &[usize], psi: &StateVector) -> Result<StateVector> {
        idx.iter().try_fold(psi.clone(), |s, &i| self.apply_gate(&self.gates[i], false, &s))
    }

    /// `U = U_{e_|E|} ⋯ U_{e_1}`.
    pub fn forward(&self, psi: &StateVector) -> Result<StateVector> {
        let all: Vec<usize> = (0..self.gates.len()).collect();
        self.apply_gates(&all, psi)
    }

    /// `U⁻¹`.
    pub fn backward(&self, psi: &StateVector) -> Result<StateVector> {
        self.gates.iter().rev().try_fold(psi.clone(), |s, g| self.apply_gate(g, true, &s))
    }

    pub fn algebra(&self) -> &HopfAlgebra {
        self.algebra
    }
}

/// `|K, 𝒜⟩ = U |Ω⟩`.
pub fn cluster_state(a: &HopfAlgebra, k: &ClusterGraph, norm: OddNormalization) -> Result<StateVector> {
    Circuit::new(a, k).forward(&preferred_state(a, k, norm)?)
}

/// Max difference between applying the `W_v` blocks of a lattice in forward
/// and in reverse block order to `psi`.
pub fn w_block_order_residual(a: &HopfAlgebra, k: &ClusterGraph, psi: &StateVector) -> Result<Option<f64>> {
    let Some(blocks) = k.w_blocks() else { return Ok(None) };
    let c = Circuit::new(a, k);
    let fwd = blocks.iter().try_fold(psi.clone(), |s, b| c.apply_gates(&b.1, &s))?;
    let rev = blocks.iter().rev().try_fold(psi.clone(), |s, b| c.apply_gates(&b.1, &s))?;
    Ok(Some(fwd.max_diff(&rev)))
}

/// Local operator conjugated by the entangler circuit.
#[derive(Debug, Clone)]
pub enum Stabilizer {
    /// Preferred Pauli X on an odd vertex.
    T,
    /// Preferred Pauli Z on an even vertex.
    Q,
    TLeft(AlgebraElement),
    TRight(AlgebraElement),
    QRep(Representation),
    QRepDagger(Representation),
}

impl Stabilizer {
    fn local(&self, a: &HopfAlgebra) -> Result<(Parity, crate::CMat)> {
        Ok(match self {
            Stabilizer::T => (Parity::Odd, ops::pauli_x(a)?),
            Stabilizer::Q => (Parity::Even, ops::pauli_z(a)?),
            Stabilizer::TLeft(g) => (Parity::Odd, ops::x_matrix(a, XKind::Left, g)),
            Stabilizer::TRight(g) => (Parity::Odd, ops::x_matrix(a, XKind::Right, g)),
            Stabilizer::QRep(r) => (Parity::Even, ops::j_matrix(a, ZKind::Z, r)),
            Stabilizer::QRepDagger(r) => (Parity::Even, ops::j_matrix(a, ZKind::ZDagger, r)),
        })
    }
}

/// `U O(v) U⁻¹ ψ` for the chosen local operator `O`.
pub fn apply_stabilizer(
    a: &HopfAlgebra,
    k: &ClusterGraph,
    v: usize,
    flavor: &Stabilizer,
    psi: &StateVector,
) -> Result<StateVector> {
    k.check_vertex(v)?;
    let (parity, m) = flavor.local(a)?;
    if k.parity(v) != parity {
        return Err(Error::SiteParity { site: v, term: "stabilizer" });
    }
    let c = Circuit::new(a, k);
    let s = c.backward(psi)?;
    let s = s.apply(&[v], &m)?;
    c.forward(&s)
}
