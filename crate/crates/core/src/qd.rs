//! The quasi-1D quantum double lattice obtained by folding a 1D chain.
//!
//! Odd site `2k+1` becomes spoke `k`, pointing from rim vertex `w_k` down to a
//! shared hub; even site `2k` becomes tire edge `k`, pointing from `w_{k-1}`
//! to `w_k`. The embedding is stored as a rotation system (clockwise edge
//! order at each vertex); faces are traced from it, and vertex and face
//! operators read their edge orders and `L±`/`T±` choices off the embedding.

use crate::cluster::Boundary;
use crate::error::{Error, Result};
use crate::hopf::{AlgebraElement, DualElement, HopfAlgebra, Side, Sign};
use crate::lattice::{product_values, ChainModel};
use crate::ops::{self, XKind};
use crate::report::Residuals;
use crate::state::SiteLocalOp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    Rim(usize),
    Hub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QdEdge {
    /// Chain site (1-based) carried by the edge.
    pub site: usize,
    pub tail: Vertex,
    pub head: Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orient {
    Plus,
    Minus,
}

/// A vertex or face operator pattern: chain sites in clockwise order with the
/// `±` choice per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plaquette {
    pub sites: Vec<usize>,
    pub signs: Vec<Orient>,
}

#[derive(Debug, Clone)]
pub struct QdLattice {
    pub l: usize,
    pub boundary: Boundary,
    pub edges: Vec<QdEdge>,
    rotation: Vec<(Vertex, Vec<usize>)>,
    /// Vertex operator per rim vertex `w_k`, indexed by `k`.
    pub vertices: Vec<Plaquette>,
    /// Face operators keyed by the even chain site on their tire edge.
    pub faces: Vec<(usize, Plaquette)>,
}

impl QdLattice {
    pub fn fold(l: usize, boundary: Boundary) -> Result<Self> {
        let periodic = boundary == Boundary::Periodic;
        if l == 0 || (periodic && l < 2) {
            return Err(Error::InvalidSize(format!("L = {l} with {boundary:?} boundary")));
        }
        let mut edges = Vec::new();
        for k in 0..l {
            edges.push(QdEdge { site: 2 * k + 1, tail: Vertex::Rim(k), head: Vertex::Hub });
        }
        let tires = if periodic { l } else { l - 1 };
        for k in 1..=tires {
            edges.push(QdEdge { site: 2 * k, tail: Vertex::Rim(k - 1), head: Vertex::Rim(k % l) });
        }
        let find = |pred: &dyn Fn(&QdEdge) -> bool| edges.iter().position(pred);
        // Rim vertices sit clockwise around the hub in order of k: at w_k the
        // incoming tire points west, the outgoing tire east, the spoke south.
        let mut rotation = Vec::new();
        for k in 0..l {
            let mut r = Vec::new();
            if let Some(e) = find(&|e: &QdEdge| e.head == Vertex::Rim(k) && e.site.is_multiple_of(2)) {
                r.push(e);
            }
            if let Some(e) = find(&|e: &QdEdge| e.tail == Vertex::Rim(k) && e.site.is_multiple_of(2)) {
                r.push(e);
            }
            r.push(k);
            rotation.push((Vertex::Rim(k), r));
        }
        rotation.push((Vertex::Hub, (0..l).collect()));
        let mut q = QdLattice { l, boundary, edges, rotation, vertices: Vec::new(), faces: Vec::new() };
        q.vertices = (0..l).map(|k| q.vertex_plaquette(Vertex::Rim(k))).collect();
        q.faces = q.trace_faces();
        Ok(q)
    }

    fn rot(&self, v: Vertex) -> &[usize] {
        &self.rotation.iter().find(|r| r.0 == v).expect("vertex in rotation system").1
    }

    fn vertex_plaquette(&self, v: Vertex) -> Plaquette {
        let r = self.rot(v);
        Plaquette {
            sites: r.iter().map(|&e| self.edges[e].site).collect(),
            signs: r.iter().map(|&e| if self.edges[e].tail == v { Orient::Plus } else { Orient::Minus }).collect(),
        }
    }

    fn other_end(&self, e: usize, v: Vertex) -> Vertex {
        let ed = &self.edges[e];
        if ed.tail == v {
            ed.head
        } else {
            ed.tail
        }
    }

    /// Clockwise face boundaries: on arrival at `v` via `e`, leave by the edge
    /// preceding `e` in the clockwise rotation at `v`. A face is kept when it
    /// touches the hub and has exactly one tire edge, traversed along its
    /// orientation (the face lies to the right of the tire); it starts at the hub.
    fn trace_faces(&self) -> Vec<(usize, Plaquette)> {
        let mut faces = Vec::new();
        for start in 0..self.l {
            let mut darts = Vec::new();
            let (mut v, mut e) = (Vertex::Hub, start);
            loop {
                let w = self.other_end(e, v);
                darts.push((e, v, w));
                let r = self.rot(w);
                let pos = r.iter().position(|&x| x == e).expect("edge at its endpoint");
                let next = r[(pos + r.len() - 1) % r.len()];
                v = w;
                e = next;
                if (v, e) == (Vertex::Hub, start) || darts.len() > self.edges.len() * 2 {
                    break;
                }
            }
            let tires: Vec<_> = darts.iter().filter(|d| self.edges[d.0].site.is_multiple_of(2)).collect();
            let closed = (v, e) == (Vertex::Hub, start);
            if let ([t], true) = (tires.as_slice(), closed) {
                if self.edges[t.0].tail != t.1 {
                    continue;
                }
                let sites = darts.iter().map(|d| self.edges[d.0].site).collect();
                let signs = darts
                    .iter()
                    .map(|&(e, from, _)| if self.edges[e].tail == from { Orient::Plus } else { Orient::Minus })
                    .collect();
                faces.push((self.edges[t.0].site, Plaquette { sites, signs }));
            }
        }
        faces.sort_by_key(|f| f.0);
        faces
    }

    /// `A^h` at the rim vertex carrying odd site `i`.
    pub fn vertex_op(&self, a: &HopfAlgebra, i: usize, h: &AlgebraElement) -> Result<SiteLocalOp> {
        if i.is_multiple_of(2) || i / 2 >= self.l {
            return Err(Error::SiteParity { site: i, term: "vertex operator" });
        }
        let p = &self.vertices[i / 2];
        let t = a.comultiply_n(h, p.sites.len());
        let fams: Vec<_> = p
            .signs
            .iter()
            .map(|s| match s {
                Orient::Plus => ops::x_family(a, XKind::Left),
                Orient::Minus => ops::x_family(a, XKind::Right),
            })
            .collect();
        Ok(SiteLocalOp::new(format!("A_v({i})"), p.sites.iter().map(|s| s - 1).collect(), ops::product_kernel(&t.tensor, &fams)))
    }

    /// `B^φ` on the face whose tire edge carries even site `j`.
    pub fn face_op(&self, a: &HopfAlgebra, j: usize, phi: &DualElement) -> Result<SiteLocalOp> {
        let p = &self.faces.iter().find(|f| f.0 == j).ok_or(Error::SiteParity { site: j, term: "face operator" })?.1;
        let coeffs = product_values(a, phi, p.sites.len());
        let fams: Vec<_> = p
            .signs
            .iter()
            .map(|s| match s {
                Orient::Plus => ops::t_family(a, Sign::Plus, Side::Left),
                Orient::Minus => ops::t_family(a, Sign::Minus, Side::Left),
            })
            .collect();
        Ok(SiteLocalOp::new(format!("B_f({j})"), p.sites.iter().map(|s| s - 1).collect(), ops::product_kernel(&coeffs, &fams)))
    }
}

/// Compares the chain Hamiltonian terms with the folded quantum-double
/// operators on every product basis state. Returns the residuals and the
/// number of basis states per comparison.
pub fn check_qd(model: &ChainModel) -> Result<(Residuals, usize)> {
    let a = model.algebra;
    let q = QdLattice::fold(model.l, model.boundary)?;
    let dims = model.dims();
    crate::state::check_budget(&dims)?;
    let lam = a.haar_integral()?;
    let haar = a.haar_measure()?;
    let mut out = Residuals::new();
    let mut states = 0;
    for i in model.odd_sites() {
        let (r, n) = model.a_haar(i)?.op.basis_residual(&q.vertex_op(a, i, lam)?, &dims)?;
        out.record("A_i - A_v", r);
        states = n;
    }
    for (j, _) in &q.faces {
        for (g, irrep) in model.irreps.iter().enumerate() {
            let (r, _) = model.b_rep_term(*j, g)?.op.basis_residual(&q.face_op(a, *j, &irrep.character())?, &dims)?;
            out.record("B^G_j - B_f^chi", r);
        }
        let (r, _) = model.b_term(*j)?.op.basis_residual(&q.face_op(a, *j, haar)?, &dims)?;
        out.record("B_j - B_f^Haar", r);
    }
    Ok((out, states))
}
