//! JSON file formats for algebras, cluster graphs and hypergraphs.
//!
//! Complex numbers are `[re, im]` pairs. Structure constants are sparse
//! `[a, b, c, re, im]` lists sorted by index with zeros omitted, which makes
//! the serialized form canonical.

use serde::{Deserialize, Serialize};

use crate::cluster::{self, ClusterGraph, Orientation};
use crate::error::{Error, Result};
use crate::hopf::{AlgebraData, AlgebraElement, DualElement, HopfAlgebra, DEFAULT_TOLERANCE};
use crate::hypergraph::{EdgeFunctional, HopfHyperedge, HopfHypergraph, QuditHyperedge, QuditHypergraph, Slot};
use crate::linalg::{self, CMat, C64};
use crate::rep::Representation;
use crate::zoo::{self, GroupSpec};

pub type Complex = [f64; 2];

fn cx(z: C64) -> Complex {
    [z.re, z.im]
}

fn from_cx(z: &Complex) -> C64 {
    C64::new(z[0], z[1])
}

fn matrix_to_rows(m: &CMat) -> Vec<Vec<Complex>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| cx(m[(r, c)])).collect()).collect()
}

fn rows_to_matrix(rows: &[Vec<Complex>], what: &str) -> Result<CMat> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::DimensionMismatch(format!("{what} rows have unequal length")));
    }
    Ok(CMat::from_fn(n, m, |r, c| from_cx(&rows[r][c])))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrrepFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dim: usize,
    /// One `dim × dim` matrix per basis element.
    pub matrices: Vec<Vec<Vec<Complex>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_labels: Option<Vec<String>>,
    /// `[a, b, c, re, im]`: `g_a g_b ∋ (re + i im) g_c`.
    pub mul: Vec<(usize, usize, usize, f64, f64)>,
    /// `[a, b, c, re, im]`: `Δ(g_a) ∋ (re + i im) g_b ⊗ g_c`.
    pub comul: Vec<(usize, usize, usize, f64, f64)>,
    pub counit: Vec<Complex>,
    pub antipode: Vec<Vec<Complex>>,
    pub star_matrix: Vec<Vec<Complex>>,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub star_conjugate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreps: Option<Vec<IrrepFile>>,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn sparse(t: &[C64], d: usize) -> Vec<(usize, usize, usize, f64, f64)> {
    t.iter()
        .enumerate()
        .filter(|(_, z)| **z != C64::new(0.0, 0.0))
        .map(|(i, z)| (i / (d * d), (i / d) % d, i % d, z.re, z.im))
        .collect()
}

fn dense(triples: &[(usize, usize, usize, f64, f64)], d: usize, what: &str) -> Result<Vec<C64>> {
    let mut t = vec![linalg::ZERO; d * d * d];
    for &(a, b, c, re, im) in triples {
        if a >= d || b >= d || c >= d {
            return Err(Error::DimensionMismatch(format!("{what} entry ({a}, {b}, {c}) out of range for dim {d}")));
        }
        t[(a * d + b) * d + c] += C64::new(re, im);
    }
    Ok(t)
}

impl AlgebraFile {
    pub fn from_algebra(a: &HopfAlgebra, irreps: Option<&[Representation]>) -> Self {
        let data = a.data();
        let d = data.dim;
        let default_labels: Vec<String> = (0..d).map(|i| format!("g{i}")).collect();
        AlgebraFile {
            name: Some(data.name.clone()),
            dim: d,
            basis_labels: (data.labels != default_labels).then(|| data.labels.clone()),
            mul: sparse(&data.mul, d),
            comul: sparse(&data.comul, d),
            counit: data.counit.iter().map(|&z| cx(z)).collect(),
            antipode: matrix_to_rows(&data.antipode),
            star_matrix: matrix_to_rows(&data.star),
            star_conjugate: data.star_conjugate,
            tolerance: (data.tolerance != DEFAULT_TOLERANCE).then_some(data.tolerance),
            irreps: irreps.map(|rs| {
                rs.iter()
                    .map(|r| IrrepFile {
                        label: Some(r.label.clone()),
                        dim: r.dim,
                        matrices: r.matrices.iter().map(matrix_to_rows).collect(),
                    })
                    .collect()
            }),
        }
    }

    /// Shape-checked raw data; axioms are not checked here.
    pub fn to_data(&self) -> Result<AlgebraData> {
        let d = self.dim;
        let mut data = AlgebraData::zeros(self.name.clone().unwrap_or_else(|| "file".into()), d);
        if let Some(l) = &self.basis_labels {
            data.labels = l.clone();
        }
        data.mul = dense(&self.mul, d, "mul")?;
        data.comul = dense(&self.comul, d, "comul")?;
        data.counit = self.counit.iter().map(from_cx).collect();
        data.antipode = rows_to_matrix(&self.antipode, "antipode")?;
        data.star = rows_to_matrix(&self.star_matrix, "star_matrix")?;
        data.star_conjugate = self.star_conjugate;
        if let Some(t) = self.tolerance {
            data.tolerance = t;
        }
        data.check_shapes()?;
        Ok(data)
    }

    pub fn irreps(&self) -> Result<Option<Vec<Representation>>> {
        let Some(list) = &self.irreps else { return Ok(None) };
        list.iter()
            .enumerate()
            .map(|(i, r)| {
                let mats = r.matrices.iter().map(|m| rows_to_matrix(m, "irrep")).collect::<Result<Vec<_>>>()?;
                if mats.len() != self.dim || mats.iter().any(|m| m.shape() != (r.dim, r.dim)) {
                    return Err(Error::InvalidRepresentation(format!("irrep {i} needs {} matrices of size {}", self.dim, r.dim)));
                }
                Representation::new(r.label.clone().unwrap_or_else(|| format!("irrep{i}")), mats)
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }
}

/// A group given by its table; loaded as `ℂ[G]`, or `F(G)` when `dual` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub dual: bool,
}

impl GroupFile {
    pub fn to_algebra(&self) -> Result<HopfAlgebra> {
        let n = self.table.len();
        let labels = self.labels.clone().unwrap_or_else(|| (0..n).map(|i| format!("x{i}")).collect());
        let g = GroupSpec::from_table(self.name.clone().unwrap_or_else(|| "G".into()), labels, self.table.clone())?;
        if self.dual {
            zoo::function_algebra(&g)
        } else {
            zoo::group_algebra(&g)
        }
    }
}

/// A loaded algebra with any irreps supplied by the file.
pub struct LoadedAlgebra {
    pub algebra: HopfAlgebra,
    pub irreps: Option<Vec<Representation>>,
}

/// Parses an algebra file (structure constants or group table) and runs the
/// axiom suite.
pub fn parse_algebra(text: &str) -> Result<LoadedAlgebra> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("table").is_some() {
        let g: GroupFile = serde_json::from_value(value)?;
        return Ok(LoadedAlgebra { algebra: g.to_algebra()?, irreps: None });
    }
    let f: AlgebraFile = serde_json::from_value(value)?;
    let algebra = HopfAlgebra::new(f.to_data()?)?;
    Ok(LoadedAlgebra { algebra, irreps: f.irreps()? })
}

pub fn serialize_algebra(a: &HopfAlgebra, irreps: Option<&[Representation]>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&AlgebraFile::from_algebra(a, irreps))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientationFile {
    OddToEven,
    EvenToOdd,
}

/// `(odd_id, even_id, orientation)`, ids counted separately per parity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeFile(pub usize, pub usize, pub OrientationFile);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub odd: usize,
    pub even: usize,
    pub edges: Vec<EdgeFile>,
    /// Global order as a permutation of edge indices; listing order if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    #[serde(default)]
    pub lattice: bool,
}

impl GraphFile {
    /// Odd vertices become `0..odd`, even vertices `odd..odd+even`.
    pub fn to_graph(&self) -> Result<ClusterGraph> {
        let mut directed = Vec::with_capacity(self.edges.len());
        for EdgeFile(o, e, orient) in &self.edges {
            if *o >= self.odd {
                return Err(Error::UnknownVertex(format!("odd {o}")));
            }
            if *e >= self.even {
                return Err(Error::UnknownVertex(format!("even {e}")));
            }
            let (o, e) = (*o, self.odd + e);
            directed.push(match orient {
                OrientationFile::OddToEven => (o, e),
                OrientationFile::EvenToOdd => (e, o),
            });
        }
        let k = cluster::build_cluster_graph(self.odd, self.even, &directed, self.order.as_deref())?;
        if self.lattice {
            k.into_lattice()
        } else {
            Ok(k)
        }
    }

    /// Edges are written in global order.
    pub fn from_graph(k: &ClusterGraph) -> Self {
        let rank: Vec<usize> = (0..k.num_vertices())
            .map(|v| (0..v).filter(|&u| k.parity(u) == k.parity(v)).count())
            .collect();
        GraphFile {
            odd: k.odd_vertices().len(),
            even: k.even_vertices().len(),
            edges: k
                .edges()
                .iter()
                .map(|e| {
                    let o = match e.orientation {
                        Orientation::OddToEven => OrientationFile::OddToEven,
                        Orientation::EvenToOdd => OrientationFile::EvenToOdd,
                    };
                    EdgeFile(rank[e.odd], rank[e.even], o)
                })
                .collect(),
            order: None,
            lattice: k.is_lattice(),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<ClusterGraph> {
    serde_json::from_str::<GraphFile>(text)?.to_graph()
}

pub fn serialize_graph(k: &ClusterGraph) -> Result<String> {
    Ok(serde_json::to_string_pretty(&GraphFile::from_graph(k))?)
}

/// A vertex state: a label or explicit coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Label(String),
    Coeffs(Vec<Complex>),
}

/// A dual element: a label or explicit values on the basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DualSpec {
    Label(String),
    Coeffs(Vec<Complex>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalSpec {
    /// Qudit mode: `θ(I)` row-major.
    PhaseTable(Vec<f64>),
    /// Hopf mode: values on basis tuples.
    Table(Vec<Complex>),
    /// Hopf mode: `φ(x_1 ⋯ x_m)`.
    Dual(DualSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlotFile {
    Own,
    Edge(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperedgeFile {
    pub vertices: Vec<usize>,
    pub functional: FunctionalSpec,
    #[serde(default = "yes")]
    pub directed: bool,
    #[serde(default = "one")]
    pub multiplicity: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypergraphMode {
    Qudit,
    Hopf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphFile {
    pub mode: HypergraphMode,
    /// Qudit mode: local dimensions (default 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    pub vertices: Vec<StateSpec>,
    pub hyperedges: Vec<HyperedgeFile>,
    /// Hopf mode: local orderings; incident edges then own slot if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<Vec<SlotFile>>>,
}

pub enum Hypergraph {
    Qudit(QuditHypergraph),
    Hopf(HopfHypergraph),
}

/// Qudit labels: `zero`, `plus` (uniform superposition), `basis:k`.
fn qudit_state(s: &StateSpec, d: usize) -> Result<Vec<C64>> {
    match s {
        StateSpec::Coeffs(c) => Ok(c.iter().map(from_cx).collect()),
        StateSpec::Label(l) => {
            let mut v = vec![linalg::ZERO; d];
            match l.as_str() {
                "zero" => v[0] = linalg::ONE,
                "plus" => v.iter_mut().for_each(|z| *z = C64::new(1.0 / (d as f64).sqrt(), 0.0)),
                other => {
                    let k = basis_index(other, d)?;
                    v[k] = linalg::ONE;
                }
            }
            Ok(v)
        }
    }
}

fn basis_index(label: &str, d: usize) -> Result<usize> {
    label
        .strip_prefix("basis:")
        .and_then(|k| k.parse::<usize>().ok())
        .filter(|&k| k < d)
        .ok_or_else(|| Error::Parse(format!("unknown state label `{label}`")))
}

/// Hopf labels: `unit`, `haar` (`λ`), `trivial` (`√|𝒜| λ`), `basis:k`.
pub fn algebra_state(a: &HopfAlgebra, s: &StateSpec) -> Result<AlgebraElement> {
    match s {
        StateSpec::Coeffs(c) => a.element(c.iter().map(from_cx).collect()),
        StateSpec::Label(l) => match l.as_str() {
            "unit" => Ok(a.unit()),
            "haar" => Ok(a.haar_integral()?.clone()),
            "trivial" => a.trivial_state(),
            other => Ok(a.basis(basis_index(other, a.dim())?)),
        },
    }
}

/// Dual labels: `counit`, `haar` (`Λ`), `delta:k` (dual basis).
pub fn dual_element(a: &HopfAlgebra, s: &DualSpec) -> Result<DualElement> {
    let d = a.dim();
    match s {
        DualSpec::Coeffs(c) if c.len() == d => Ok(DualElement::new(c.iter().map(from_cx).collect())),
        DualSpec::Coeffs(c) => Err(Error::DimensionMismatch(format!("dual element of length {} in dimension {d}", c.len()))),
        DualSpec::Label(l) => match l.as_str() {
            "counit" => Ok(a.counit_dual()),
            "haar" => Ok(a.haar_measure()?.clone()),
            other => {
                let k = other
                    .strip_prefix("delta:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k < d)
                    .ok_or_else(|| Error::Parse(format!("unknown dual label `{other}`")))?;
                let mut v = vec![linalg::ZERO; d];
                v[k] = linalg::ONE;
                Ok(DualElement::new(v))
            }
        },
    }
}

impl HypergraphFile {
    pub fn build(&self, a: Option<&HopfAlgebra>) -> Result<Hypergraph> {
        match self.mode {
            HypergraphMode::Qudit => {
                let n = self.vertices.len();
                let dims = self.dims.clone().unwrap_or_else(|| vec![2; n]);
                if dims.len() != n {
                    return Err(Error::DimensionMismatch(format!("{} dims for {n} vertices", dims.len())));
                }
                let initial = self.vertices.iter().zip(&dims).map(|(s, &d)| qudit_state(s, d)).collect::<Result<_>>()?;
                let edges = self
                    .hyperedges
                    .iter()
                    .enumerate()
                    .map(|(e, h)| match &h.functional {
                        FunctionalSpec::PhaseTable(t) => Ok(QuditHyperedge {
                            vertices: h.vertices.clone(),
                            theta: t.clone(),
                            directed: h.directed,
                            multiplicity: h.multiplicity,
                        }),
                        _ => Err(Error::Parse(format!("hyperedge {e}: qudit mode needs a phase_table"))),
                    })
                    .collect::<Result<_>>()?;
                let g = QuditHypergraph { dims, initial, edges };
                g.validate()?;
                Ok(Hypergraph::Qudit(g))
            }
            HypergraphMode::Hopf => {
                let a = a.ok_or_else(|| Error::Parse("Hopf mode needs an algebra".into()))?;
                let states = self.vertices.iter().map(|s| algebra_state(a, s)).collect::<Result<_>>()?;
                let mut edges = Vec::new();
                for (e, h) in self.hyperedges.iter().enumerate() {
                    let functional = match &h.functional {
                        FunctionalSpec::Table(t) => EdgeFunctional::Table(t.iter().map(from_cx).collect()),
                        FunctionalSpec::Dual(s) => EdgeFunctional::Product(dual_element(a, s)?),
                        FunctionalSpec::PhaseTable(_) => {
                            return Err(Error::Parse(format!("hyperedge {e}: phase tables are for qudit mode")));
                        }
                    };
                    for _ in 0..h.multiplicity {
                        edges.push(HopfHyperedge { vertices: h.vertices.clone(), functional: functional.clone(), directed: h.directed });
                    }
                }
                let mut g = HopfHypergraph::new(states, edges);
                if let Some(o) = &self.ordering {
                    if self.hyperedges.iter().any(|h| h.multiplicity != 1) {
                        return Err(Error::Parse("explicit orderings need multiplicity 1 on every hyperedge".into()));
                    }
                    g.ordering = o
                        .iter()
                        .map(|row| row.iter().map(|s| match s {
                            SlotFile::Own => Slot::Own,
                            SlotFile::Edge(e) => Slot::Edge(*e),
                        }).collect())
                        .collect();
                }
                g.validate(a)?;
                Ok(Hypergraph::Hopf(g))
            }
        }
    }
}

pub fn parse_hypergraph(text: &str, a: Option<&HopfAlgebra>) -> Result<Hypergraph> {
    serde_json::from_str::<HypergraphFile>(text)?.build(a)
}
