//! Hopf tensor networks: structure-constant and vertex tensors, exact
//! contraction to state vectors, and the local rewrite identities.
//!
//! Tensor data is row-major with leg 0 slowest. A leg carrying an algebra
//! element holds its coefficients in the fixed basis; a linear map `f` with
//! `f(g_a) = Σ_b F_ab g_b` is a tensor with legs `[in a, out b]`.

mod build;
mod rules;

pub use build::*;
pub use rules::*;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, C64, ZERO};
use crate::state::{self, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LegKind {
    Virtual,
    Physical,
    Rep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Leg {
    pub kind: LegKind,
    pub dim: usize,
}

impl Leg {
    pub fn virt(dim: usize) -> Self {
        Leg { kind: LegKind::Virtual, dim }
    }

    pub fn physical(dim: usize) -> Self {
        Leg { kind: LegKind::Physical, dim }
    }

    pub fn rep(dim: usize) -> Self {
        Leg { kind: LegKind::Rep, dim }
    }

    fn compatible(self, other: Leg) -> bool {
        self.dim == other.dim && ((self.kind == LegKind::Rep) == (other.kind == LegKind::Rep))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    Mul,
    Comul,
    Antipode,
    Counit,
    Unit,
    Element,
    OddVertex,
    EvenVertex,
    RepMatrix,
    /// A multilinear functional on its legs.
    Functional,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorNode {
    pub kind: NodeKind,
    pub label: String,
    pub legs: Vec<Leg>,
    pub data: Vec<C64>,
}

impl TensorNode {
    pub fn new(kind: NodeKind, label: impl Into<String>, legs: Vec<Leg>, data: Vec<C64>) -> Result<Self> {
        let size: usize = legs.iter().map(|l| l.dim).product();
        if size != data.len() {
            return Err(Error::DimensionMismatch(format!("tensor data has {} entries, legs need {size}", data.len())));
        }
        Ok(TensorNode { kind, label: label.into(), legs, data })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.legs.iter().map(|l| l.dim).collect()
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        self.data[flat(&self.dims(), idx)]
    }
}

/// A leg of a node inside a network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LegRef {
    pub node: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, Default)]
pub struct TensorNetwork {
    pub nodes: Vec<TensorNode>,
    pub bonds: Vec<(LegRef, LegRef)>,
    /// Dangling legs in output order.
    pub open: Vec<LegRef>,
    /// Bond sequence used when `contract` is called without one.
    pub default_order: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeDump {
    pub id: usize,
    pub kind: NodeKind,
    pub label: String,
    pub legs: Vec<Leg>,
    pub data: String,
    pub entries: usize,
    pub norm: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NetworkDump {
    pub nodes: Vec<NodeDump>,
    pub bonds: Vec<(LegRef, LegRef)>,
    pub open: Vec<LegRef>,
}

impl TensorNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, node: TensorNode) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn leg(&self, r: LegRef) -> Result<Leg> {
        self.nodes
            .get(r.node)
            .and_then(|n| n.legs.get(r.slot))
            .copied()
            .ok_or_else(|| Error::DimensionMismatch(format!("no leg {}:{}", r.node, r.slot)))
    }

    fn used(&self, r: LegRef) -> bool {
        self.open.contains(&r) || self.bonds.iter().any(|&(x, y)| x == r || y == r)
    }

    /// Joins two legs; a leg may take part in one bond or be open, not both.
    pub fn bond(&mut self, x: LegRef, y: LegRef) -> Result<usize> {
        let (lx, ly) = (self.leg(x)?, self.leg(y)?);
        if !lx.compatible(ly) {
            return Err(Error::DimensionMismatch(format!("cannot bond {lx:?} with {ly:?}")));
        }
        if x == y || self.used(x) || self.used(y) {
            return Err(Error::DimensionMismatch(format!("leg {}:{} or {}:{} already used", x.node, x.slot, y.node, y.slot)));
        }
        self.bonds.push((x, y));
        Ok(self.bonds.len() - 1)
    }

    pub fn expose(&mut self, r: LegRef) -> Result<()> {
        self.leg(r)?;
        if self.used(r) {
            return Err(Error::DimensionMismatch(format!("leg {}:{} already used", r.node, r.slot)));
        }
        self.open.push(r);
        Ok(())
    }

    /// Every leg must be bonded or open.
    pub fn validate(&self) -> Result<()> {
        for (n, node) in self.nodes.iter().enumerate() {
            for slot in 0..node.legs.len() {
                if !self.used(LegRef { node: n, slot }) {
                    return Err(Error::DimensionMismatch(format!("leg {n}:{slot} of {} is dangling", node.label)));
                }
            }
        }
        Ok(())
    }

    pub fn dump(&self) -> NetworkDump {
        NetworkDump {
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, n)| NodeDump {
                    id,
                    kind: n.kind,
                    label: n.label.clone(),
                    legs: n.legs.clone(),
                    data: format!("node{id}"),
                    entries: n.data.len(),
                    norm: n.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
                })
                .collect(),
            bonds: self.bonds.clone(),
            open: self.open.clone(),
        }
    }

    /// Contracts every bond. Bonds named in `order` (or the default order) go
    /// first; the rest are contracted greedily, always merging the connected
    /// pair with the smallest result. Open legs come out in `open` order.
    pub fn contract(&self, order: Option<&[usize]>) -> Result<StateVector> {
        self.validate()?;
        let mut works: Vec<Work> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(n, node)| Work {
                legs: (0..node.legs.len()).map(|slot| LegRef { node: n, slot }).collect(),
                dims: node.dims(),
                data: node.data.clone(),
            })
            .collect();
        let mut pending: Vec<bool> = vec![true; self.bonds.len()];
        let owner = |works: &[Work], r: LegRef| works.iter().position(|w| w.legs.contains(&r)).expect("leg owned");

        let trace_all = |works: &mut Vec<Work>, pending: &mut Vec<bool>| {
            for (b, &(x, y)) in self.bonds.iter().enumerate() {
                if pending[b] {
                    let (i, j) = (owner(works, x), owner(works, y));
                    if i == j {
                        works[i] = works[i].trace(x, y);
                        pending[b] = false;
                    }
                }
            }
        };
        trace_all(&mut works, &mut pending);

        let merge = |works: &mut Vec<Work>, pending: &mut Vec<bool>, i: usize, j: usize| -> Result<()> {
            let (i, j) = (i.min(j), i.max(j));
            let shared: Vec<usize> = (0..self.bonds.len())
                .filter(|&b| {
                    pending[b] && {
                        let (x, y) = self.bonds[b];
                        let (ox, oy) = (owner(works, x), owner(works, y));
                        (ox == i && oy == j) || (ox == j && oy == i)
                    }
                })
                .collect();
            let pairs: Vec<(LegRef, LegRef)> = shared
                .iter()
                .map(|&b| {
                    let (x, y) = self.bonds[b];
                    if works[i].legs.contains(&x) {
                        (x, y)
                    } else {
                        (y, x)
                    }
                })
                .collect();
            let wj = works.remove(j);
            let merged = works[i].contract_with(&wj, &pairs)?;
            works[i] = merged;
            for b in shared {
                pending[b] = false;
            }
            Ok(())
        };

        let merged_size = |works: &[Work], i: usize, j: usize| -> u128 {
            let (wi, wj) = (&works[i], &works[j]);
            let bonded = |k: usize, w: &Work, v: &Work| {
                self.bonds.iter().any(|&(x, y)| (x == w.legs[k] && v.legs.contains(&y)) || (y == w.legs[k] && v.legs.contains(&x)))
            };
            let free = |w: &Work, v: &Work| {
                (0..w.legs.len()).filter(|&k| !bonded(k, w, v)).fold(1u128, |acc, k| acc.saturating_mul(w.dims[k] as u128))
            };
            free(wi, wj).saturating_mul(free(wj, wi))
        };
        let order = order.or(self.default_order.as_deref());
        for &b in order.unwrap_or(&[]) {
            if b >= self.bonds.len() {
                return Err(Error::DimensionMismatch(format!("bond {b} out of range")));
            }
            if pending[b] {
                let (x, y) = self.bonds[b];
                let (i, j) = (owner(&works, x), owner(&works, y));
                merge(&mut works, &mut pending, i, j)?;
            }
        }
        while let Some((i, j)) = {
            let mut best: Option<(u128, usize, usize)> = None;
            for (b, &(x, y)) in self.bonds.iter().enumerate() {
                if !pending[b] {
                    continue;
                }
                let (i, j) = (owner(&works, x), owner(&works, y));
                let size = merged_size(&works, i, j);
                if best.is_none_or(|(s, _, _)| size < s) {
                    best = Some((size, i, j));
                }
            }
            best.map(|(_, i, j)| (i, j))
        } {
            merge(&mut works, &mut pending, i, j)?;
        }
        while works.len() > 1 {
            works.sort_by_key(|w| w.data.len());
            let b = works.remove(1);
            works[0] = works[0].contract_with(&b, &[])?;
        }
        let w = works.pop().unwrap_or(Work { legs: vec![], dims: vec![], data: vec![linalg::ONE] });
        let perm: Vec<usize> = self.open.iter().map(|r| w.legs.iter().position(|l| l == r).expect("open leg")).collect();
        let dims: Vec<usize> = perm.iter().map(|&p| w.dims[p]).collect();
        StateVector::new(dims, permute(&w.data, &w.dims, &perm))
    }
}

struct Work {
    legs: Vec<LegRef>,
    dims: Vec<usize>,
    data: Vec<C64>,
}

impl Work {
    fn trace(&self, x: LegRef, y: LegRef) -> Work {
        let px = self.legs.iter().position(|&l| l == x).expect("leg");
        let py = self.legs.iter().position(|&l| l == y).expect("leg");
        let keep: Vec<usize> = (0..self.legs.len()).filter(|&k| k != px && k != py).collect();
        let dims: Vec<usize> = keep.iter().map(|&k| self.dims[k]).collect();
        let mut data = vec![ZERO; dims.iter().product()];
        let st = strides(&self.dims);
        let nst = strides(&dims);
        for (idx, &v) in self.data.iter().enumerate() {
            let digit = |k: usize| (idx / st[k]) % self.dims[k];
            if digit(px) != digit(py) {
                continue;
            }
            let t: usize = keep.iter().zip(&nst).map(|(&k, s)| digit(k) * s).sum();
            data[t] += v;
        }
        Work { legs: keep.iter().map(|&k| self.legs[k]).collect(), dims, data }
    }

    /// Sums over the paired legs (`pairs[k].0` on self, `.1` on other).
    fn contract_with(&self, other: &Work, pairs: &[(LegRef, LegRef)]) -> Result<Work> {
        let sa: Vec<usize> = pairs.iter().map(|p| self.legs.iter().position(|&l| l == p.0).expect("leg")).collect();
        let sb: Vec<usize> = pairs.iter().map(|p| other.legs.iter().position(|&l| l == p.1).expect("leg")).collect();
        let fa: Vec<usize> = (0..self.legs.len()).filter(|k| !sa.contains(k)).collect();
        let fb: Vec<usize> = (0..other.legs.len()).filter(|k| !sb.contains(k)).collect();
        let m: usize = fa.iter().map(|&k| self.dims[k]).product();
        let k: usize = sa.iter().map(|&k| self.dims[k]).product();
        let n: usize = fb.iter().map(|&k| other.dims[k]).product();
        let needed = (m as u128) * (n as u128);
        let budget = state::amplitude_budget();
        if needed > budget {
            return Err(Error::ContractionBudgetExceeded { needed, budget });
        }
        let pa: Vec<usize> = fa.iter().chain(&sa).copied().collect();
        let pb: Vec<usize> = sb.iter().chain(&fb).copied().collect();
        let a = permute(&self.data, &self.dims, &pa);
        let b = permute(&other.data, &other.dims, &pb);
        // Row-major m×k and k×n are column-major k×m and n×k: Cᵀ = Bᵀ Aᵀ.
        let at = nalgebra::DMatrix::from_column_slice(k, m, &a);
        let bt = nalgebra::DMatrix::from_column_slice(n, k, &b);
        let ct = bt * at;
        Ok(Work {
            legs: fa.iter().map(|&x| self.legs[x]).chain(fb.iter().map(|&x| other.legs[x])).collect(),
            dims: fa.iter().map(|&x| self.dims[x]).chain(fb.iter().map(|&x| other.dims[x])).collect(),
            data: ct.as_slice().to_vec(),
        })
    }
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

fn flat(dims: &[usize], idx: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

/// Reorders axes so that new axis `k` is old axis `perm[k]`.
pub fn permute(data: &[C64], dims: &[usize], perm: &[usize]) -> Vec<C64> {
    let st = strides(dims);
    let nd: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let nst = strides(&nd);
    let mut out = vec![ZERO; data.len()];
    for (idx, &v) in data.iter().enumerate() {
        let t: usize = perm.iter().zip(&nst).map(|(&p, s)| ((idx / st[p]) % dims[p]) * s).sum();
        out[t] = v;
    }
    out
}
