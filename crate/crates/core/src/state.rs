//! Multi-site state vectors with site-local kernel application.
//!
//! Amplitudes are row-major with site 0 slowest. Operators are never expanded
//! to the full Hilbert space: a kernel on `k` sites is applied by gathering the
//! targeted sub-vector for every configuration of the other sites.

use std::cell::Cell;
use std::ops::{Add, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64, ZERO};

pub const DEFAULT_BUDGET: u128 = 1 << 26;

thread_local! {
    static BUDGET_OVERRIDE: Cell<u128> = const { Cell::new(0) };
}

/// Overrides the amplitude budget on the current thread; `None` restores the default.
pub fn set_amplitude_budget(budget: Option<u128>) {
    BUDGET_OVERRIDE.with(|b| b.set(budget.map_or(0, |x| x.max(1))));
}

/// Maximum number of amplitudes a state may hold: the explicit override, else
/// `HOPFSTATE_BUDGET`, else 2^26.
pub fn amplitude_budget() -> u128 {
    match BUDGET_OVERRIDE.with(Cell::get) {
        0 => std::env::var("HOPFSTATE_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse::<u128>().ok())
            .filter(|&b| b > 0)
            .unwrap_or(DEFAULT_BUDGET),
        b => b,
    }
}

pub(crate) fn check_budget(dims: &[usize]) -> Result<usize> {
    let needed = dims.iter().fold(1u128, |acc, &d| acc.saturating_mul(d as u128));
    let budget = amplitude_budget();
    if needed > budget {
        return Err(Error::MemoryBudgetExceeded { needed, budget });
    }
    Ok(needed as usize)
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Offsets of every multi-index over `sites`, row-major in the given site order.
fn offsets(dims: &[usize], st: &[usize], sites: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &s in sites {
        let mut next = Vec::with_capacity(out.len() * dims[s]);
        for &o in &out {
            for i in 0..dims[s] {
                next.push(o + i * st[s]);
            }
        }
        out = next;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(dims: Vec<usize>, amps: Vec<C64>) -> Result<Self> {
        let n = check_budget(&dims)?;
        if amps.len() != n {
            return Err(Error::DimensionMismatch(format!("{} amplitudes for {n} basis states", amps.len())));
        }
        Ok(StateVector { dims, amps })
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        let n = check_budget(&dims)?;
        Ok(StateVector { dims, amps: vec![ZERO; n] })
    }

    pub fn basis_state(dims: Vec<usize>, index: &[usize]) -> Result<Self> {
        if index.len() != dims.len() || index.iter().zip(&dims).any(|(i, d)| i >= d) {
            return Err(Error::SiteMismatch(format!("basis index {index:?} for dims {dims:?}")));
        }
        let mut s = Self::zeros(dims)?;
        let st = strides(&s.dims);
        let pos: usize = index.iter().zip(&st).map(|(i, s)| i * s).sum();
        s.amps[pos] = linalg::ONE;
        Ok(s)
    }

    /// `v_0 ⊗ v_1 ⊗ …`.
    pub fn product(factors: &[Vec<C64>]) -> Result<Self> {
        let dims: Vec<usize> = factors.iter().map(|f| f.len()).collect();
        check_budget(&dims)?;
        let mut amps = vec![linalg::ONE];
        for f in factors {
            let mut next = Vec::with_capacity(amps.len() * f.len());
            for &a in &amps {
                next.extend(f.iter().map(|&x| a * x));
            }
            amps = next;
        }
        Ok(StateVector { dims, amps })
    }

    pub fn random<R: Rng + ?Sized>(dims: Vec<usize>, rng: &mut R) -> Result<Self> {
        let n = check_budget(&dims)?;
        Ok(StateVector { dims, amps: linalg::random_vector(rng, n) })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    pub fn num_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    /// Amplitude at a multi-index.
    pub fn get(&self, index: &[usize]) -> C64 {
        let st = strides(&self.dims);
        self.amps[index.iter().zip(&st).map(|(i, s)| i * s).sum::<usize>()]
    }

    fn check_targets(&self, targets: &[usize]) -> Result<usize> {
        let mut n = 1;
        for (k, &t) in targets.iter().enumerate() {
            if t >= self.dims.len() {
                return Err(Error::SiteMismatch(format!("site {t} out of range for {} sites", self.dims.len())));
            }
            if targets[..k].contains(&t) {
                return Err(Error::SiteMismatch(format!("site {t} targeted twice")));
            }
            n *= self.dims[t];
        }
        Ok(n)
    }

    /// Applies `kernel` to the listed sites; kernel rows and columns are
    /// row-major multi-indices over `targets` in the given order.
    pub fn apply(&self, targets: &[usize], kernel: &CMat) -> Result<Self> {
        let n = self.check_targets(targets)?;
        if kernel.shape() != (n, n) {
            return Err(Error::SiteMismatch(format!(
                "kernel is {}x{}, targeted sites span {n}",
                kernel.nrows(),
                kernel.ncols()
            )));
        }
        let mut entries = Vec::new();
        for c in 0..n {
            for r in 0..n {
                let v = kernel[(r, c)];
                if !linalg::is_zero(v) {
                    entries.push((r, c, v));
                }
            }
        }
        let st = strides(&self.dims);
        let others: Vec<usize> = (0..self.dims.len()).filter(|s| !targets.contains(s)).collect();
        let inner = offsets(&self.dims, &st, targets);
        let outer = offsets(&self.dims, &st, &others);
        let mut out = vec![ZERO; self.amps.len()];
        let mut buf = vec![ZERO; n];
        for &base in &outer {
            buf.iter_mut().for_each(|z| *z = ZERO);
            for &(r, c, v) in &entries {
                buf[r] += v * self.amps[base + inner[c]];
            }
            for (r, &z) in buf.iter().enumerate() {
                out[base + inner[r]] = z;
            }
        }
        Ok(StateVector { dims: self.dims.clone(), amps: out })
    }

    pub fn apply_op(&self, op: &SiteLocalOp) -> Result<Self> {
        self.apply(&op.targets, &op.kernel)
    }

    /// `ψ ⊗ v` with `v` as a new last site.
    pub fn append_site(&self, v: &[C64]) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims.push(v.len());
        check_budget(&dims)?;
        let mut amps = Vec::with_capacity(self.amps.len() * v.len());
        for &a in &self.amps {
            amps.extend(v.iter().map(|&x| a * x));
        }
        Ok(StateVector { dims, amps })
    }

    /// Reshapes the last site of dimension `n * m` into two sites `(n, m)`.
    pub fn split_last_site(mut self, n: usize, m: usize) -> Result<Self> {
        match self.dims.last() {
            Some(&d) if d == n * m => {
                self.dims.pop();
                self.dims.extend([n, m]);
                Ok(self)
            }
            _ => Err(Error::SiteMismatch(format!("cannot split last site into {n}x{m}"))),
        }
    }

    /// `Σ_a v_a ψ[…, a, …]`, removing the site.
    pub fn contract_site(&self, site: usize, v: &[C64]) -> Result<Self> {
        self.check_targets(&[site])?;
        if v.len() != self.dims[site] {
            return Err(Error::SiteMismatch(format!("covector of length {} on site of dim {}", v.len(), self.dims[site])));
        }
        let st = strides(&self.dims);
        let others: Vec<usize> = (0..self.dims.len()).filter(|&s| s != site).collect();
        let outer = offsets(&self.dims, &st, &others);
        let amps = outer
            .iter()
            .map(|&base| v.iter().enumerate().map(|(a, &w)| w * self.amps[base + a * st[site]]).sum())
            .collect();
        let dims = others.iter().map(|&s| self.dims[s]).collect();
        Ok(StateVector { dims, amps })
    }

    /// Partial trace over two sites of equal dimension.
    pub fn trace_pair(&self, i: usize, j: usize) -> Result<Self> {
        self.check_targets(&[i, j])?;
        if self.dims[i] != self.dims[j] {
            return Err(Error::SiteMismatch(format!("tracing sites of dims {} and {}", self.dims[i], self.dims[j])));
        }
        let st = strides(&self.dims);
        let others: Vec<usize> = (0..self.dims.len()).filter(|&s| s != i && s != j).collect();
        let outer = offsets(&self.dims, &st, &others);
        let amps = outer
            .iter()
            .map(|&base| (0..self.dims[i]).map(|a| self.amps[base + a * (st[i] + st[j])]).sum())
            .collect();
        let dims = others.iter().map(|&s| self.dims[s]).collect();
        Ok(StateVector { dims, amps })
    }

    /// Reorders sites: new site `k` is old site `order[k]`.
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        let n = self.check_targets(order)?;
        if order.len() != self.dims.len() || n != self.amps.len() {
            return Err(Error::SiteMismatch(format!("{order:?} is not a permutation of {} sites", self.dims.len())));
        }
        let st = strides(&self.dims);
        let src = offsets(&self.dims, &st, order);
        let amps = src.iter().map(|&o| self.amps[o]).collect();
        let dims = order.iter().map(|&s| self.dims[s]).collect();
        Ok(StateVector { dims, amps })
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        if self.dims != other.dims {
            return f64::INFINITY;
        }
        linalg::max_abs_diff(&self.amps, &other.amps)
    }

    /// Max difference after aligning the global phase of `other` to `self`.
    pub fn phase_insensitive_diff(&self, other: &Self) -> f64 {
        if self.dims != other.dims {
            return f64::INFINITY;
        }
        let ov = other.dot(self);
        let ph = if ov.norm() > 0.0 { ov / ov.norm() } else { linalg::ONE };
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b * ph).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.amps)
    }

    pub fn scale(&self, s: C64) -> Self {
        StateVector { dims: self.dims.clone(), amps: self.amps.iter().map(|a| a * s).collect() }
    }

    /// Plain Euclidean `Σ conj(a_I) b_I`.
    pub fn dot(&self, other: &Self) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Inner product with one Gram matrix per site: `⟨φ|ψ⟩ = φ† (⊗ G_k) ψ`.
    pub fn inner(&self, other: &Self, metrics: &[&CMat]) -> Result<C64> {
        if self.dims != other.dims || metrics.len() != self.dims.len() {
            return Err(Error::SiteMismatch("inner product of incompatible states".into()));
        }
        let mut g = other.clone();
        for (k, m) in metrics.iter().enumerate() {
            g = g.apply(&[k], m)?;
        }
        Ok(self.dot(&g))
    }
}

impl Add for &StateVector {
    type Output = StateVector;
    fn add(self, rhs: &StateVector) -> StateVector {
        assert_eq!(self.dims, rhs.dims, "adding states on different sites");
        StateVector { dims: self.dims.clone(), amps: self.amps.iter().zip(&rhs.amps).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &StateVector {
    type Output = StateVector;
    fn sub(self, rhs: &StateVector) -> StateVector {
        assert_eq!(self.dims, rhs.dims, "subtracting states on different sites");
        StateVector { dims: self.dims.clone(), amps: self.amps.iter().zip(&rhs.amps).map(|(a, b)| a - b).collect() }
    }
}

/// A kernel on one or more sites, with a label for reports.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteLocalOp {
    pub label: String,
    pub targets: Vec<usize>,
    pub kernel: CMat,
}

impl SiteLocalOp {
    pub fn new(label: impl Into<String>, targets: Vec<usize>, kernel: CMat) -> Self {
        SiteLocalOp { label: label.into(), targets, kernel }
    }

    /// The kernel on `support` (a superset of the targets, in the given
    /// order), acting as the identity on the extra sites.
    pub fn embed(&self, support: &[usize], dims: &[usize]) -> Result<CMat> {
        let pos: Vec<usize> = self
            .targets
            .iter()
            .map(|t| support.iter().position(|s| s == t).ok_or_else(|| Error::SiteMismatch(format!("site {t} not in support"))))
            .collect::<Result<_>>()?;
        let sd: Vec<usize> = support.iter().map(|&s| dims[s]).collect();
        let st = strides(&sd);
        let n: usize = sd.iter().product();
        let tdims: Vec<usize> = pos.iter().map(|&p| sd[p]).collect();
        let tst = strides(&tdims);
        let mut m = CMat::zeros(n, n);
        for col in 0..n {
            let digit = |p: usize| (col / st[p]) % sd[p];
            let tcol: usize = pos.iter().zip(&tst).map(|(&p, s)| digit(p) * s).sum();
            let rest = col - pos.iter().map(|&p| digit(p) * st[p]).sum::<usize>();
            for trow in 0..self.kernel.nrows() {
                let v = self.kernel[(trow, tcol)];
                if linalg::is_zero(v) {
                    continue;
                }
                let row = rest + pos.iter().zip(&tst).zip(&tdims).map(|((&p, s), d)| ((trow / s) % d) * st[p]).sum::<usize>();
                m[(row, col)] += v;
            }
        }
        Ok(m)
    }

    /// Max difference of the images of every product basis state of the
    /// whole system under the two operators, and the number of states checked.
    pub fn basis_residual(&self, other: &SiteLocalOp, dims: &[usize]) -> Result<(f64, usize)> {
        let mut support: Vec<usize> = self.targets.iter().chain(&other.targets).copied().collect();
        support.sort_unstable();
        support.dedup();
        let e1 = self.embed(&support, dims)?;
        let e2 = other.embed(&support, dims)?;
        let st = strides(dims);
        let total: usize = dims.iter().product();
        let sd: Vec<usize> = support.iter().map(|&s| dims[s]).collect();
        let sst = strides(&sd);
        let mut worst: f64 = 0.0;
        for i in 0..total {
            let j: usize = support.iter().zip(&sst).map(|(&s, w)| ((i / st[s]) % dims[s]) * w).sum();
            for r in 0..e1.nrows() {
                worst = worst.max((e1[(r, j)] - e2[(r, j)]).norm());
            }
        }
        Ok((worst, total))
    }
}
