//! The 1D Hopf cluster Hamiltonian, its LCP property and global symmetries.
//!
//! Sites are numbered from 1 as in the chain picture; site `s` is vertex
//! `s - 1` of the underlying cluster graph. Odd sites carry `𝔄` terms and
//! even sites carry `𝔅` terms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cluster::{self, Boundary, ClusterGraph, OddNormalization, Parity};
use crate::error::{Error, Result};
use crate::hopf::{AlgebraElement, DualElement, HopfAlgebra, Side, Sign};
use crate::linalg::{self, CMat, C64, ONE, ZERO};
use crate::ops::{self, XKind, ZKind};
use crate::rep::{self, FusionRing, Representation};
use crate::report::Residuals;
use crate::state::{SiteLocalOp, StateVector};

#[derive(Debug, Clone, PartialEq)]
pub enum TermKind {
    /// `𝔄` with the Haar integral.
    A,
    /// `𝔄^h`.
    AElement(AlgebraElement),
    /// `𝔅 = Σ_Γ (d_Γ/|𝒜|) 𝔅^Γ`.
    B,
    /// `𝔅^Γ` for the irrep with this index.
    BRep(usize),
    /// `𝔅^ψ` for a functional `ψ`.
    BDual(DualElement),
}

#[derive(Debug, Clone)]
pub struct LocalTerm {
    pub kind: TermKind,
    pub center: usize,
    pub op: SiteLocalOp,
}

impl LocalTerm {
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        psi.apply_op(&self.op)
    }
}

/// `φ(g_{a_1} ⋯ g_{a_n})` for every multi-index, row-major.
pub fn product_values(a: &HopfAlgebra, phi: &DualElement, n: usize) -> Vec<C64> {
    let d = a.dim();
    let mut prods: Vec<Vec<C64>> = vec![a.unit().coeffs];
    for _ in 0..n {
        let mut next = Vec::with_capacity(prods.len() * d);
        for p in &prods {
            for b in 0..d {
                let mut out = vec![ZERO; d];
                for (x, &px) in p.iter().enumerate() {
                    if linalg::is_zero(px) {
                        continue;
                    }
                    for &(c, v) in a.mul_terms(x, b) {
                        out[c] += px * v;
                    }
                }
                next.push(out);
            }
        }
        prods = next;
    }
    prods.iter().map(|p| p.iter().zip(&phi.coeffs).map(|(x, f)| x * f).sum()).collect()
}

pub struct ChainModel<'a> {
    pub algebra: &'a HopfAlgebra,
    pub l: usize,
    pub boundary: Boundary,
    pub graph: ClusterGraph,
    pub irreps: Vec<Representation>,
}

impl<'a> ChainModel<'a> {
    pub fn new(a: &'a HopfAlgebra, l: usize, boundary: Boundary) -> Result<Self> {
        let graph = cluster::build_1d_lattice(l, boundary)?;
        let irreps = rep::decompose_irreps(a, None)?;
        Ok(ChainModel { algebra: a, l, boundary, graph, irreps })
    }

    pub fn num_sites(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn periodic(&self) -> bool {
        self.boundary == Boundary::Periodic
    }

    pub fn dims(&self) -> Vec<usize> {
        vec![self.algebra.dim(); self.num_sites()]
    }

    pub fn odd_sites(&self) -> Vec<usize> {
        (1..=self.num_sites()).step_by(2).collect()
    }

    pub fn even_sites(&self) -> Vec<usize> {
        (2..=self.num_sites()).step_by(2).collect()
    }

    /// Vertex index of the neighbour `offset` away from site `s`, if it exists.
    fn neighbour(&self, s: usize, offset: isize) -> Option<usize> {
        let n = self.num_sites() as isize;
        let t = s as isize - 1 + offset;
        if self.periodic() {
            Some(t.rem_euclid(n) as usize)
        } else if (0..n).contains(&t) {
            Some(t as usize)
        } else {
            None
        }
    }

    fn check_site(&self, s: usize, parity: Parity, term: &'static str) -> Result<()> {
        if s == 0 || s > self.num_sites() {
            return Err(Error::UnknownVertex(format!("site {s}")));
        }
        if self.graph.parity(s - 1) != parity {
            return Err(Error::SiteParity { site: s, term });
        }
        Ok(())
    }

    /// `𝔄^h_i = Σ X←_{h(1)}(i−1) ⊗ X→_{h(3)}(i) ⊗ X→_{h(2)}(i+1)`; at open ends
    /// the missing neighbour's component is dropped.
    pub fn a_term(&self, i: usize, h: Option<&AlgebraElement>) -> Result<LocalTerm> {
        self.check_site(i, Parity::Odd, "A")?;
        let a = self.algebra;
        let kind = match h {
            Some(h) => TermKind::AElement(h.clone()),
            None => TermKind::A,
        };
        let h = match h {
            Some(h) => h,
            None => a.haar_integral()?,
        };
        let (left, right) = (self.neighbour(i, -1), self.neighbour(i, 1));
        let (targets, mats) = match (left, right) {
            (Some(l), Some(r)) => (vec![l, r, i - 1], vec![XKind::Right, XKind::Left, XKind::Left]),
            (None, Some(r)) => (vec![r, i - 1], vec![XKind::Left, XKind::Left]),
            (Some(l), None) => (vec![l, i - 1], vec![XKind::Right, XKind::Left]),
            (None, None) => (vec![i - 1], vec![XKind::Left]),
        };
        let t = a.comultiply_n(h, targets.len());
        let families: Vec<Vec<CMat>> = mats.iter().map(|&k| ops::x_family(a, k)).collect();
        let kernel = ops::product_kernel(&t.tensor, &families);
        Ok(LocalTerm { kind, center: i, op: SiteLocalOp::new(format!("A_{i}"), targets, kernel) })
    }

    pub fn a_haar(&self, i: usize) -> Result<LocalTerm> {
        self.a_term(i, None)
    }

    fn b_targets(&self, j: usize) -> Result<Vec<usize>> {
        match (self.neighbour(j, -1), self.neighbour(j, 1)) {
            (Some(l), Some(r)) => Ok(vec![l, j - 1, r]),
            _ => Err(Error::SiteParity { site: j, term: "B (boundary even site)" }),
        }
    }

    /// `𝔅^Γ_j = Σ_{rst} Z‡_rs(j−1) Z_st(j) Z_tr(j+1)`.
    pub fn b_rep_term(&self, j: usize, irrep: usize) -> Result<LocalTerm> {
        self.check_site(j, Parity::Even, "B")?;
        let targets = self.b_targets(j)?;
        let g = self.irreps.get(irrep).ok_or_else(|| Error::InvalidRepresentation(format!("irrep {irrep}")))?;
        let kernel = b_rep_kernel(self.algebra, g);
        Ok(LocalTerm { kind: TermKind::BRep(irrep), center: j, op: SiteLocalOp::new(format!("B^{}_{j}", g.label), targets, kernel) })
    }

    /// `𝔅_j = Σ_Γ (d_Γ/|𝒜|) 𝔅^Γ_j`.
    pub fn b_term(&self, j: usize) -> Result<LocalTerm> {
        self.check_site(j, Parity::Even, "B")?;
        let targets = self.b_targets(j)?;
        let d = self.algebra.dim();
        let mut kernel = CMat::zeros(d * d * d, d * d * d);
        for g in &self.irreps {
            kernel += b_rep_kernel(self.algebra, g) * linalg::c(g.dim as f64 / d as f64, 0.0);
        }
        Ok(LocalTerm { kind: TermKind::B, center: j, op: SiteLocalOp::new(format!("B_{j}"), targets, kernel) })
    }

    /// `𝔅^ψ_j = Σ ψ(g_a g_b g_c) T₋^{δ^a}(j−1) T₊^{δ^b}(j) T₊^{δ^c}(j+1)`.
    pub fn b_dual_term(&self, j: usize, psi: &DualElement) -> Result<LocalTerm> {
        self.check_site(j, Parity::Even, "B")?;
        let targets = self.b_targets(j)?;
        let a = self.algebra;
        let coeffs = product_values(a, psi, 3);
        let fams = vec![
            ops::t_family(a, Sign::Minus, Side::Left),
            ops::t_family(a, Sign::Plus, Side::Left),
            ops::t_family(a, Sign::Plus, Side::Left),
        ];
        let kernel = ops::product_kernel(&coeffs, &fams);
        Ok(LocalTerm { kind: TermKind::BDual(psi.clone()), center: j, op: SiteLocalOp::new(format!("B^psi_{j}"), targets, kernel) })
    }

    /// Every `𝔄_i` and every `𝔅_j` with full three-site support.
    pub fn hamiltonian_terms(&self) -> Result<(Vec<LocalTerm>, Vec<LocalTerm>)> {
        let a = self.odd_sites().into_iter().map(|i| self.a_haar(i)).collect::<Result<Vec<_>>>()?;
        let b = self
            .even_sites()
            .into_iter()
            .filter(|&j| self.b_targets(j).is_ok())
            .map(|j| self.b_term(j))
            .collect::<Result<Vec<_>>>()?;
        Ok((a, b))
    }

    pub fn cluster_state(&self) -> Result<StateVector> {
        cluster::cluster_state(self.algebra, &self.graph, OddNormalization::Trivial)
    }

    fn gram_metrics(&self) -> Result<Vec<&CMat>> {
        let g = self.algebra.gram()?;
        Ok(vec![g; self.num_sites()])
    }

    /// `F_h = Σ X←_{h(1)}(1) ⊗ X←_{h(2)}(3) ⊗ ⋯`, applied by threading the
    /// unused Sweedler component through an auxiliary leg.
    pub fn symmetry_f(&self, h: &AlgebraElement, psi: &StateVector) -> Result<StateVector> {
        let a = self.algebra;
        let aux = psi.num_sites();
        let kernel = f_kernel(a);
        let mut s = psi.append_site(&h.coeffs)?;
        for i in self.odd_sites() {
            s = s.apply(&[aux, i - 1], &kernel)?;
        }
        s.contract_site(aux, a.counit_vec())
    }

    /// `D_Γ = Tr′[Z̃_Γ(2) ⊗ Z̃_Γ(4) ⊗ ⋯]`, applied through two auxiliary
    /// matrix-index legs that are traced at the end.
    pub fn symmetry_d(&self, gamma: &Representation, psi: &StateVector) -> Result<StateVector> {
        let a = self.algebra;
        let n = gamma.dim;
        let (row, col) = (psi.num_sites(), psi.num_sites() + 1);
        let mut id = vec![ZERO; n * n];
        for r in 0..n {
            id[r * n + r] = ONE;
        }
        let mut s = psi.append_site(&id)?.split_last_site(n, n)?;
        let kernel = d_kernel(a, gamma);
        for j in self.even_sites() {
            s = s.apply(&[col, j - 1], &kernel)?;
        }
        s.trace_pair(row, col)
    }
}

/// Kernel of `Σ_{rst} Z‡_rs ⊗ Z_st ⊗ Z_tr` on three consecutive sites.
pub fn b_rep_kernel(a: &HopfAlgebra, g: &Representation) -> CMat {
    let n = g.dim;
    let slices = |k: ZKind| -> Vec<CMat> {
        (0..n * n).map(|p| ops::z_slice(a, k, g, p / n, p % n)).collect()
    };
    let fams = vec![slices(ZKind::ZDagger), slices(ZKind::Z), slices(ZKind::Z)];
    let mut coeffs = vec![ZERO; n.pow(6)];
    for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                let (p, q, u) = (r * n + s, s * n + t, t * n + r);
                coeffs[(p * n * n + q) * n * n + u] = ONE;
            }
        }
    }
    ops::product_kernel(&coeffs, &fams)
}

/// On (aux, site): `|x⟩|v⟩ ↦ Σ |x(2)⟩ X←_{x(1)}|v⟩`.
pub fn f_kernel(a: &HopfAlgebra) -> CMat {
    let d = a.dim();
    let fam = ops::x_family(a, XKind::Right);
    let mut k = CMat::zeros(d * d, d * d);
    for x in 0..d {
        for &(p, q, v) in a.comul_terms(x) {
            for b in 0..d {
                for c in 0..d {
                    let m = fam[p][(c, b)];
                    if !linalg::is_zero(m) {
                        k[(q * d + c, x * d + b)] += v * m;
                    }
                }
            }
        }
    }
    k
}

/// On (matrix index, site): `|s⟩|v⟩ ↦ Σ_t |t⟩ Z̃_st|v⟩`.
pub fn d_kernel(a: &HopfAlgebra, g: &Representation) -> CMat {
    let d = a.dim();
    let n = g.dim;
    let mut k = CMat::zeros(n * d, n * d);
    for s in 0..n {
        for t in 0..n {
            let z = ops::z_slice(a, ZKind::ZTilde, g, s, t);
            for b in 0..d {
                for c in 0..d {
                    k[(t * d + c, s * d + b)] += z[(c, b)];
                }
            }
        }
    }
    k
}

fn commutator(x: &LocalTerm, y: &LocalTerm, psi: &StateVector) -> Result<f64> {
    let xy = x.apply(&y.apply(psi)?)?;
    let yx = y.apply(&x.apply(psi)?)?;
    Ok(xy.max_diff(&yx))
}

fn projector(x: &LocalTerm, psi: &StateVector) -> Result<f64> {
    let once = x.apply(psi)?;
    Ok(x.apply(&once)?.max_diff(&once))
}

/// Projector, Hermiticity and commutation residuals on random states.
pub fn check_lcp(model: &ChainModel, samples: usize, seed: u64) -> Result<Residuals> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a_terms, b_terms) = model.hamiltonian_terms()?;
    let rep_terms: Vec<LocalTerm> = b_terms
        .iter()
        .flat_map(|b| (0..model.irreps.len()).map(move |g| (b.center, g)))
        .map(|(j, g)| model.b_rep_term(j, g))
        .collect::<Result<_>>()?;
    let metrics = model.gram_metrics()?;
    let mut res = Residuals::new();
    for name in ["A^2 - A", "B^2 - B", "A hermitian", "B hermitian", "[A, A]", "[B, B]", "[A, B^Γ]"] {
        res.push(name, 0.0);
    }
    for _ in 0..samples {
        let psi = StateVector::random(model.dims(), &mut rng)?;
        let phi = StateVector::random(model.dims(), &mut rng)?;
        for (terms, p, h) in [(&a_terms, "A^2 - A", "A hermitian"), (&b_terms, "B^2 - B", "B hermitian")] {
            for t in terms.iter() {
                res.record(p, projector(t, &psi)?);
                let lhs = phi.inner(&t.apply(&psi)?, &metrics)?;
                let rhs = t.apply(&phi)?.inner(&psi, &metrics)?;
                res.record(h, (lhs - rhs).norm());
            }
        }
        for (n, x) in a_terms.iter().enumerate() {
            for y in &a_terms[n + 1..] {
                res.record("[A, A]", commutator(x, y, &psi)?);
            }
            for y in &rep_terms {
                res.record("[A, B^Γ]", commutator(x, y, &psi)?);
            }
        }
        for (n, x) in b_terms.iter().enumerate() {
            for y in &b_terms[n + 1..] {
                res.record("[B, B]", commutator(x, y, &psi)?);
            }
        }
    }
    Ok(res)
}

/// Eigenvalue residuals of the Hamiltonian terms on the cluster state.
pub fn ground_state_check(model: &ChainModel, seed: u64) -> Result<Residuals> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = model.algebra;
    let gs = model.cluster_state()?;
    let (a_terms, b_terms) = model.hamiltonian_terms()?;
    let mut res = Residuals::new();
    for name in ["A|GS> - |GS>", "B|GS> - |GS>", "B^Γ|GS> - d|GS>", "A^h|GS> - ε(h)|GS>"] {
        res.push(name, 0.0);
    }
    for t in &a_terms {
        res.record("A|GS> - |GS>", t.apply(&gs)?.max_diff(&gs));
        let h = AlgebraElement::new(linalg::random_vector(&mut rng, a.dim()));
        let th = model.a_term(t.center, Some(&h))?;
        res.record("A^h|GS> - ε(h)|GS>", th.apply(&gs)?.max_diff(&gs.scale(a.counit(&h))));
    }
    for t in &b_terms {
        res.record("B|GS> - |GS>", t.apply(&gs)?.max_diff(&gs));
        for (g, r) in model.irreps.iter().enumerate() {
            let tg = model.b_rep_term(t.center, g)?;
            res.record("B^Γ|GS> - d|GS>", tg.apply(&gs)?.max_diff(&gs.scale(linalg::c(r.dim as f64, 0.0))));
        }
    }
    Ok(res)
}

/// Commutation of `F_g` and `D_Γ` with every term, their fusion rules and
/// their action on the cluster state.
///
/// The `D_Γ` string runs over the closed ring of even sites, so its entries
/// are only reported for periodic chains.
pub fn check_symmetries(model: &ChainModel, samples: usize, seed: u64) -> Result<Residuals> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = model.algebra;
    let d = a.dim();
    let (a_terms, b_terms) = model.hamiltonian_terms()?;
    let rep_terms: Vec<LocalTerm> = b_terms
        .iter()
        .flat_map(|b| (0..model.irreps.len()).map(move |g| (b.center, g)))
        .map(|(j, g)| model.b_rep_term(j, g))
        .collect::<Result<_>>()?;
    let ring = FusionRing::new(a, &model.irreps)?;
    let gs = model.cluster_state()?;
    let mut res = Residuals::new();
    let ring_d = model.periodic();
    let mut names = vec!["[F_g, A]", "[F_g, B]", "[F_g, B^Γ]", "F_g F_h - F_gh", "F_1 - id", "F_g|GS> - ε(g)|GS>"];
    if ring_d {
        names.extend(["[D_Γ, A]", "[D_Γ, B]", "D_Γ D_Φ - Σ N_ΦΓ D", "D_1 - id", "D_Γ|GS> - d|GS>"]);
    }
    for name in names {
        res.push(name, 0.0);
    }
    for _ in 0..samples {
        let psi = StateVector::random(model.dims(), &mut rng)?;
        let g = AlgebraElement::new(linalg::random_vector(&mut rng, d));
        let h = AlgebraElement::new(linalg::random_vector(&mut rng, d));
        let fg = |s: &StateVector| model.symmetry_f(&g, s);
        for (terms, name) in [(&a_terms, "[F_g, A]"), (&b_terms, "[F_g, B]"), (&rep_terms, "[F_g, B^Γ]")] {
            for t in terms.iter() {
                res.record(name, fg(&t.apply(&psi)?)?.max_diff(&t.apply(&fg(&psi)?)?));
            }
        }
        let gh = a.multiply(&g, &h)?;
        let lhs = model.symmetry_f(&g, &model.symmetry_f(&h, &psi)?)?;
        res.record("F_g F_h - F_gh", lhs.max_diff(&model.symmetry_f(&gh, &psi)?));
        res.record("F_1 - id", model.symmetry_f(&a.unit(), &psi)?.max_diff(&psi));
        res.record("F_g|GS> - ε(g)|GS>", model.symmetry_f(&g, &gs)?.max_diff(&gs.scale(a.counit(&g))));
        if !ring_d {
            continue;
        }
        for (gi, gam) in model.irreps.iter().enumerate() {
            let dg = model.symmetry_d(gam, &psi)?;
            for (terms, name) in [(&a_terms, "[D_Γ, A]"), (&b_terms, "[D_Γ, B]")] {
                for t in terms.iter() {
                    res.record(name, model.symmetry_d(gam, &t.apply(&psi)?)?.max_diff(&t.apply(&dg)?));
                }
            }
            for (fi, phi) in model.irreps.iter().enumerate() {
                let lhs = model.symmetry_d(gam, &model.symmetry_d(phi, &psi)?)?;
                let mut rhs = StateVector::zeros(model.dims())?;
                for (pi, p) in model.irreps.iter().enumerate() {
                    let n = ring.n[fi][gi][pi];
                    if n > 0 {
                        rhs = &rhs + &model.symmetry_d(p, &psi)?.scale(linalg::c(n as f64, 0.0));
                    }
                }
                res.record("D_Γ D_Φ - Σ N_ΦΓ D", lhs.max_diff(&rhs));
            }
        }
        res.record("D_1 - id", model.symmetry_d(&model.irreps[0], &psi)?.max_diff(&psi));
    }
    for gam in model.irreps.iter().filter(|_| ring_d) {
        res.record("D_Γ|GS> - d|GS>", model.symmetry_d(gam, &gs)?.max_diff(&gs.scale(linalg::c(gam.dim as f64, 0.0))));
    }
    Ok(res)
}
