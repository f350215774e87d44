//! Finite-dimensional C*-Hopf algebras stored as dense structure constants.
//!
//! Conventions, for basis `{g_a}` with `g_0 = 1`:
//!
//! * `g_a g_b = Σ_c mul[a][b][c] g_c`
//! * `Δ(g_a) = Σ_{b,c} comul[a][b][c] g_b ⊗ g_c`
//! * `S(g_a) = Σ_b antipode[(a, b)] g_b`
//! * `(x*)_b = Σ_a conj(x_a) star[(a, b)]` (antilinear unless the conjugation flag is off)

mod axioms;
mod dual;
mod elements;

pub use axioms::AxiomReport;
pub use dual::Dual;
pub use elements::{AlgebraElement, DualElement, SweedlerExpansion};

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64, ONE, ZERO};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Sign of a dual-element action: `T₊` or `T₋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// Plain or tilde (right-module) variant of a dual-element action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Raw structure constants, before verification.
#[derive(Debug, Clone)]
pub struct AlgebraData {
    pub name: String,
    pub labels: Vec<String>,
    pub dim: usize,
    pub mul: Vec<C64>,
    pub comul: Vec<C64>,
    pub counit: Vec<C64>,
    pub antipode: CMat,
    pub star: CMat,
    pub star_conjugate: bool,
    pub tolerance: f64,
}

impl AlgebraData {
    pub fn zeros(name: impl Into<String>, dim: usize) -> Self {
        AlgebraData {
            name: name.into(),
            labels: (0..dim).map(|i| format!("g{i}")).collect(),
            dim,
            mul: vec![ZERO; dim * dim * dim],
            comul: vec![ZERO; dim * dim * dim],
            counit: vec![ZERO; dim],
            antipode: CMat::zeros(dim, dim),
            star: CMat::zeros(dim, dim),
            star_conjugate: true,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn check_shapes(&self) -> Result<()> {
        let d = self.dim;
        if d == 0 {
            return Err(Error::DimensionMismatch("dim must be positive".into()));
        }
        let cube = d * d * d;
        let checks = [
            ("mul", self.mul.len(), cube),
            ("comul", self.comul.len(), cube),
            ("counit", self.counit.len(), d),
            ("basis_labels", self.labels.len(), d),
        ];
        for (what, got, want) in checks {
            if got != want {
                return Err(Error::DimensionMismatch(format!(
                    "{what} has {got} entries, expected {want}"
                )));
            }
        }
        for (what, m) in [("antipode", &self.antipode), ("star_matrix", &self.star)] {
            if m.shape() != (d, d) {
                return Err(Error::DimensionMismatch(format!(
                    "{what} is {}x{}, expected {d}x{d}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::DimensionMismatch("tolerance must be nonnegative".into()));
        }
        Ok(())
    }

    /// Same algebra in the basis `b_j = Σ_i p[(i, j)] g_i`.
    pub fn change_basis(&self, p: &CMat) -> Result<AlgebraData> {
        let d = self.dim;
        let pinv = linalg::inverse(p)
            .ok_or_else(|| Error::DimensionMismatch("singular basis change".into()))?;
        let idx = |a: usize, b: usize, c: usize| (a * d + b) * d + c;

        // mul'[a][b][c] = Σ P_ia P_jb A_ij^k Pinv_ck
        let mut t1 = vec![ZERO; d * d * d];
        for a in 0..d {
            for i in 0..d {
                let pia = p[(i, a)];
                if linalg::is_zero(pia) {
                    continue;
                }
                for j in 0..d {
                    for k in 0..d {
                        t1[idx(a, j, k)] += pia * self.mul[idx(i, j, k)];
                    }
                }
            }
        }
        let mut t2 = vec![ZERO; d * d * d];
        for a in 0..d {
            for b in 0..d {
                for j in 0..d {
                    let pjb = p[(j, b)];
                    if linalg::is_zero(pjb) {
                        continue;
                    }
                    for k in 0..d {
                        t2[idx(a, b, k)] += pjb * t1[idx(a, j, k)];
                    }
                }
            }
        }
        let mut mul = vec![ZERO; d * d * d];
        for a in 0..d {
            for b in 0..d {
                for k in 0..d {
                    let v = t2[idx(a, b, k)];
                    if linalg::is_zero(v) {
                        continue;
                    }
                    for cc in 0..d {
                        mul[idx(a, b, cc)] += v * pinv[(cc, k)];
                    }
                }
            }
        }

        // comul'[a][b][c] = Σ P_ia C_i^{jk} Pinv_bj Pinv_ck
        let mut s1 = vec![ZERO; d * d * d];
        for a in 0..d {
            for i in 0..d {
                let pia = p[(i, a)];
                if linalg::is_zero(pia) {
                    continue;
                }
                for j in 0..d {
                    for k in 0..d {
                        s1[idx(a, j, k)] += pia * self.comul[idx(i, j, k)];
                    }
                }
            }
        }
        let mut s2 = vec![ZERO; d * d * d];
        for a in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = s1[idx(a, j, k)];
                    if linalg::is_zero(v) {
                        continue;
                    }
                    for b in 0..d {
                        s2[idx(a, b, k)] += v * pinv[(b, j)];
                    }
                }
            }
        }
        let mut comul = vec![ZERO; d * d * d];
        for a in 0..d {
            for b in 0..d {
                for k in 0..d {
                    let v = s2[idx(a, b, k)];
                    if linalg::is_zero(v) {
                        continue;
                    }
                    for cc in 0..d {
                        comul[idx(a, b, cc)] += v * pinv[(cc, k)];
                    }
                }
            }
        }

        let counit: Vec<C64> = (0..d)
            .map(|a| (0..d).map(|i| self.counit[i] * p[(i, a)]).sum())
            .collect();
        let antipode = p.transpose() * &self.antipode * pinv.transpose();
        let star = if self.star_conjugate {
            p.map(|z| z.conj()).transpose() * &self.star * pinv.transpose()
        } else {
            p.transpose() * &self.star * pinv.transpose()
        };
        chop(&mut mul);
        chop(&mut comul);
        Ok(AlgebraData {
            name: self.name.clone(),
            labels: (0..d).map(|i| format!("b{i}")).collect(),
            dim: d,
            mul,
            comul,
            counit,
            antipode,
            star,
            star_conjugate: self.star_conjugate,
            tolerance: self.tolerance,
        })
    }
}

/// A verified finite-dimensional C*-Hopf algebra.
#[derive(Debug)]
pub struct HopfAlgebra {
    data: AlgebraData,
    comul_by_a: Vec<Vec<(usize, usize, C64)>>,
    mul_by_ab: Vec<Vec<(usize, C64)>>,
    haar_integral: OnceLock<AlgebraElement>,
    haar_measure: OnceLock<DualElement>,
    gram: OnceLock<CMat>,
}

impl Clone for HopfAlgebra {
    fn clone(&self) -> Self {
        let out = HopfAlgebra::unverified(self.data.clone());
        if let Some(l) = self.haar_integral.get() {
            let _ = out.haar_integral.set(l.clone());
        }
        if let Some(l) = self.haar_measure.get() {
            let _ = out.haar_measure.set(l.clone());
        }
        if let Some(g) = self.gram.get() {
            let _ = out.gram.set(g.clone());
        }
        out
    }
}

impl HopfAlgebra {
    /// Validates shapes, the unit convention and every axiom.
    pub fn new(data: AlgebraData) -> Result<Self> {
        data.check_shapes()?;
        let alg = HopfAlgebra::unverified(data);
        alg.verify()?;
        Ok(alg)
    }

    pub(crate) fn unverified(data: AlgebraData) -> Self {
        let d = data.dim;
        let mut comul_by_a = vec![Vec::new(); d];
        let mut mul_by_ab = vec![Vec::new(); d * d];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let i = (a * d + b) * d + c;
                    if !linalg::is_zero(data.comul[i]) {
                        comul_by_a[a].push((b, c, data.comul[i]));
                    }
                    if !linalg::is_zero(data.mul[i]) {
                        mul_by_ab[a * d + b].push((c, data.mul[i]));
                    }
                }
            }
        }
        HopfAlgebra {
            data,
            comul_by_a,
            mul_by_ab,
            haar_integral: OnceLock::new(),
            haar_measure: OnceLock::new(),
            gram: OnceLock::new(),
        }
    }

    /// Runs the full axiom suite and fails on the first violated axiom.
    pub fn verify(&self) -> Result<()> {
        let report = self.structural_report();
        if let Some((axiom, residual)) = report.first_failure(self.tolerance()) {
            return Err(Error::AxiomViolation { axiom: axiom.to_string(), residual });
        }
        let report = self.axiom_report()?;
        if let Some((axiom, residual)) = report.first_failure(self.tolerance()) {
            return Err(Error::AxiomViolation { axiom: axiom.to_string(), residual });
        }
        Ok(())
    }

    pub fn data(&self) -> &AlgebraData {
        &self.data
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.data.name = name.into();
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    pub fn tolerance(&self) -> f64 {
        self.data.tolerance
    }

    #[inline]
    pub fn mul_coeff(&self, a: usize, b: usize, c: usize) -> C64 {
        let d = self.data.dim;
        self.data.mul[(a * d + b) * d + c]
    }

    #[inline]
    pub fn comul_coeff(&self, a: usize, b: usize, c: usize) -> C64 {
        let d = self.data.dim;
        self.data.comul[(a * d + b) * d + c]
    }

    /// Nonzero `(b, c, C_a^{bc})` for a fixed `a`.
    pub fn comul_terms(&self, a: usize) -> &[(usize, usize, C64)] {
        &self.comul_by_a[a]
    }

    /// Nonzero `(c, A_ab^c)` for fixed `a`, `b`.
    pub fn mul_terms(&self, a: usize, b: usize) -> &[(usize, C64)] {
        &self.mul_by_ab[a * self.data.dim + b]
    }

    pub fn counit_vec(&self) -> &[C64] {
        &self.data.counit
    }

    pub fn antipode_matrix(&self) -> &CMat {
        &self.data.antipode
    }

    pub fn star_matrix(&self) -> &CMat {
        &self.data.star
    }

    pub fn unit(&self) -> AlgebraElement {
        self.basis(0)
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        let mut v = vec![ZERO; self.dim()];
        v[i] = ONE;
        AlgebraElement::new(v)
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::new(vec![ZERO; self.dim()])
    }

    pub fn element(&self, coeffs: Vec<C64>) -> Result<AlgebraElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coefficients, algebra dim is {}",
                coeffs.len(),
                self.dim()
            )));
        }
        Ok(AlgebraElement::new(coeffs))
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "length {n} does not match algebra dim {}",
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        Ok(AlgebraElement::new(self.mul_raw(&x.coeffs, &y.coeffs)))
    }

    pub(crate) fn mul_raw(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let d = self.dim();
        let mut out = vec![ZERO; d];
        for (a, &xa) in x.iter().enumerate() {
            if linalg::is_zero(xa) {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if linalg::is_zero(yb) {
                    continue;
                }
                let w = xa * yb;
                for &(c, v) in self.mul_terms(a, b) {
                    out[c] += w * v;
                }
            }
        }
        out
    }

    /// Product of several elements, left to right.
    pub fn multiply_all(&self, xs: &[&AlgebraElement]) -> Result<AlgebraElement> {
        let mut acc = self.unit();
        for x in xs {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn counit(&self, x: &AlgebraElement) -> C64 {
        x.coeffs.iter().zip(&self.data.counit).map(|(a, b)| a * b).sum()
    }

    pub fn antipode(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(self.antipode_raw(&x.coeffs))
    }

    pub(crate) fn antipode_raw(&self, x: &[C64]) -> Vec<C64> {
        let d = self.dim();
        let s = &self.data.antipode;
        (0..d).map(|b| (0..d).map(|a| x[a] * s[(a, b)]).sum()).collect()
    }

    pub fn star(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(self.star_raw(&x.coeffs))
    }

    pub(crate) fn star_raw(&self, x: &[C64]) -> Vec<C64> {
        let d = self.dim();
        let s = &self.data.star;
        let conj = self.data.star_conjugate;
        (0..d)
            .map(|b| {
                (0..d)
                    .map(|a| if conj { x[a].conj() } else { x[a] } * s[(a, b)])
                    .sum()
            })
            .collect()
    }

    pub fn comultiply(&self, x: &AlgebraElement) -> SweedlerExpansion {
        self.comultiply_n(x, 2)
    }

    /// `Δ_n(x)`, expanding the last leg at each step.
    pub fn comultiply_n(&self, x: &AlgebraElement, n: usize) -> SweedlerExpansion {
        assert!(n >= 1, "comultiply_n needs n >= 1");
        let mut t = SweedlerExpansion { rank: 1, dim: self.dim(), tensor: x.coeffs.clone() };
        while t.rank < n {
            t = self.expand_leg(&t, t.rank - 1);
        }
        t
    }

    /// Applies `Δ` to one leg of a Sweedler tensor, raising its rank by one.
    pub fn expand_leg(&self, t: &SweedlerExpansion, leg: usize) -> SweedlerExpansion {
        assert!(leg < t.rank);
        let d = self.dim();
        let pre = d.pow(leg as u32);
        let post = d.pow((t.rank - leg - 1) as u32);
        let mut out = vec![ZERO; pre * d * d * post];
        for p in 0..pre {
            for a in 0..d {
                let base = (p * d + a) * post;
                for q in 0..post {
                    let v = t.tensor[base + q];
                    if linalg::is_zero(v) {
                        continue;
                    }
                    for &(b, c, w) in self.comul_terms(a) {
                        out[((p * d + b) * d + c) * post + q] += v * w;
                    }
                }
            }
        }
        SweedlerExpansion { rank: t.rank + 1, dim: d, tensor: out }
    }

    /// Applies a linear map (given by its matrix on column coefficient vectors) to one leg.
    pub fn map_leg(&self, t: &SweedlerExpansion, leg: usize, m: &CMat) -> SweedlerExpansion {
        let d = self.dim();
        let pre = d.pow(leg as u32);
        let post = d.pow((t.rank - leg - 1) as u32);
        let mut out = vec![ZERO; t.tensor.len()];
        for p in 0..pre {
            for a in 0..d {
                for q in 0..post {
                    let v = t.tensor[(p * d + a) * post + q];
                    if linalg::is_zero(v) {
                        continue;
                    }
                    for b in 0..d {
                        out[(p * d + b) * post + q] += m[(b, a)] * v;
                    }
                }
            }
        }
        SweedlerExpansion { rank: t.rank, dim: d, tensor: out }
    }

    /// Contracts one leg with the counit.
    pub fn counit_leg(&self, t: &SweedlerExpansion, leg: usize) -> SweedlerExpansion {
        let d = self.dim();
        let pre = d.pow(leg as u32);
        let post = d.pow((t.rank - leg - 1) as u32);
        let mut out = vec![ZERO; pre * post];
        for p in 0..pre {
            for a in 0..d {
                let e = self.data.counit[a];
                for q in 0..post {
                    out[p * post + q] += e * t.tensor[(p * d + a) * post + q];
                }
            }
        }
        SweedlerExpansion { rank: t.rank - 1, dim: d, tensor: out }
    }

    /// Matrix of `h ↦ g h` on coefficient columns.
    pub fn left_mult_matrix(&self, g: &AlgebraElement) -> CMat {
        let d = self.dim();
        let mut m = CMat::zeros(d, d);
        for (a, &ga) in g.coeffs.iter().enumerate() {
            if linalg::is_zero(ga) {
                continue;
            }
            for b in 0..d {
                for &(c, v) in self.mul_terms(a, b) {
                    m[(c, b)] += ga * v;
                }
            }
        }
        m
    }

    /// Matrix of `h ↦ h g` on coefficient columns.
    pub fn right_mult_matrix(&self, g: &AlgebraElement) -> CMat {
        let d = self.dim();
        let mut m = CMat::zeros(d, d);
        for (b, &gb) in g.coeffs.iter().enumerate() {
            if linalg::is_zero(gb) {
                continue;
            }
            for a in 0..d {
                for &(c, v) in self.mul_terms(a, b) {
                    m[(c, a)] += gb * v;
                }
            }
        }
        m
    }

    /// Matrix of `S` on coefficient columns.
    pub fn antipode_operator(&self) -> CMat {
        self.data.antipode.transpose()
    }

    pub fn pair(&self, phi: &DualElement, x: &AlgebraElement) -> C64 {
        phi.coeffs.iter().zip(&x.coeffs).map(|(a, b)| a * b).sum()
    }

    /// `φ ∘ S`.
    pub fn dual_antipode(&self, phi: &DualElement) -> DualElement {
        let d = self.dim();
        let s = &self.data.antipode;
        DualElement::new((0..d).map(|c| (0..d).map(|k| s[(c, k)] * phi.coeffs[k]).sum()).collect())
    }

    /// Product in the dual algebra: `(φψ)(x) = Σ φ(x^(1)) ψ(x^(2))`.
    pub fn dual_multiply(&self, phi: &DualElement, psi: &DualElement) -> DualElement {
        let d = self.dim();
        let mut out = vec![ZERO; d];
        for (k, slot) in out.iter_mut().enumerate() {
            for &(i, j, v) in self.comul_terms(k) {
                *slot += v * phi.coeffs[i] * psi.coeffs[j];
            }
        }
        DualElement::new(out)
    }

    /// `⟨φ*, x⟩ = conj⟨φ, S(x)*⟩`.
    pub fn dual_star(&self, phi: &DualElement) -> DualElement {
        let d = self.dim();
        let out = (0..d)
            .map(|b| {
                let sx = self.star_raw(&self.antipode_raw(&self.basis(b).coeffs));
                sx.iter().zip(&phi.coeffs).map(|(a, f)| a * f).sum::<C64>().conj()
            })
            .collect();
        DualElement::new(out)
    }

    pub fn counit_dual(&self) -> DualElement {
        DualElement::new(self.data.counit.clone())
    }

    /// Matrix of `x ↦ T^φ x` for the given sign and side.
    ///
    /// * `(Plus, Left)`:   `Σ φ(x^(2)) x^(1)`
    /// * `(Minus, Left)`:  `Σ φ(S(x^(1))) x^(2)`
    /// * `(Plus, Right)`:  `Σ φ(S(x^(2))) x^(1)`
    /// * `(Minus, Right)`: `Σ φ(x^(1)) x^(2)`
    pub fn t_matrix(&self, sign: Sign, side: Side, phi: &DualElement) -> CMat {
        let d = self.dim();
        let f = match (sign, side) {
            (Sign::Plus, Side::Left) | (Sign::Minus, Side::Right) => phi.clone(),
            _ => self.dual_antipode(phi),
        };
        let mut m = CMat::zeros(d, d);
        for a in 0..d {
            for &(b, c, v) in self.comul_terms(a) {
                match sign {
                    Sign::Plus => m[(b, a)] += v * f.coeffs[c],
                    Sign::Minus => m[(c, a)] += v * f.coeffs[b],
                }
            }
        }
        m
    }

    pub fn apply_t(&self, sign: Sign, side: Side, phi: &DualElement, x: &AlgebraElement) -> AlgebraElement {
        let m = self.t_matrix(sign, side, phi);
        AlgebraElement::new((0..self.dim()).map(|i| (0..self.dim()).map(|j| m[(i, j)] * x.coeffs[j]).sum()).collect())
    }

    /// Normalized two-sided integral `λ` with `ε(λ) = 1`.
    pub fn haar_integral(&self) -> Result<&AlgebraElement> {
        if let Some(l) = self.haar_integral.get() {
            return Ok(l);
        }
        let l = self.compute_haar_integral()?;
        Ok(self.haar_integral.get_or_init(|| l))
    }

    /// Haar measure `Λ`: the normalized integral of the dual, with `Λ(1) = 1`.
    pub fn haar_measure(&self) -> Result<&DualElement> {
        if let Some(l) = self.haar_measure.get() {
            return Ok(l);
        }
        let l = self.compute_haar_measure()?;
        Ok(self.haar_measure.get_or_init(|| l))
    }

    /// Dimension of the two-sided integral space of this algebra.
    pub fn integral_space_dim(&self) -> usize {
        linalg::nullspace(&self.integral_system(), self.tolerance().max(1e-14)).ncols()
    }

    /// Stacked `{L_x − ε(x)I, R_x − ε(x)I}` over all basis `x`.
    fn integral_system(&self) -> CMat {
        let d = self.dim();
        let blocks = (0..d).flat_map(|a| {
            let e = self.data.counit[a];
            [
                CMat::from_fn(d, d, |c, b| self.mul_coeff(a, b, c) - if b == c { e } else { ZERO }),
                CMat::from_fn(d, d, |c, b| self.mul_coeff(b, a, c) - if b == c { e } else { ZERO }),
            ]
        });
        stack(blocks, d)
    }

    fn compute_haar_integral(&self) -> Result<AlgebraElement> {
        let v = solve_integral(self.integral_system(), self.tolerance(), |v| {
            v.iter().zip(&self.data.counit).map(|(a, b)| a * b).sum()
        })?;
        Ok(AlgebraElement::new(v))
    }

    fn compute_haar_measure(&self) -> Result<DualElement> {
        let d = self.dim();
        // Left and right multiplication by the dual basis δ^i, whose counit is δ^i(1) = δ_{i0}.
        let blocks = (0..d).flat_map(|i| {
            let e = if i == 0 { ONE } else { ZERO };
            [
                CMat::from_fn(d, d, |k, b| self.comul_coeff(k, i, b) - if b == k { e } else { ZERO }),
                CMat::from_fn(d, d, |k, b| self.comul_coeff(k, b, i) - if b == k { e } else { ZERO }),
            ]
        });
        let v = solve_integral(stack(blocks, d), self.tolerance(), |v| v[0])?;
        Ok(DualElement::new(v))
    }

    /// `⟨x, y⟩ = Λ(x* y)`.
    pub fn inner_product(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<C64> {
        let lam = self.haar_measure()?;
        let p = self.mul_raw(&self.star_raw(&x.coeffs), &y.coeffs);
        Ok(p.iter().zip(&lam.coeffs).map(|(a, b)| a * b).sum())
    }

    /// Gram matrix `G[(i, j)] = ⟨g_i, g_j⟩`.
    pub fn gram(&self) -> Result<&CMat> {
        if let Some(g) = self.gram.get() {
            return Ok(g);
        }
        let d = self.dim();
        let mut g = CMat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                g[(i, j)] = self.inner_product(&self.basis(i), &self.basis(j))?;
            }
        }
        Ok(self.gram.get_or_init(|| g))
    }

    /// `|𝟙⟩ = √|𝒜| λ`, the unit-norm trivial-representation state.
    pub fn trivial_state(&self) -> Result<AlgebraElement> {
        let s = (self.dim() as f64).sqrt();
        Ok(self.haar_integral()?.scale(linalg::c(s, 0.0)))
    }

    /// Checks the algebra is commutative within tolerance.
    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| {
            (0..d).all(|b| (0..d).all(|c| (self.mul_coeff(a, b, c) - self.mul_coeff(b, a, c)).norm() <= self.tolerance()))
        })
    }

    pub fn is_cocommutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| {
            (0..d).all(|b| (0..d).all(|c| (self.comul_coeff(a, b, c) - self.comul_coeff(a, c, b)).norm() <= self.tolerance()))
        })
    }
}

/// Flushes entries far below the largest magnitude to exact zero.
pub(crate) fn chop(v: &mut [C64]) {
    let m = linalg::max_abs(v);
    let cut = 1e-14 * m.max(1.0);
    for z in v.iter_mut() {
        if z.re.abs() <= cut {
            z.re = 0.0;
        }
        if z.im.abs() <= cut {
            z.im = 0.0;
        }
    }
}

fn stack(blocks: impl Iterator<Item = CMat>, d: usize) -> CMat {
    let blocks: Vec<CMat> = blocks.collect();
    let mut m = CMat::zeros(blocks.len() * d, d);
    for (k, b) in blocks.iter().enumerate() {
        m.view_mut((k * d, 0), (d, d)).copy_from(b);
    }
    m
}

fn solve_integral(m: CMat, tol: f64, norm: impl Fn(&[C64]) -> C64) -> Result<Vec<C64>> {
    let ns = linalg::nullspace(&m, tol.max(1e-14));
    match ns.ncols() {
        0 => Err(Error::NoIntegral),
        1 => {
            let v: Vec<C64> = ns.column(0).iter().cloned().collect();
            let n = norm(&v);
            if n.norm() <= tol.max(1e-14) {
                return Err(Error::NoIntegral);
            }
            Ok(v.into_iter().map(|z| z / n).collect())
        }
        k => Err(Error::NonUniqueIntegral(k)),
    }
}
