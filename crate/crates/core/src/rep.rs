//! Irreducible representations, characters, fusion rules and the fusion basis.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopf::{AlgebraElement, DualElement, HopfAlgebra};
use crate::linalg::{self, CMat, C64, ONE, ZERO};

/// Matrix-valued algebra homomorphism, one matrix per basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub label: String,
    pub dim: usize,
    pub matrices: Vec<CMat>,
}

impl Representation {
    pub fn new(label: impl Into<String>, matrices: Vec<CMat>) -> Result<Self> {
        let dim = matrices.first().map(|m| m.nrows()).unwrap_or(0);
        if dim == 0 || matrices.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::InvalidRepresentation("matrices must be square, nonempty and equal-sized".into()));
        }
        Ok(Representation { label: label.into(), dim, matrices })
    }

    /// The one-dimensional representation given by the counit.
    pub fn trivial(a: &HopfAlgebra) -> Self {
        let m = a.counit_vec().iter().map(|&e| CMat::from_element(1, 1, e)).collect();
        Representation { label: "trivial".into(), dim: 1, matrices: m }
    }

    pub fn matrix(&self, i: usize) -> &CMat {
        &self.matrices[i]
    }

    /// `Γ(x) = Σ x_i Γ(g_i)`.
    pub fn evaluate(&self, x: &AlgebraElement) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for (xi, g) in x.coeffs.iter().zip(&self.matrices) {
            if !linalg::is_zero(*xi) {
                m += g * *xi;
            }
        }
        m
    }

    pub fn character(&self) -> DualElement {
        DualElement::new(self.matrices.iter().map(|m| m.trace()).collect())
    }

    /// The matrix-element functional `Γ_rc`.
    pub fn entry(&self, r: usize, c: usize) -> DualElement {
        DualElement::new(self.matrices.iter().map(|m| m[(r, c)]).collect())
    }

    /// Max residual of the homomorphism, unit and unitarity conditions.
    pub fn defect(&self, a: &HopfAlgebra) -> f64 {
        let d = a.dim();
        if self.matrices.len() != d {
            return f64::INFINITY;
        }
        let mut r = linalg::mat_max_abs_diff(&self.matrices[0], &CMat::identity(self.dim, self.dim));
        for x in 0..d {
            for y in 0..d {
                let lhs = &self.matrices[x] * &self.matrices[y];
                let mut rhs = CMat::zeros(self.dim, self.dim);
                for &(c, v) in a.mul_terms(x, y) {
                    rhs += &self.matrices[c] * v;
                }
                r = r.max(linalg::mat_max_abs_diff(&lhs, &rhs));
            }
            let star = self.evaluate(&a.star(&a.basis(x)));
            r = r.max(linalg::mat_max_abs_diff(&star, &self.matrices[x].adjoint()));
        }
        r
    }
}

/// `(Γ⊗Φ)(h) = Σ Γ(h^(1)) ⊗ Φ(h^(2))`.
pub fn tensor_product(a: &HopfAlgebra, g: &Representation, f: &Representation) -> Representation {
    let d = a.dim();
    let n = g.dim * f.dim;
    let matrices = (0..d)
        .map(|x| {
            let mut m = CMat::zeros(n, n);
            for &(b, c, v) in a.comul_terms(x) {
                m += g.matrices[b].kronecker(&f.matrices[c]) * v;
            }
            m
        })
        .collect();
    Representation { label: format!("{}⊗{}", g.label, f.label), dim: n, matrices }
}

/// `Σ Φ(S(λ^(1))) f Γ(λ^(2))`.
pub fn schur_average(a: &HopfAlgebra, phi: &Representation, gamma: &Representation, f: &CMat) -> Result<CMat> {
    if f.shape() != (phi.dim, gamma.dim) {
        return Err(Error::DimensionMismatch(format!(
            "f is {}x{}, expected {}x{}",
            f.nrows(),
            f.ncols(),
            phi.dim,
            gamma.dim
        )));
    }
    let lam = a.haar_integral()?;
    let t = a.comultiply(lam);
    let d = a.dim();
    let s_phi: Vec<CMat> = (0..d).map(|x| phi.evaluate(&a.antipode(&a.basis(x)))).collect();
    let mut out = CMat::zeros(phi.dim, gamma.dim);
    for x in 0..d {
        for y in 0..d {
            let v = t.tensor[x * d + y];
            if !linalg::is_zero(v) {
                out += &s_phi[x] * f * &gamma.matrices[y] * v;
            }
        }
    }
    Ok(out)
}

/// `⟨χ, ψ⟩ = Σ χ(S(λ^(1))) ψ(λ^(2))`; the multiplicity pairing for characters.
pub fn character_pairing(a: &HopfAlgebra, chi: &DualElement, psi: &DualElement) -> Result<C64> {
    let lam = a.haar_integral()?;
    let t = a.comultiply(lam);
    let s_chi = a.dual_antipode(chi);
    let d = a.dim();
    let mut s = ZERO;
    for x in 0..d {
        for y in 0..d {
            s += t.tensor[x * d + y] * s_chi.coeffs[x] * psi.coeffs[y];
        }
    }
    Ok(s)
}

/// Central idempotent `e_Ψ = d_Ψ Σ χ_Ψ(S(λ^(1))) λ^(2)`, which acts as the identity on Ψ
/// and as zero on every other irrep.
pub fn central_idempotent(a: &HopfAlgebra, psi: &Representation) -> Result<AlgebraElement> {
    let lam = a.haar_integral()?;
    let t = a.comultiply(lam);
    let s_chi = a.dual_antipode(&psi.character());
    let d = a.dim();
    let mut e = vec![ZERO; d];
    for x in 0..d {
        for y in 0..d {
            e[y] += t.tensor[x * d + y] * s_chi.coeffs[x];
        }
    }
    Ok(AlgebraElement::new(e).scale(linalg::c(psi.dim as f64, 0.0)))
}

/// Derives the irreps of a semisimple algebra, or verifies supplied ones.
///
/// Output is sorted: trivial first, then by dimension and by the character
/// vector (rounded, descending lexicographic).
pub fn decompose_irreps(a: &HopfAlgebra, supplied: Option<&[Representation]>) -> Result<Vec<Representation>> {
    let reps = match supplied {
        Some(s) => verify_irreps(a, s)?,
        None => derive_irreps(a)?,
    };
    let total: usize = reps.iter().map(|r| r.dim * r.dim).sum();
    if total != a.dim() {
        return Err(Error::DecompositionIncomplete { found: total, expected: a.dim() });
    }
    Ok(sort_irreps(a, reps))
}

fn verify_irreps(a: &HopfAlgebra, reps: &[Representation]) -> Result<Vec<Representation>> {
    let tol = a.tolerance();
    let chars: Vec<DualElement> = reps.iter().map(|r| r.character()).collect();
    for (i, r) in reps.iter().enumerate() {
        let def = r.defect(a);
        if !(def <= tol * 100.0) {
            return Err(Error::InvalidRepresentation(format!(
                "irrep `{}` fails homomorphism/unitarity by {def:.3e}",
                r.label
            )));
        }
        for (j, chi) in chars.iter().enumerate() {
            let p = character_pairing(a, &chars[i], chi)?;
            let want = if i == j { ONE } else { ZERO };
            if (p - want).norm() > tol * 100.0 {
                return Err(Error::InvalidRepresentation(format!(
                    "irreps `{}` and `{}` have character pairing {p}",
                    r.label, reps[j].label
                )));
            }
        }
    }
    Ok(reps.to_vec())
}

fn sort_irreps(a: &HopfAlgebra, mut reps: Vec<Representation>) -> Vec<Representation> {
    let eps = a.counit_vec().to_vec();
    let tol = a.tolerance();
    let key = |r: &Representation| {
        let chi = r.character();
        let trivial = r.dim == 1 && linalg::max_abs_diff(&chi.coeffs, &eps) <= tol * 100.0;
        let q = 1e-8_f64.max(tol * 100.0);
        let rounded: Vec<(i64, i64)> = chi
            .coeffs
            .iter()
            .map(|z| (-(z.re / q).round() as i64, -(z.im / q).round() as i64))
            .collect();
        (r.dim, !trivial, rounded)
    };
    reps.sort_by_cached_key(key);
    for (k, r) in reps.iter_mut().enumerate() {
        r.label = format!("rep{k}");
    }
    reps
}

fn derive_irreps(a: &HopfAlgebra) -> Result<Vec<Representation>> {
    let d = a.dim();
    let tol = a.tolerance().max(1e-13);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1dea);
    let lmats: Vec<CMat> = (0..d).map(|x| a.left_mult_matrix(&a.basis(x))).collect();
    let rmats: Vec<CMat> = (0..d).map(|x| a.right_mult_matrix(&a.basis(x))).collect();

    // Center: elements commuting with every basis element.
    let mut sys = CMat::zeros(d * d, d);
    for x in 0..d {
        sys.view_mut((x * d, 0), (d, d)).copy_from(&(&lmats[x] - &rmats[x]));
    }
    let center = linalg::nullspace(&sys, tol);
    let k = center.ncols();

    let gram = a.gram()?.clone();
    let idempotents = central_idempotents(a, &center, &gram, &mut rng)?;
    if idempotents.len() != k {
        return Err(Error::DecompositionIncomplete { found: idempotents.len(), expected: k });
    }

    let mut reps = Vec::with_capacity(k);
    for e in &idempotents {
        // Two-sided ideal A e, spanned by g_x e.
        let mut span = CMat::zeros(d, d);
        for x in 0..d {
            let col = a.mul_raw(&a.basis(x).coeffs, &e.coeffs);
            span.set_column(x, &nalgebra::DVector::from_vec(col));
        }
        let block = linalg::column_space(&span, 1e-9);
        let n = block.ncols();
        let di = (n as f64).sqrt().round() as usize;
        if di * di != n || di == 0 {
            return Err(Error::DecompositionIncomplete { found: n, expected: di * di });
        }
        let left_ideal = minimal_left_ideal(a, &block, &gram, di, &mut rng)?;
        reps.push(restrict_left_regular(&left_ideal, &gram, &lmats)?);
    }
    Ok(reps)
}

fn central_idempotents(a: &HopfAlgebra, center: &CMat, gram: &CMat, rng: &mut ChaCha8Rng) -> Result<Vec<AlgebraElement>> {
    let k = center.ncols();
    let basis = gram_orthonormal(center, gram)?;
    for _ in 0..16 {
        let c = random_self_adjoint(a, &basis, rng);
        let m = basis.adjoint() * gram * a.left_mult_matrix(&c) * &basis;
        let (vals, vecs) = linalg::hermitian_eigen(&m);
        let scale = vals.iter().map(|x| x.abs()).fold(1.0, f64::max);
        if vals.windows(2).any(|w| w[1] - w[0] <= 1e-6 * scale) {
            continue;
        }
        let mut out = Vec::with_capacity(k);
        for col in 0..k {
            let e: Vec<C64> = (&basis * vecs.column(col)).iter().cloned().collect();
            let e2 = a.mul_raw(&e, &e);
            let num: C64 = e.iter().zip(&e2).map(|(x, y)| x.conj() * y).sum();
            let den: C64 = e.iter().map(|x| x.conj() * x).sum();
            let alpha = num / den;
            out.push(AlgebraElement::new(e.into_iter().map(|z| z / alpha).collect()));
        }
        return Ok(out);
    }
    Err(Error::DecompositionIncomplete { found: 0, expected: k })
}

/// A `dim`-dimensional left ideal inside the simple block spanned by `block`:
/// the lowest eigenspace of right multiplication by a generic self-adjoint
/// block element.
fn minimal_left_ideal(a: &HopfAlgebra, block: &CMat, gram: &CMat, dim: usize, rng: &mut ChaCha8Rng) -> Result<CMat> {
    if dim == 1 {
        return Ok(block.clone());
    }
    let basis = gram_orthonormal(block, gram)?;
    for _ in 0..16 {
        let r = random_self_adjoint(a, &basis, rng);
        let m = basis.adjoint() * gram * a.right_mult_matrix(&r) * &basis;
        let (vals, vecs) = linalg::hermitian_eigen(&m);
        let scale = vals.iter().map(|x| x.abs()).fold(1.0, f64::max);
        let size = vals.iter().take_while(|&&x| x - vals[0] <= 1e-7 * scale).count();
        let gap = vals.get(size).is_none_or(|&x| x - vals[0] > 1e-4 * scale);
        if size == dim && gap {
            return Ok(&basis * vecs.columns(0, dim));
        }
    }
    Err(Error::DecompositionIncomplete { found: 0, expected: dim })
}

/// Columns spanning the same space as `w`, orthonormal for the Gram inner product.
fn gram_orthonormal(w: &CMat, gram: &CMat) -> Result<CMat> {
    let m = w.adjoint() * gram * w;
    let m = (&m + m.adjoint()) * linalg::c(0.5, 0.0);
    let l = linalg::cholesky(&m, 0.0).map_err(|(_, p)| Error::GramDefect(p.abs()))?;
    Ok(w * linalg::lower_inverse(&l).adjoint())
}

fn random_self_adjoint(a: &HopfAlgebra, basis: &CMat, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let y = basis * nalgebra::DVector::from_vec(linalg::random_vector(rng, basis.ncols()));
    let y = AlgebraElement::new(y.iter().cloned().collect());
    &y + &a.star(&y)
}

/// Left regular action restricted to an invariant subspace, in a basis
/// orthonormal for the algebra inner product (which makes it unitary).
fn restrict_left_regular(w: &CMat, gram: &CMat, lmats: &[CMat]) -> Result<Representation> {
    let wn = gram_orthonormal(w, gram)?;
    let proj = wn.adjoint() * gram;
    let matrices = lmats.iter().map(|lx| &proj * lx * &wn).collect();
    Representation::new("rep", matrices)
}

/// `N_{ΓΦ}^Ψ` for every Ψ in `irreps`: multiplicities in `Γ⊗Φ`.
pub fn fusion_multiplicities(
    a: &HopfAlgebra,
    irreps: &[Representation],
    g: &Representation,
    f: &Representation,
) -> Result<Vec<usize>> {
    let t = tensor_product(a, g, f);
    multiplicities(a, irreps, &t)
}

/// Multiplicity of each irrep in an arbitrary representation.
pub fn multiplicities(a: &HopfAlgebra, irreps: &[Representation], rep: &Representation) -> Result<Vec<usize>> {
    let tol = a.tolerance();
    irreps
        .iter()
        .map(|psi| {
            let e = central_idempotent(a, psi)?;
            let n = rep.evaluate(&e).trace() / psi.dim as f64;
            let r = n.re.round();
            if (n - linalg::c(r, 0.0)).norm() >= 100.0 * tol || r < 0.0 {
                return Err(Error::NonIntegerMultiplicity(n.re));
            }
            Ok(r as usize)
        })
        .collect()
}

/// Grothendieck ring of `Rep(𝒜)`: `n[g][f][p] = N_{gf}^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionRing {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub n: Vec<Vec<Vec<usize>>>,
}

impl FusionRing {
    pub fn new(a: &HopfAlgebra, irreps: &[Representation]) -> Result<Self> {
        let n = irreps
            .iter()
            .map(|g| irreps.iter().map(|f| fusion_multiplicities(a, irreps, g, f)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(FusionRing {
            labels: irreps.iter().map(|r| r.label.clone()).collect(),
            dims: irreps.iter().map(|r| r.dim).collect(),
            n,
        })
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    /// Number of violations of `Σ_Ψ N_{ΓΦ}^Ψ N_{ΨΞ}^Ω = Σ_Ψ N_{ΦΞ}^Ψ N_{ΓΨ}^Ω`.
    pub fn associativity_violations(&self) -> usize {
        let r = self.rank();
        let mut bad = 0;
        for g in 0..r {
            for f in 0..r {
                for x in 0..r {
                    for o in 0..r {
                        let lhs: usize = (0..r).map(|p| self.n[g][f][p] * self.n[p][x][o]).sum();
                        let rhs: usize = (0..r).map(|p| self.n[f][x][p] * self.n[g][p][o]).sum();
                        bad += usize::from(lhs != rhs);
                    }
                }
            }
        }
        bad
    }

    /// Number of violations of `d_Γ d_Φ = Σ_Ψ N_{ΓΦ}^Ψ d_Ψ`.
    pub fn dimension_violations(&self) -> usize {
        let r = self.rank();
        let mut bad = 0;
        for g in 0..r {
            for f in 0..r {
                let s: usize = (0..r).map(|p| self.n[g][f][p] * self.dims[p]).sum();
                bad += usize::from(s != self.dims[g] * self.dims[f]);
            }
        }
        bad
    }

    /// Number of violations of `N_{𝟙Φ}^Ψ = δ_{ΦΨ} = N_{Φ𝟙}^Ψ`, with irrep 0 as the unit.
    pub fn unit_violations(&self) -> usize {
        let r = self.rank();
        let mut bad = 0;
        for f in 0..r {
            for p in 0..r {
                let want = usize::from(f == p);
                bad += usize::from(self.n[0][f][p] != want) + usize::from(self.n[f][0][p] != want);
            }
        }
        bad
    }
}

/// One fusion-basis vector `|Γ_ij⟩ = √(d_Γ|𝒜|) Σ Γ_ij(λ^(1)) λ^(2)`.
#[derive(Debug, Clone)]
pub struct FusionBasisVector {
    pub irrep: usize,
    pub i: usize,
    pub j: usize,
    pub state: AlgebraElement,
}

#[derive(Debug, Clone)]
pub struct FusionBasis {
    pub vectors: Vec<FusionBasisVector>,
    pub gram_defect: f64,
}

pub fn fusion_vector(a: &HopfAlgebra, gamma: &Representation, i: usize, j: usize) -> Result<AlgebraElement> {
    let lam = a.haar_integral()?;
    let t = a.comultiply(lam);
    let d = a.dim();
    let mut v = vec![ZERO; d];
    for x in 0..d {
        let w = gamma.matrices[x][(i, j)];
        if linalg::is_zero(w) {
            continue;
        }
        for y in 0..d {
            v[y] += w * t.tensor[x * d + y];
        }
    }
    let s = ((gamma.dim * d) as f64).sqrt();
    Ok(AlgebraElement::new(v).scale(linalg::c(s, 0.0)))
}

pub fn fusion_basis(a: &HopfAlgebra, irreps: &[Representation]) -> Result<FusionBasis> {
    let mut vectors = Vec::new();
    for (k, g) in irreps.iter().enumerate() {
        for i in 0..g.dim {
            for j in 0..g.dim {
                vectors.push(FusionBasisVector { irrep: k, i, j, state: fusion_vector(a, g, i, j)? });
            }
        }
    }
    let mut defect: f64 = 0.0;
    for (p, u) in vectors.iter().enumerate() {
        for (q, v) in vectors.iter().enumerate() {
            let g = a.inner_product(&u.state, &v.state)?;
            let want = if p == q { ONE } else { ZERO };
            defect = defect.max((g - want).norm());
        }
    }
    if vectors.len() != a.dim() {
        defect = defect.max(1.0);
    }
    if defect > a.tolerance() {
        return Err(Error::GramDefect(defect));
    }
    Ok(FusionBasis { vectors, gram_defect: defect })
}
