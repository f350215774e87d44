//! The dual Hopf algebra `𝒜̄`.
//!
//! The raw dual basis `{δ^i}` (with `δ^i(g_j) = δ_ij`) has unit `ε`, which is
//! generally not a basis vector. The dual algebra is therefore stored in the
//! basis `b_0 = ε, b_k = δ^{i_k}`, where the dropped `δ^p` is the raw basis
//! vector on which `ε` has its largest coefficient (the first such). If `ε`
//! already equals `δ^0`, no change of basis happens.

use super::{AlgebraData, AlgebraElement, DualElement, HopfAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64, ONE, ZERO};

/// A dual algebra together with the identification of its basis with functionals.
#[derive(Debug, Clone)]
pub struct Dual {
    pub algebra: HopfAlgebra,
    /// Column `k` holds the raw dual coordinates (values on `g_i`) of basis vector `b_k`.
    basis: CMat,
    inverse: CMat,
}

impl Dual {
    pub fn of(a: &HopfAlgebra) -> Result<Dual> {
        let raw = raw_dual(a);
        let d = a.dim();
        let eps = a.counit_vec();
        let already_unit = (eps[0] - ONE).norm() == 0.0 && eps[1..].iter().all(|z| linalg::is_zero(*z));
        let (basis, labels) = if already_unit {
            let labels = a.labels().iter().map(|l| format!("δ[{l}]")).collect();
            (CMat::identity(d, d), labels)
        } else {
            let mut pivot = 0;
            for i in 0..d {
                if eps[i].norm() > eps[pivot].norm() {
                    pivot = i;
                }
            }
            if eps[pivot].norm() == 0.0 {
                return Err(Error::AxiomViolation { axiom: "counit".into(), residual: 1.0 });
            }
            let mut p = CMat::zeros(d, d);
            let mut labels = vec!["1".to_string()];
            for (i, e) in eps.iter().enumerate() {
                p[(i, 0)] = *e;
            }
            let mut k = 1;
            for i in (0..d).filter(|&i| i != pivot) {
                p[(i, k)] = ONE;
                labels.push(format!("δ[{}]", a.labels()[i]));
                k += 1;
            }
            (p, labels)
        };
        let mut data = if already_unit { raw } else { raw.change_basis(&basis)? };
        data.labels = labels;
        data.name = dual_name(a.name());
        let inverse = linalg::inverse(&basis).expect("basis matrix is invertible");
        let algebra = HopfAlgebra::new(data)?;
        Ok(Dual { algebra, basis, inverse })
    }

    /// The functional represented by an element of the dual algebra.
    pub fn to_functional(&self, y: &AlgebraElement) -> DualElement {
        DualElement::new(mat_vec(&self.basis, &y.coeffs))
    }

    /// The element of the dual algebra representing a functional on the original algebra.
    pub fn from_functional(&self, phi: &DualElement) -> AlgebraElement {
        AlgebraElement::new(mat_vec(&self.inverse, &phi.coeffs))
    }

    /// Canonical identification of an element `x` of the original algebra with a
    /// functional on the dual algebra: `b_k ↦ b_k(x)`.
    pub fn evaluation(&self, x: &AlgebraElement) -> DualElement {
        let d = self.basis.nrows();
        DualElement::new(
            (0..d)
                .map(|k| (0..d).map(|i| self.basis[(i, k)] * x.coeffs[i]).sum())
                .collect(),
        )
    }

    /// Inverse of [`Dual::evaluation`].
    pub fn evaluated_element(&self, f: &DualElement) -> AlgebraElement {
        let d = self.basis.nrows();
        AlgebraElement::new(
            (0..d)
                .map(|i| (0..d).map(|k| self.inverse[(k, i)] * f.coeffs[k]).sum())
                .collect(),
        )
    }

    pub fn basis_matrix(&self) -> &CMat {
        &self.basis
    }
}

fn mat_vec(m: &CMat, v: &[C64]) -> Vec<C64> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum()).collect()
}

fn dual_name(name: &str) -> String {
    match name.strip_prefix("C[").and_then(|s| s.strip_suffix(']')) {
        Some(g) => format!("F({g})"),
        None => match name.strip_prefix("F(").and_then(|s| s.strip_suffix(')')) {
            Some(g) => format!("C[{g}]"),
            None => format!("dual({name})"),
        },
    }
}

/// Structure constants of the dual in the raw dual basis.
fn raw_dual(a: &HopfAlgebra) -> AlgebraData {
    let d = a.dim();
    let src = a.data();
    let idx = |x: usize, y: usize, z: usize| (x * d + y) * d + z;
    let mut out = AlgebraData::zeros(dual_name(a.name()), d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                // ⟨δ^i δ^j, g_k⟩ = C_k^{ij};  Δ̄(δ^k) = Σ A_ij^k δ^i ⊗ δ^j
                out.mul[idx(i, j, k)] = src.comul[idx(k, i, j)];
                out.comul[idx(k, i, j)] = src.mul[idx(i, j, k)];
            }
        }
    }
    out.counit = (0..d).map(|k| if k == 0 { ONE } else { ZERO }).collect();
    out.antipode = src.antipode.transpose();
    // (φ*)_b = Σ_d conj(φ_d) Σ_c S_b^c conj(Star_c^d)  (antilinear star)
    let s = &src.antipode;
    let st = &src.star;
    out.star = CMat::from_fn(d, d, |dd, b| {
        (0..d)
            .map(|cc| {
                if src.star_conjugate {
                    s[(b, cc)] * st[(cc, dd)].conj()
                } else {
                    (s[(b, cc)] * st[(cc, dd)]).conj()
                }
            })
            .sum()
    });
    out.star_conjugate = true;
    out.tolerance = src.tolerance;
    out
}

impl HopfAlgebra {
    pub fn dual_algebra(&self) -> Result<HopfAlgebra> {
        Ok(Dual::of(self)?.algebra)
    }
}
