//! Hopf-qudit operators: regular actions, irrep actions, their traces, the
//! preferred Pauli pair and the controlled edge entanglers.
//!
//! All matrices act on coefficient columns of a single Hopf qudit, except the
//! entangler kernels, which act on (control, target) pairs with row index
//! `control * d + target`.

use crate::error::{Error, Result};
use crate::hopf::{AlgebraElement, HopfAlgebra, Side, Sign};
use crate::linalg::{self, CMat, C64, ZERO};
use crate::rep::Representation;
use crate::state::StateVector;

/// Regular actions: `→` is left multiplication, `←` right multiplication by `S(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XKind {
    /// `X→_g |h⟩ = |g h⟩`
    Left,
    /// `X←_g |h⟩ = |h S(g)⟩`
    Right,
    /// `X̃→_g |h⟩ = |S(g) h⟩`
    TildeLeft,
    /// `X̃←_g |h⟩ = |h g⟩`
    TildeRight,
}

/// Irrep actions with an extra `d_Γ × d_Γ` matrix leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZKind {
    /// `Σ |h^(1)⟩ ⊗ Γ(h^(2))`
    Z,
    /// `Σ Γ(S(h^(1))) ⊗ |h^(2)⟩`
    ZDagger,
    /// `Σ Γ(h^(1)) ⊗ |h^(2)⟩`
    ZTilde,
    /// `Σ |h^(1)⟩ ⊗ Γ(S(h^(2)))`
    ZTildeDagger,
}

impl ZKind {
    pub const ALL: [ZKind; 4] = [ZKind::Z, ZKind::ZDagger, ZKind::ZTilde, ZKind::ZTildeDagger];

    /// The dual-element action that the traced operator equals.
    pub fn t_form(self) -> (Sign, Side) {
        match self {
            ZKind::Z => (Sign::Plus, Side::Left),
            ZKind::ZDagger => (Sign::Minus, Side::Left),
            ZKind::ZTilde => (Sign::Minus, Side::Right),
            ZKind::ZTildeDagger => (Sign::Plus, Side::Right),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ZKind::Z => "J",
            ZKind::ZDagger => "J‡",
            ZKind::ZTilde => "J~",
            ZKind::ZTildeDagger => "J~‡",
        }
    }
}

/// Direction of a controlled regular action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `C X→`, used on odd→even edges.
    Left,
    /// `C X←`, used on even→odd edges.
    Right,
}

fn check_site(a: &HopfAlgebra, psi: &StateVector, site: usize) -> Result<()> {
    match psi.dims().get(site) {
        Some(&d) if d == a.dim() => Ok(()),
        Some(&d) => Err(Error::SiteMismatch(format!("site {site} has dim {d}, algebra has dim {}", a.dim()))),
        None => Err(Error::SiteMismatch(format!("site {site} out of range"))),
    }
}

pub fn x_matrix(a: &HopfAlgebra, kind: XKind, g: &AlgebraElement) -> CMat {
    match kind {
        XKind::Left => a.left_mult_matrix(g),
        XKind::Right => a.right_mult_matrix(&a.antipode(g)),
        XKind::TildeLeft => a.left_mult_matrix(&a.antipode(g)),
        XKind::TildeRight => a.right_mult_matrix(g),
    }
}

/// The `(r, c)` matrix-element slice of a `Z`-type operator, a map on one qudit.
pub fn z_slice(a: &HopfAlgebra, kind: ZKind, gamma: &Representation, r: usize, c: usize) -> CMat {
    let d = a.dim();
    let entry: Vec<C64> = gamma.matrices.iter().map(|m| m[(r, c)]).collect();
    let s = a.antipode_matrix();
    // Γ_rc(S(g_x)) = Σ_z S[(x, z)] Γ_rc(g_z)
    let entry_s: Vec<C64> = (0..d).map(|x| (0..d).map(|z| s[(x, z)] * entry[z]).sum()).collect();
    let mut m = CMat::zeros(d, d);
    for col in 0..d {
        for &(x, y, v) in a.comul_terms(col) {
            match kind {
                ZKind::Z => m[(x, col)] += v * entry[y],
                ZKind::ZDagger => m[(y, col)] += v * entry_s[x],
                ZKind::ZTilde => m[(y, col)] += v * entry[x],
                ZKind::ZTildeDagger => m[(x, col)] += v * entry_s[y],
            }
        }
    }
    m
}

/// Trace of the matrix leg of a `Z`-type operator.
pub fn j_matrix(a: &HopfAlgebra, kind: ZKind, gamma: &Representation) -> CMat {
    let d = a.dim();
    (0..gamma.dim).fold(CMat::zeros(d, d), |acc, r| acc + z_slice(a, kind, gamma, r, r))
}

/// Regular action of the Haar integral, a Hermitian projector.
pub fn pauli_x(a: &HopfAlgebra) -> Result<CMat> {
    Ok(a.left_mult_matrix(a.haar_integral()?))
}

/// `x ↦ Λ(x) 1`, the projector onto the unit element.
pub fn pauli_z(a: &HopfAlgebra) -> Result<CMat> {
    Ok(a.t_matrix(Sign::Plus, Side::Left, a.haar_measure()?))
}

/// Kernel of `C X→`, `C X←` or their inverses on (control, target).
pub fn controlled_x_kernel(a: &HopfAlgebra, dir: Direction, inverse: bool) -> CMat {
    let d = a.dim();
    let s = a.antipode_matrix();
    let mut k = CMat::zeros(d * d, d * d);
    for ctl in 0..d {
        for &(x, y, v) in a.comul_terms(ctl) {
            for b in 0..d {
                let col = ctl * d + b;
                let mut push = |lhs: usize, rhs: usize, w: C64| {
                    for &(c, m) in a.mul_terms(lhs, rhs) {
                        k[(y * d + c, col)] += v * w * m;
                    }
                };
                match (dir, inverse) {
                    // |g^(2)⟩|g^(1) h⟩
                    (Direction::Left, false) => push(x, b, linalg::ONE),
                    // |g^(2)⟩|S(g^(1)) h⟩
                    (Direction::Left, true) => {
                        for z in 0..d {
                            if !linalg::is_zero(s[(x, z)]) {
                                push(z, b, s[(x, z)]);
                            }
                        }
                    }
                    // |g^(2)⟩|h S(g^(1))⟩
                    (Direction::Right, false) => {
                        for z in 0..d {
                            if !linalg::is_zero(s[(x, z)]) {
                                push(b, z, s[(x, z)]);
                            }
                        }
                    }
                    // |g^(2)⟩|h g^(1)⟩
                    (Direction::Right, true) => push(b, x, linalg::ONE),
                }
            }
        }
    }
    k
}

/// `Σ_I coeffs[I] ⊗_k mats[k][I_k]`, with `coeffs` row-major over
/// `(mats[0].len(), mats[1].len(), …)`.
pub fn product_kernel(coeffs: &[C64], mats: &[Vec<CMat>]) -> CMat {
    assert!(!mats.is_empty());
    let expected: usize = mats.iter().map(|m| m.len()).product();
    assert_eq!(coeffs.len(), expected, "coefficient tensor shape");
    let n0 = mats[0][0].nrows();
    if mats.len() == 1 {
        let mut k = CMat::zeros(n0, n0);
        for (c, m) in coeffs.iter().zip(&mats[0]) {
            if !linalg::is_zero(*c) {
                k += m * *c;
            }
        }
        return k;
    }
    let stride = coeffs.len() / mats[0].len();
    let rest_dim: usize = mats[1..].iter().map(|m| m[0].nrows()).product();
    let mut k = CMat::zeros(n0 * rest_dim, n0 * rest_dim);
    for (i, m) in mats[0].iter().enumerate() {
        let block = &coeffs[i * stride..(i + 1) * stride];
        if block.iter().all(|z| linalg::is_zero(*z)) {
            continue;
        }
        k += m.kronecker(&product_kernel(block, &mats[1..]));
    }
    k
}

/// Per-basis-element matrices `g_a ↦ x_matrix(kind, g_a)`.
pub fn x_family(a: &HopfAlgebra, kind: XKind) -> Vec<CMat> {
    (0..a.dim()).map(|i| x_matrix(a, kind, &a.basis(i))).collect()
}

/// Per-basis-functional matrices `δ^a ↦ T^{δ^a}`.
pub fn t_family(a: &HopfAlgebra, sign: Sign, side: Side) -> Vec<CMat> {
    let d = a.dim();
    (0..d)
        .map(|i| {
            let mut f = vec![ZERO; d];
            f[i] = linalg::ONE;
            a.t_matrix(sign, side, &crate::hopf::DualElement::new(f))
        })
        .collect()
}

pub fn apply_x(a: &HopfAlgebra, kind: XKind, g: &AlgebraElement, psi: &StateVector, site: usize) -> Result<StateVector> {
    check_site(a, psi, site)?;
    psi.apply(&[site], &x_matrix(a, kind, g))
}

/// Applies a `Z`-type operator; the `d_Γ × d_Γ` matrix leg is appended as two
/// new last sites (row index, then column index).
pub fn apply_z(a: &HopfAlgebra, kind: ZKind, gamma: &Representation, psi: &StateVector, site: usize) -> Result<StateVector> {
    check_site(a, psi, site)?;
    let n = gamma.dim;
    let mut dims = psi.dims().to_vec();
    dims.extend([n, n]);
    let mut out = vec![ZERO; psi.len() * n * n];
    for r in 0..n {
        for c in 0..n {
            let slice = psi.apply(&[site], &z_slice(a, kind, gamma, r, c))?;
            for (i, z) in slice.amps().iter().enumerate() {
                out[(i * n + r) * n + c] = *z;
            }
        }
    }
    StateVector::new(dims, out)
}

pub fn apply_j(a: &HopfAlgebra, kind: ZKind, gamma: &Representation, psi: &StateVector, site: usize) -> Result<StateVector> {
    check_site(a, psi, site)?;
    psi.apply(&[site], &j_matrix(a, kind, gamma))
}

pub fn controlled_x(
    a: &HopfAlgebra,
    dir: Direction,
    inverse: bool,
    psi: &StateVector,
    control: usize,
    target: usize,
) -> Result<StateVector> {
    check_site(a, psi, control)?;
    check_site(a, psi, target)?;
    if control == target {
        return Err(Error::SiteMismatch(format!("control and target are both site {control}")));
    }
    psi.apply(&[control, target], &controlled_x_kernel(a, dir, inverse))
}
