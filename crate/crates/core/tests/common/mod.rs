#![allow(dead_code)]

use hopfstate::hopf::{AlgebraElement, HopfAlgebra};
use hopfstate::rep::Representation;
use hopfstate::zoo::GroupSpec;
use hopfstate::CMat;
use hopfstate::zoo;
use hopfstate::C64;
use proptest::prelude::*;

pub fn zoo_all() -> Vec<HopfAlgebra> {
    zoo::ZOO_NAMES.iter().map(|n| zoo::by_name(n).unwrap()).collect()
}

/// A small mixed set: abelian, non-abelian, and a non-cocommutative dual.
pub fn zoo_small() -> Vec<HopfAlgebra> {
    ["Z2", "Z3", "S3", "F(S3)"].iter().map(|n| zoo::by_name(n).unwrap()).collect()
}

pub fn element(coeffs: &[(f64, f64)]) -> AlgebraElement {
    AlgebraElement::new(coeffs.iter().map(|&(r, i)| C64::new(r, i)).collect())
}

pub fn coeffs(d: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
}

/// Index of a zoo algebra among `["Z2", "Z3", "S3", "F(S3)"]`.
pub fn small_index() -> impl Strategy<Value = usize> {
    0usize..4
}

/// S3 characters by class, `[e, transpositions, 3-cycles]`:
/// trivial `(1, 1, 1)`, sign `(1, -1, 1)`, standard `(2, 0, -1)`.
pub fn s3_class(g: &GroupSpec, x: usize) -> usize {
    let mut y = x;
    let mut order = 1;
    while y != 0 {
        y = g.table[y][x];
        order += 1;
    }
    match order {
        1 => 0,
        2 => 1,
        3 => 2,
        _ => unreachable!(),
    }
}

pub const S3_TABLE: [[f64; 3]; 3] = [[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [2.0, 0.0, -1.0]];

pub fn identify_s3(g: &GroupSpec, r: &Representation) -> usize {
    let chi = r.character();
    (0..3)
        .find(|&k| (0..6).all(|x| (chi.coeffs[x] - C64::new(S3_TABLE[k][s3_class(g, x)], 0.0)).norm() < 1e-9))
        .expect("character matches a row of the table")
}


/// Textbook CSS cluster state on a qubit ring of `n` sites: `|+⟩` on odd
/// sites (1-based), `|0⟩` on even sites, then CX from each odd site to both
/// neighbours. Gates act on a plain amplitude vector, site 0 most significant.
pub fn textbook_css(n: usize, periodic: bool) -> Vec<C64> {
    let dim = 1usize << n;
    let bit = |s: usize| 1usize << (n - 1 - s);
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    amps[0] = C64::new(1.0, 0.0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for s in (0..n).step_by(2) {
        let mut next = vec![C64::new(0.0, 0.0); dim];
        for (i, &z) in amps.iter().enumerate() {
            let low = i & !bit(s);
            let sign = if i & bit(s) != 0 { -1.0 } else { 1.0 };
            next[low] += z * h;
            next[low | bit(s)] += z * h * sign;
        }
        amps = next;
    }
    let cx = |amps: &[C64], c: usize, t: usize| -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); dim];
        for (i, &z) in amps.iter().enumerate() {
            let j = if i & bit(c) != 0 { i ^ bit(t) } else { i };
            out[j] += z;
        }
        out
    };
    for s in (0..n).step_by(2) {
        if s > 0 || periodic {
            amps = cx(&amps, s, (s + n - 1) % n);
        }
        if s + 1 < n || periodic {
            amps = cx(&amps, s, (s + 1) % n);
        }
    }
    amps
}

/// `(I + P⊗…⊗P)/2` for `P = X` or `Z`.
pub fn css_projector(n: usize, x: bool) -> CMat {
    let one = C64::new(1.0, 0.0);
    let p = if x {
        CMat::from_row_slice(2, 2, &[C64::new(0.0, 0.0), one, one, C64::new(0.0, 0.0)])
    } else {
        CMat::from_row_slice(2, 2, &[one, C64::new(0.0, 0.0), C64::new(0.0, 0.0), -one])
    };
    let mut k = CMat::identity(1, 1);
    for _ in 0..n {
        k = k.kronecker(&p);
    }
    (CMat::identity(1 << n, 1 << n) + k) * C64::new(0.5, 0.0)
}

