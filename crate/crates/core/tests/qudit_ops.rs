mod common;

use hopfstate::linalg::mat_max_abs_diff;
use hopfstate::ops::{self, Direction, XKind, ZKind};
use hopfstate::rep;
use hopfstate::state::StateVector;
use hopfstate::suite;
use hopfstate::zoo::{self, GroupSpec};
use hopfstate::{CMat, Error, C64};
use proptest::prelude::*;

use common::{coeffs, element, zoo_small};

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[test]
fn qubit_paulis_are_the_textbook_projectors() {
    let a = zoo::by_name("Z2").unwrap();
    let id = CMat::identity(2, 2);
    let x = CMat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
    let z = CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
    let half = c(0.5);
    assert!(mat_max_abs_diff(&ops::pauli_x(&a).unwrap(), &((&id + &x) * half)) <= 1e-12);
    assert!(mat_max_abs_diff(&ops::pauli_z(&a).unwrap(), &((&id + &z) * half)) <= 1e-12);
}

#[test]
fn paulis_are_hermitian_projectors() {
    for a in common::zoo_all() {
        for p in [ops::pauli_x(&a).unwrap(), ops::pauli_z(&a).unwrap()] {
            assert!(mat_max_abs_diff(&(&p * &p), &p) <= 1e-10);
            // Hermitian for the Haar inner product: G P = P† G.
            let g = a.gram().unwrap();
            assert!(mat_max_abs_diff(&(g * &p), &(p.adjoint() * g)) <= 1e-10, "{}", a.name());
        }
    }
}

#[test]
fn group_entanglers_match_the_group_law() {
    let g = GroupSpec::s3();
    let a = zoo::group_algebra(&g).unwrap();
    let n = g.order();
    let fwd = ops::controlled_x_kernel(&a, Direction::Left, false);
    let back = ops::controlled_x_kernel(&a, Direction::Right, false);
    for x in 0..n {
        for y in 0..n {
            let col = x * n + y;
            let gy = g.table[x][y];
            let yg = g.table[y][g.inverse[x]];
            for row in 0..n * n {
                let want_f = if row == x * n + gy { 1.0 } else { 0.0 };
                let want_b = if row == x * n + yg { 1.0 } else { 0.0 };
                assert!((fwd[(row, col)] - c(want_f)).norm() <= 1e-12);
                assert!((back[(row, col)] - c(want_b)).norm() <= 1e-12);
            }
        }
    }
}

#[test]
fn entanglers_invert_on_all_basis_pairs() {
    for a in common::zoo_all() {
        let r = suite::entangler_inverse_residuals(&a);
        assert!(r.max() <= 1e-12, "{}: {:?}", a.name(), r.entries);
        let d = a.dim();
        for x in 0..d {
            for y in 0..d {
                let psi = StateVector::basis_state(vec![d, d], &[x, y]).unwrap();
                for dir in [Direction::Left, Direction::Right] {
                    let once = ops::controlled_x(&a, dir, false, &psi, 0, 1).unwrap();
                    let back = ops::controlled_x(&a, dir, true, &once, 0, 1).unwrap();
                    assert!(back.max_diff(&psi) <= 1e-12);
                }
            }
        }
    }
}

#[test]
fn traced_irrep_actions_are_character_actions() {
    for a in zoo_small() {
        for g in rep::decompose_irreps(&a, None).unwrap() {
            for kind in ZKind::ALL {
                let (sign, side) = kind.t_form();
                let t = a.t_matrix(sign, side, &g.character());
                assert!(mat_max_abs_diff(&ops::j_matrix(&a, kind, &g), &t) <= 1e-10, "{} {}", a.name(), kind.name());
            }
        }
    }
}

#[test]
fn fused_traced_actions_compose() {
    for a in common::zoo_all() {
        let irreps = rep::decompose_irreps(&a, None).unwrap();
        let r = suite::j_fusion_residuals(&a, &irreps);
        assert!(r.max() <= 1e-10, "{}: {:?}", a.name(), r.entries);
    }
}

#[test]
fn trivial_irrep_traced_action_is_identity() {
    for a in zoo_small() {
        let triv = &rep::decompose_irreps(&a, None).unwrap()[0];
        let id = CMat::identity(a.dim(), a.dim());
        for kind in ZKind::ALL {
            assert!(mat_max_abs_diff(&ops::j_matrix(&a, kind, triv), &id) <= 1e-12);
        }
    }
}

#[test]
fn z_slices_assemble_into_the_matrix_leg() {
    let a = zoo::by_name("S3").unwrap();
    let irreps = rep::decompose_irreps(&a, None).unwrap();
    let g = irreps.iter().find(|g| g.dim == 2).unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
    let psi = StateVector::random(vec![6, 6], &mut rng).unwrap();
    let out = ops::apply_z(&a, ZKind::Z, g, &psi, 1).unwrap();
    assert_eq!(out.dims(), &[6, 6, 2, 2]);
    for r in 0..2 {
        for col in 0..2 {
            let slice = psi.apply(&[1], &ops::z_slice(&a, ZKind::Z, g, r, col)).unwrap();
            for x in 0..6 {
                for y in 0..6 {
                    assert!((out.get(&[x, y, r, col]) - slice.get(&[x, y])).norm() <= 1e-14);
                }
            }
        }
    }
}

#[test]
fn site_errors_are_reported() {
    let a = zoo::by_name("Z3").unwrap();
    let psi = StateVector::zeros(vec![3, 2]).unwrap();
    let r = ops::apply_x(&a, XKind::Left, &a.unit(), &psi, 1);
    assert!(matches!(r, Err(Error::SiteMismatch(_))));
    let r = ops::apply_x(&a, XKind::Left, &a.unit(), &psi, 5);
    assert!(matches!(r, Err(Error::SiteMismatch(_))));
    let psi = StateVector::zeros(vec![3, 3]).unwrap();
    let r = ops::controlled_x(&a, Direction::Left, false, &psi, 0, 0);
    assert!(matches!(r, Err(Error::SiteMismatch(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn regular_actions_are_homomorphisms(k in common::small_index(), x in coeffs(6), y in coeffs(6)) {
        let a = &zoo_small()[k];
        let d = a.dim();
        let (g, h) = (element(&x[..d]), element(&y[..d]));
        let gh = a.multiply(&g, &h).unwrap();
        for kind in [XKind::Left, XKind::Right] {
            let lhs = ops::x_matrix(a, kind, &g) * ops::x_matrix(a, kind, &h);
            prop_assert!(mat_max_abs_diff(&lhs, &ops::x_matrix(a, kind, &gh)) <= 1e-10);
        }
        // The tilde actions are anti-homomorphisms.
        for kind in [XKind::TildeLeft, XKind::TildeRight] {
            let lhs = ops::x_matrix(a, kind, &h) * ops::x_matrix(a, kind, &g);
            prop_assert!(mat_max_abs_diff(&lhs, &ops::x_matrix(a, kind, &gh)) <= 1e-10);
        }
    }

    #[test]
    fn left_action_adjoint_is_star(k in common::small_index(), x in coeffs(6)) {
        let a = &zoo_small()[k];
        let g = element(&x[..a.dim()]);
        let gram = a.gram().unwrap();
        let m = ops::x_matrix(a, XKind::Left, &g);
        let ms = ops::x_matrix(a, XKind::Left, &a.star(&g));
        prop_assert!(mat_max_abs_diff(&(gram * &m), &(ms.adjoint() * gram)) <= 1e-10);
    }

    #[test]
    fn opposite_side_traced_actions_commute(k in common::small_index()) {
        let a = &zoo_small()[k];
        let irreps = rep::decompose_irreps(a, None).unwrap();
        for g in &irreps {
            for f in &irreps {
                for (p, q) in [(ZKind::Z, ZKind::ZTilde), (ZKind::ZDagger, ZKind::ZTildeDagger)] {
                    let x = ops::j_matrix(a, p, g);
                    let y = ops::j_matrix(a, q, f);
                    prop_assert!(mat_max_abs_diff(&(&x * &y), &(&y * &x)) <= 1e-10);
                }
            }
        }
    }
}
