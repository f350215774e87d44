mod common;

use hopfstate::cluster::Boundary;
use hopfstate::hopf::DualElement;
use hopfstate::lattice::{self, ChainModel};
use hopfstate::linalg;
use hopfstate::qd::{self, QdLattice};
use hopfstate::state::StateVector;
use hopfstate::zoo;
use hopfstate::Error;
use proptest::prelude::*;
use rand::SeedableRng;

const TOL: f64 = 1e-9;

#[test]
fn lcp_holds_on_small_chains() {
    for (name, l, b) in [
        ("Z2", 2, Boundary::Periodic),
        ("Z2", 4, Boundary::Periodic),
        ("Z3", 2, Boundary::Periodic),
        ("S3", 2, Boundary::Periodic),
        ("F(S3)", 2, Boundary::Periodic),
        ("S3", 2, Boundary::Open),
        ("F(S3)", 3, Boundary::Open),
    ] {
        let a = zoo::by_name(name).unwrap();
        let m = ChainModel::new(&a, l, b).unwrap();
        let r = lattice::check_lcp(&m, 2, 1).unwrap();
        assert!(r.within(TOL), "{name} L={l} {b:?}: {:?}", r.failures(TOL));
        let g = lattice::ground_state_check(&m, 1).unwrap();
        assert!(g.within(TOL), "{name} L={l} {b:?}: {:?}", g.failures(TOL));
    }
}

#[test]
fn symmetries_hold_where_expected() {
    for (name, l, b) in [
        ("Z2", 3, Boundary::Periodic),
        ("S3", 2, Boundary::Periodic),
        ("S3", 2, Boundary::Open),
        ("F(S3)", 2, Boundary::Open),
        ("F(S3)", 3, Boundary::Open),
    ] {
        let a = zoo::by_name(name).unwrap();
        let m = ChainModel::new(&a, l, b).unwrap();
        let r = lattice::check_symmetries(&m, 2, 3).unwrap();
        assert!(r.within(TOL), "{name} L={l} {b:?}: {:?}", r.failures(TOL));
        assert_eq!(r.get("[D_Γ, A]").is_some(), b == Boundary::Periodic);
    }
}

#[test]
fn rep_string_commutes_on_periodic_non_cocommutative_chain() {
    let a = zoo::by_name("F(S3)").unwrap();
    let m = ChainModel::new(&a, 2, Boundary::Periodic).unwrap();
    let r = lattice::check_symmetries(&m, 2, 3).unwrap();
    for name in ["[D_Γ, A]", "[D_Γ, B]", "D_Γ D_Φ - Σ N_ΦΓ D", "D_1 - id", "D_Γ|GS> - d|GS>", "F_g F_h - F_gh", "[F_g, A]"] {
        assert!(r.get(name).unwrap() <= TOL, "{name}: {:?}", r.get(name));
    }
}

/// The regular string fails to commute with the `𝔅` term that straddles the
/// periodic seam when the algebra is not cocommutative.
#[test]
fn regular_string_breaks_at_the_periodic_seam() {
    let a = zoo::by_name("F(S3)").unwrap();
    let m = ChainModel::new(&a, 2, Boundary::Periodic).unwrap();
    let r = lattice::check_symmetries(&m, 2, 3).unwrap();
    assert!(r.get("[F_g, B]").unwrap() > 1e-3);
}

#[test]
fn quantum_double_fold_matches_chain_terms() {
    for (name, l, b) in [("S3", 2, Boundary::Periodic), ("F(S3)", 2, Boundary::Periodic), ("S3", 3, Boundary::Open), ("Z3", 3, Boundary::Periodic)] {
        let a = zoo::by_name(name).unwrap();
        let m = ChainModel::new(&a, l, b).unwrap();
        let (r, n) = qd::check_qd(&m).unwrap();
        assert!(r.max() <= 1e-10, "{name} L={l}: {:?}", r.entries);
        assert!(n > 0);
    }
}

#[test]
fn fold_has_one_face_per_tire() {
    let q = QdLattice::fold(3, Boundary::Periodic).unwrap();
    assert_eq!(q.vertices.len(), 3);
    assert_eq!(q.faces.len(), 3);
    for (j, f) in &q.faces {
        assert_eq!(j % 2, 0);
        assert_eq!(f.sites.len(), 3);
        assert!(f.sites.contains(j));
    }
    let q = QdLattice::fold(3, Boundary::Open).unwrap();
    assert_eq!(q.faces.len(), 2);
    assert_eq!(q.vertices[0].sites.len(), 2);
    assert_eq!(q.vertices[1].sites.len(), 3);
}

#[test]
fn terms_check_site_parity() {
    let a = zoo::by_name("Z2").unwrap();
    let m = ChainModel::new(&a, 2, Boundary::Periodic).unwrap();
    assert!(matches!(m.a_term(2, None), Err(Error::SiteParity { .. })));
    assert!(matches!(m.b_term(3), Err(Error::SiteParity { .. })));
    assert!(matches!(m.a_term(9, None), Err(Error::UnknownVertex(_))));
    assert!(m.b_rep_term(2, 7).is_err());
    assert_eq!(m.odd_sites(), vec![1, 3]);
    assert_eq!(m.even_sites(), vec![2, 4]);
}

#[test]
fn b_term_is_the_haar_dual_term() {
    for name in ["S3", "F(S3)"] {
        let a = zoo::by_name(name).unwrap();
        let m = ChainModel::new(&a, 2, Boundary::Periodic).unwrap();
        let lhs = m.b_term(2).unwrap();
        let rhs = m.b_dual_term(2, a.haar_measure().unwrap()).unwrap();
        let (r, _) = lhs.op.basis_residual(&rhs.op, &m.dims()).unwrap();
        assert!(r <= 1e-10, "{name}: {r}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn vertex_terms_multiply(k in 0usize..4, seed in any::<u64>()) {
        let a = &common::zoo_small()[k];
        let m = ChainModel::new(a, 2, Boundary::Periodic).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = hopfstate::AlgebraElement::new(linalg::random_vector(&mut rng, a.dim()));
        let h = hopfstate::AlgebraElement::new(linalg::random_vector(&mut rng, a.dim()));
        let gh = a.multiply(&g, &h).unwrap();
        let psi = StateVector::random(m.dims(), &mut rng).unwrap();
        let lhs = m.a_term(3, Some(&g)).unwrap().apply(&m.a_term(3, Some(&h)).unwrap().apply(&psi).unwrap()).unwrap();
        let rhs = m.a_term(3, Some(&gh)).unwrap().apply(&psi).unwrap();
        prop_assert!(lhs.max_diff(&rhs) <= 1e-9);
    }

    #[test]
    fn plaquette_terms_multiply(k in 0usize..4, seed in any::<u64>()) {
        let a = &common::zoo_small()[k];
        let m = ChainModel::new(a, 2, Boundary::Periodic).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = DualElement::new(linalg::random_vector(&mut rng, a.dim()));
        let g = DualElement::new(linalg::random_vector(&mut rng, a.dim()));
        let fg = a.dual_multiply(&f, &g);
        let psi = StateVector::random(m.dims(), &mut rng).unwrap();
        let lhs = m.b_dual_term(2, &f).unwrap().apply(&m.b_dual_term(2, &g).unwrap().apply(&psi).unwrap()).unwrap();
        let rhs = m.b_dual_term(2, &fg).unwrap().apply(&psi).unwrap();
        prop_assert!(lhs.max_diff(&rhs) <= 1e-9);
    }
}
