mod common;

use hopfstate::hopf::{AlgebraElement, HopfAlgebra};
use hopfstate::zoo::{self, GroupSpec};
use hopfstate::{Error, C64};
use proptest::prelude::*;

use common::{coeffs, element, zoo_small};

fn tensor_product(a: &HopfAlgebra, s: &[C64], t: &[C64]) -> Vec<C64> {
    let d = a.dim();
    let mut out = vec![C64::new(0.0, 0.0); d * d];
    for (i, &x) in s.iter().enumerate() {
        for (j, &y) in t.iter().enumerate() {
            if x == C64::new(0.0, 0.0) || y == C64::new(0.0, 0.0) {
                continue;
            }
            let (a1, b1, a2, b2) = (i / d, i % d, j / d, j % d);
            for p in 0..d {
                let u = a.mul_coeff(a1, a2, p);
                if u == C64::new(0.0, 0.0) {
                    continue;
                }
                for q in 0..d {
                    out[p * d + q] += x * y * u * a.mul_coeff(b1, b2, q);
                }
            }
        }
    }
    out
}

fn max_diff(x: &[C64], y: &[C64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

#[test]
fn zoo_passes_every_axiom() {
    for a in common::zoo_all() {
        let r = a.axiom_report().unwrap();
        assert!(r.max_residual() <= 1e-10, "{}: {:?}", a.name(), r.first_failure(1e-10));
        assert!(r.entries.len() >= 15);
    }
}

#[test]
fn group_haar_is_uniform_average() {
    for name in ["Z2", "Z3", "Z4", "S3", "D4"] {
        let a = zoo::by_name(name).unwrap();
        let n = a.dim() as f64;
        let lam = a.haar_integral().unwrap();
        for c in &lam.coeffs {
            assert!((c - C64::new(1.0 / n, 0.0)).norm() <= 1e-12, "{name}");
        }
        let big = a.haar_measure().unwrap();
        assert!((big.coeffs[0] - C64::new(1.0, 0.0)).norm() <= 1e-12);
        assert!(big.coeffs[1..].iter().all(|c| c.norm() <= 1e-12));
        assert_eq!(a.integral_space_dim(), 1);
    }
}

#[test]
fn function_algebra_haar_is_point_mass_and_average() {
    for g in [GroupSpec::cyclic(3), GroupSpec::s3(), GroupSpec::d4()] {
        let dual = zoo::function_algebra_dual(&g).unwrap();
        let f = &dual.algebra;
        let n = g.order();
        // λ is δ_e as a function on the group.
        let lam = dual.to_functional(f.haar_integral().unwrap());
        for (i, c) in lam.coeffs.iter().enumerate() {
            let want = if i == 0 { 1.0 } else { 0.0 };
            assert!((c - C64::new(want, 0.0)).norm() <= 1e-12);
        }
        // Λ(b) is the group average of the function b.
        let big = f.haar_measure().unwrap();
        let m = dual.basis_matrix();
        for k in 0..n {
            let avg: C64 = (0..n).map(|i| m[(i, k)]).sum::<C64>() / n as f64;
            assert!((big.coeffs[k] - avg).norm() <= 1e-12);
        }
    }
}

#[test]
fn broken_structure_constants_are_rejected() {
    let a = zoo::by_name("S3").unwrap();
    let mut data = a.data().clone();
    let d = data.dim;
    // Swap two products: breaks associativity.
    let (i, j) = ((1 * d + 1) * d, (1 * d + 2) * d);
    for c in 0..d {
        data.mul.swap(i + c, j + c);
    }
    assert!(matches!(HopfAlgebra::new(data), Err(Error::AxiomViolation { .. })));

    let mut data = a.data().clone();
    data.counit[1] = C64::new(2.0, 0.0);
    assert!(matches!(HopfAlgebra::new(data), Err(Error::AxiomViolation { .. })));

    let mut data = a.data().clone();
    data.mul.pop();
    assert!(matches!(HopfAlgebra::new(data), Err(Error::DimensionMismatch(_))));
}

#[test]
fn bad_group_tables_are_rejected() {
    let labels = vec!["e".to_string(), "a".to_string()];
    let r = GroupSpec::from_table("bad", labels.clone(), vec![vec![0, 1], vec![1, 1]]);
    assert!(matches!(r, Err(Error::NotAGroup(_))));
    let r = GroupSpec::from_table("bad", labels, vec![vec![1, 0], vec![0, 1]]);
    assert!(matches!(r, Err(Error::NotAGroup(_))));
}

#[test]
fn commutativity_flags() {
    let s3 = zoo::by_name("S3").unwrap();
    let fs3 = zoo::by_name("F(S3)").unwrap();
    assert!(!s3.is_commutative() && s3.is_cocommutative());
    assert!(fs3.is_commutative() && !fs3.is_cocommutative());
    let z3 = zoo::by_name("Z3").unwrap();
    assert!(z3.is_commutative() && z3.is_cocommutative());
}

#[test]
fn inner_product_is_haar_gram() {
    for a in zoo_small() {
        let g = a.gram().unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let ip = a.inner_product(&a.basis(i), &a.basis(j)).unwrap();
                assert!((ip - g[(i, j)]).norm() <= 1e-12);
                assert!((g[(i, j)] - g[(j, i)].conj()).norm() <= 1e-12);
            }
        }
    }
}

#[test]
fn dual_of_dual_recovers_the_group_algebra() {
    let s3 = zoo::by_name("S3").unwrap();
    let f = zoo::by_name("F(S3)").unwrap();
    let ff = hopfstate::Dual::of(&f).unwrap().algebra;
    assert_eq!(ff.dim(), s3.dim());
    assert!(!ff.is_commutative() && ff.is_cocommutative());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn comultiplication_is_multiplicative(k in common::small_index(), x in coeffs(6), y in coeffs(6)) {
        let a = &zoo_small()[k];
        let d = a.dim();
        let (x, y) = (element(&x[..d]), element(&y[..d]));
        let lhs = a.comultiply(&a.multiply(&x, &y).unwrap()).tensor;
        let rhs = tensor_product(a, &a.comultiply(&x).tensor, &a.comultiply(&y).tensor);
        prop_assert!(max_diff(&lhs, &rhs) <= 1e-10);
    }

    #[test]
    fn antipode_reverses_products(k in common::small_index(), x in coeffs(6), y in coeffs(6)) {
        let a = &zoo_small()[k];
        let d = a.dim();
        let (x, y) = (element(&x[..d]), element(&y[..d]));
        let lhs = a.antipode(&a.multiply(&x, &y).unwrap());
        let rhs = a.multiply(&a.antipode(&y), &a.antipode(&x)).unwrap();
        prop_assert!(lhs.max_diff(&rhs) <= 1e-10);
        prop_assert!(a.antipode(&a.antipode(&x)).max_diff(&x) <= 1e-10);
    }

    #[test]
    fn counit_and_star_are_compatible(k in common::small_index(), x in coeffs(6), y in coeffs(6)) {
        let a = &zoo_small()[k];
        let d = a.dim();
        let (x, y) = (element(&x[..d]), element(&y[..d]));
        let xy = a.multiply(&x, &y).unwrap();
        prop_assert!((a.counit(&xy) - a.counit(&x) * a.counit(&y)).norm() <= 1e-10);
        let lhs = a.star(&xy);
        let rhs = a.multiply(&a.star(&y), &a.star(&x)).unwrap();
        prop_assert!(lhs.max_diff(&rhs) <= 1e-10);
        prop_assert!(a.star(&a.star(&x)).max_diff(&x) <= 1e-10);
    }

    #[test]
    fn haar_integral_absorbs(k in common::small_index(), x in coeffs(6)) {
        let a = &zoo_small()[k];
        let x: AlgebraElement = element(&x[..a.dim()]);
        let lam = a.haar_integral().unwrap();
        let e = a.counit(&x);
        prop_assert!(a.multiply(&x, lam).unwrap().max_diff(&lam.scale(e)) <= 1e-10);
        prop_assert!(a.multiply(lam, &x).unwrap().max_diff(&lam.scale(e)) <= 1e-10);
    }

    #[test]
    fn inner_product_is_positive(k in common::small_index(), x in coeffs(6)) {
        let a = &zoo_small()[k];
        let x = element(&x[..a.dim()]);
        let n = a.inner_product(&x, &x).unwrap();
        prop_assert!(n.im.abs() <= 1e-10);
        prop_assert!(n.re >= -1e-12);
    }
}
