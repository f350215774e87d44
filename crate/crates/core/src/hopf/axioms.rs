use super::HopfAlgebra;
use crate::error::Result;
use crate::linalg::{self, C64, ONE, ZERO};

/// Max-norm residual of every axiom, in checking order.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub entries: Vec<(&'static str, f64)>,
}

impl AxiomReport {
    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.1).fold(0.0, f64::max)
    }

    pub fn first_failure(&self, tol: f64) -> Option<(&'static str, f64)> {
        self.entries.iter().find(|e| !(e.1 <= tol)).copied()
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.0 == name).map(|e| e.1)
    }

    fn push(&mut self, name: &'static str, r: f64) {
        self.entries.push((name, r));
    }
}

fn delta(a: usize, b: usize) -> C64 {
    if a == b {
        ONE
    } else {
        ZERO
    }
}

impl HopfAlgebra {
    /// Residuals of all axioms, including positivity of the inner product.
    ///
    /// Haar data is needed for the positivity check; failures to find a
    /// unique integral are reported as errors rather than residuals.
    pub fn axiom_report(&self) -> Result<AxiomReport> {
        let mut rep = self.structural_report();
        rep.push("positivity", self.positivity_defect()?);
        Ok(rep)
    }

    /// Residuals of the Hopf and star axioms (no Haar data needed).
    pub fn structural_report(&self) -> AxiomReport {
        let d = self.dim();
        let mut rep = AxiomReport::default();
        let worst = |acc: &mut f64, z: C64| *acc = acc.max(z.norm());

        let mut r = 0.0;
        for b in 0..d {
            for c in 0..d {
                worst(&mut r, self.mul_coeff(0, b, c) - delta(b, c));
                worst(&mut r, self.mul_coeff(b, 0, c) - delta(b, c));
            }
        }
        rep.push("unit", r);

        let eps = self.counit_vec();
        let mut r = 0.0;
        for a in 0..d {
            for x in 0..d {
                let left: C64 = (0..d).map(|b| eps[b] * self.comul_coeff(a, b, x)).sum();
                let right: C64 = (0..d).map(|c| eps[c] * self.comul_coeff(a, x, c)).sum();
                worst(&mut r, left - delta(a, x));
                worst(&mut r, right - delta(a, x));
            }
        }
        rep.push("counit", r);

        let mut r = 0.0;
        for a in 0..d {
            for b in 0..d {
                let ab = self.mul_raw(&self.basis(a).coeffs, &self.basis(b).coeffs);
                for c in 0..d {
                    let gc = self.basis(c).coeffs;
                    let lhs = self.mul_raw(&ab, &gc);
                    let bc = self.mul_raw(&self.basis(b).coeffs, &gc);
                    let rhs = self.mul_raw(&self.basis(a).coeffs, &bc);
                    r = f64::max(r, linalg::max_abs_diff(&lhs, &rhs));
                }
            }
        }
        rep.push("associativity", r);

        let mut r = 0.0;
        for a in 0..d {
            let t = self.comultiply(&self.basis(a));
            let left = self.expand_leg(&t, 0);
            let right = self.expand_leg(&t, 1);
            r = f64::max(r, left.max_diff(&right));
        }
        rep.push("coassociativity", r);

        let mut r = (eps[0] - ONE).norm();
        for b in 0..d {
            for c in 0..d {
                let want = if b == 0 && c == 0 { ONE } else { ZERO };
                worst(&mut r, self.comul_coeff(0, b, c) - want);
            }
        }
        rep.push("unital-coproduct", r);

        // Δ(g_a g_b) = Δ(g_a) Δ(g_b)
        let mut r = 0.0;
        for a in 0..d {
            let da = self.comultiply(&self.basis(a));
            for b in 0..d {
                let db = self.comultiply(&self.basis(b));
                let ab = super::AlgebraElement::new(self.mul_raw(&self.basis(a).coeffs, &self.basis(b).coeffs));
                let lhs = self.comultiply(&ab);
                let mut rhs = vec![ZERO; d * d];
                for i in 0..d {
                    for j in 0..d {
                        let u = da.tensor[i * d + j];
                        if linalg::is_zero(u) {
                            continue;
                        }
                        for k in 0..d {
                            for l in 0..d {
                                let v = db.tensor[k * d + l];
                                if linalg::is_zero(v) {
                                    continue;
                                }
                                for &(p, x) in self.mul_terms(i, k) {
                                    for &(q, y) in self.mul_terms(j, l) {
                                        rhs[p * d + q] += u * v * x * y;
                                    }
                                }
                            }
                        }
                    }
                }
                r = f64::max(r, linalg::max_abs_diff(&lhs.tensor, &rhs));
            }
        }
        rep.push("bialgebra", r);

        let mut r = 0.0;
        for a in 0..d {
            for b in 0..d {
                let e: C64 = self.mul_terms(a, b).iter().map(|&(c, v)| v * eps[c]).sum();
                worst(&mut r, e - eps[a] * eps[b]);
            }
        }
        rep.push("counit-multiplicative", r);

        // μ(S⊗id)Δ = ηε = μ(id⊗S)Δ
        let s = self.antipode_matrix();
        let mut r = 0.0;
        for a in 0..d {
            let mut left = vec![ZERO; d];
            let mut right = vec![ZERO; d];
            for &(b, c, v) in self.comul_terms(a) {
                for k in 0..d {
                    let sb = s[(b, k)];
                    if !linalg::is_zero(sb) {
                        for &(e, w) in self.mul_terms(k, c) {
                            left[e] += v * sb * w;
                        }
                    }
                    let sc = s[(c, k)];
                    if !linalg::is_zero(sc) {
                        for &(e, w) in self.mul_terms(b, k) {
                            right[e] += v * sc * w;
                        }
                    }
                }
            }
            for e in 0..d {
                let want = if e == 0 { eps[a] } else { ZERO };
                worst(&mut r, left[e] - want);
                worst(&mut r, right[e] - want);
            }
        }
        rep.push("antipode", r);

        let s2 = s * s;
        let mut r = 0.0;
        for a in 0..d {
            for b in 0..d {
                worst(&mut r, s2[(a, b)] - delta(a, b));
            }
        }
        rep.push("antipode-involutive", r);

        let mut r = 0.0;
        for a in 0..d {
            let x = self.basis(a).coeffs;
            r = f64::max(r, linalg::max_abs_diff(&self.star_raw(&self.star_raw(&x)), &x));
        }
        rep.push("star-involutive", r);

        rep.push("star-unit", linalg::max_abs_diff(&self.star_raw(&self.unit().coeffs), &self.unit().coeffs));

        let mut r = 0.0;
        for a in 0..d {
            for b in 0..d {
                let (x, y) = (self.basis(a).coeffs, self.basis(b).coeffs);
                let lhs = self.star_raw(&self.mul_raw(&x, &y));
                let rhs = self.mul_raw(&self.star_raw(&y), &self.star_raw(&x));
                r = f64::max(r, linalg::max_abs_diff(&lhs, &rhs));
            }
        }
        rep.push("star-antimultiplicative", r);

        // Δ(x*) = (* ⊗ *)Δ(x), antilinear on the coefficients.
        let mut r = 0.0;
        let stars: Vec<Vec<C64>> = (0..d).map(|b| self.star_raw(&self.basis(b).coeffs)).collect();
        let conj = self.data().star_conjugate;
        for a in 0..d {
            let lhs = self.comultiply(&self.star(&self.basis(a)));
            let mut rhs = vec![ZERO; d * d];
            for &(b, c, v) in self.comul_terms(a) {
                let v = if conj { v.conj() } else { v };
                for p in 0..d {
                    for q in 0..d {
                        rhs[p * d + q] += v * stars[b][p] * stars[c][q];
                    }
                }
            }
            r = f64::max(r, linalg::max_abs_diff(&lhs.tensor, &rhs));
        }
        rep.push("star-coproduct", r);

        let mut r = 0.0;
        for a in 0..d {
            let x = self.basis(a).coeffs;
            let lhs = self.star_raw(&self.antipode_raw(&x));
            let rhs = self.antipode_raw(&self.star_raw(&x));
            r = f64::max(r, linalg::max_abs_diff(&lhs, &rhs));
        }
        rep.push("star-antipode", r);

        rep
    }

    /// Zero if the Gram matrix of `⟨x, y⟩ = Λ(x*y)` is Hermitian positive definite.
    ///
    /// Otherwise the size of the offending pivot or asymmetry.
    fn positivity_defect(&self) -> Result<f64> {
        let g = self.gram()?;
        let herm = linalg::mat_max_abs_diff(g, &g.adjoint());
        if herm > self.tolerance() {
            return Ok(herm);
        }
        match linalg::cholesky(g, self.tolerance()) {
            Ok(_) => Ok(0.0),
            Err((_, pivot)) => Ok(2.0 * self.tolerance().max(f64::EPSILON) + (-pivot).max(0.0)),
        }
    }
}
