//! Hopf-* structure on a finite-dimensional algebra: coproduct, counit,
//! antipode, axiom verification, the Haar-state solver, and the dual.

use num_complex::Complex64;

use crate::algebra::{AlgebraElement, FDAlgebra, LinearFunctional, Tensor3};
use crate::error::{CqgError, Result};
use crate::linalg::{self, CMat, CVec};
use crate::report::ValidationReport;

/// Coproduct / counit / antipode tensors.
///
/// Conventions: `coproduct[i][j][k]` means `Delta(e_i) = sum d[i][j][k] e_j (x) e_k`
/// with the tensor leg ordering `(j, k) -> j*n + k`; `antipode[a][b]` means
/// `S(e_a) = sum_b antipode[a][b] e_b` (row convention, like the star matrix).
#[derive(Debug, Clone)]
pub struct HopfStructure {
    pub coproduct: Tensor3,
    pub counit: CVec,
    pub antipode: CMat,
}

/// An algebra together with its Hopf structure.
#[derive(Debug, Clone)]
pub struct QuantumGroup {
    pub algebra: FDAlgebra,
    pub hopf: HopfStructure,
}

impl HopfStructure {
    pub fn new(coproduct: Tensor3, counit: CVec, antipode: CMat) -> Result<Self> {
        let n = counit.len();
        if coproduct.ni != n || coproduct.nj != n || coproduct.nk != n {
            return Err(CqgError::ShapeMismatch(format!(
                "coproduct tensor {}x{}x{} for dim {}",
                coproduct.ni, coproduct.nj, coproduct.nk, n
            )));
        }
        if antipode.nrows() != n || antipode.ncols() != n {
            return Err(CqgError::ShapeMismatch(format!(
                "antipode matrix {}x{} for dim {}",
                antipode.nrows(),
                antipode.ncols(),
                n
            )));
        }
        Ok(HopfStructure {
            coproduct,
            counit,
            antipode,
        })
    }

    /// Matrix of the coproduct as a linear map C^n -> C^(n^2).
    pub fn coproduct_matrix(&self) -> CMat {
        let n = self.counit.len();
        let mut d = CMat::zeros(n * n, n);
        for (i, j, k, v) in self.coproduct.iter_nonzero() {
            d[(j * n + k, i)] = v;
        }
        d
    }

    pub fn coproduct_of(&self, x: &CVec) -> CVec {
        self.coproduct_matrix() * x
    }

    /// Apply the antipode to a coefficient vector.
    pub fn antipode_of(&self, x: &CVec) -> CVec {
        self.antipode.transpose() * x
    }

    pub fn counit_of(&self, x: &CVec) -> Complex64 {
        self.counit.dot(x)
    }
}

/// Per-axiom residuals for the Hopf structure on `a`.
pub fn validate_hopf(a: &FDAlgebra, h: &HopfStructure, tol: f64) -> ValidationReport {
    let n = a.dim;
    let mut report = ValidationReport::new();
    let aa = FDAlgebra::tensor_product(a, a);
    let d = h.coproduct_matrix();

    // coassociativity: (Delta (x) id) Delta = (id (x) Delta) Delta
    let mut coassoc: f64 = 0.0;
    for i in 0..n {
        let di = d.column(i);
        let mut lhs = CVec::zeros(n * n * n);
        let mut rhs = CVec::zeros(n * n * n);
        for j in 0..n {
            for k in 0..n {
                let c = di[j * n + k];
                if c.norm() == 0.0 {
                    continue;
                }
                let dj = d.column(j);
                for p in 0..n {
                    for q in 0..n {
                        lhs[(p * n + q) * n + k] += c * dj[p * n + q];
                    }
                }
                let dk = d.column(k);
                for p in 0..n {
                    for q in 0..n {
                        rhs[(j * n + p) * n + q] += c * dk[p * n + q];
                    }
                }
            }
        }
        coassoc = coassoc.max(linalg::max_abs_vec(&(lhs - rhs)));
    }
    report.push("coassociativity", coassoc, tol);

    // Delta is an algebra homomorphism into A (x) A
    let mut hom: f64 = 0.0;
    for i in 0..n {
        let ei = AlgebraElement::basis(n, i).coeffs;
        for j in 0..n {
            let ej = AlgebraElement::basis(n, j).coeffs;
            let lhs = &d * a.mul_coeffs(&ei, &ej);
            let rhs = aa.mul_coeffs(&(&d * ei.clone()), &(&d * ej.clone()));
            hom = hom.max(linalg::max_abs_vec(&(lhs - rhs)));
        }
    }
    report.push("coproduct_multiplicative", hom, tol);

    // unital: Delta(1) = 1 (x) 1
    let unital = linalg::max_abs_vec(&(&d * a.unit.clone() - aa.unit.clone()));
    report.push("coproduct_unital", unital, tol);

    // star: Delta(x*) = Delta(x)*
    let mut star_res: f64 = 0.0;
    for i in 0..n {
        let ei = AlgebraElement::basis(n, i).coeffs;
        let lhs = &d * a.star_coeffs(&ei);
        let rhs = aa.star_coeffs(&(&d * ei));
        star_res = star_res.max(linalg::max_abs_vec(&(lhs - rhs)));
    }
    report.push("coproduct_star", star_res, tol);

    // counit laws: (eps (x) id) Delta = id = (id (x) eps) Delta
    let mut counit_res: f64 = 0.0;
    for i in 0..n {
        let di = d.column(i);
        let mut left = CVec::zeros(n);
        let mut right = CVec::zeros(n);
        for j in 0..n {
            for k in 0..n {
                let c = di[j * n + k];
                left[k] += h.counit[j] * c;
                right[j] += h.counit[k] * c;
            }
        }
        let ei = AlgebraElement::basis(n, i).coeffs;
        counit_res = counit_res.max(linalg::max_abs_vec(&(left - ei.clone())));
        counit_res = counit_res.max(linalg::max_abs_vec(&(right - ei)));
    }
    report.push("counit_laws", counit_res, tol);

    // antipode law: m(S (x) id)Delta = eps(.)1 = m(id (x) S)Delta
    let mut antipode_res: f64 = 0.0;
    for i in 0..n {
        let di = d.column(i);
        let mut left = CVec::zeros(n);
        let mut right = CVec::zeros(n);
        for j in 0..n {
            for k in 0..n {
                let c = di[j * n + k];
                if c.norm() == 0.0 {
                    continue;
                }
                let ej = AlgebraElement::basis(n, j).coeffs;
                let ek = AlgebraElement::basis(n, k).coeffs;
                left += a.mul_coeffs(&h.antipode_of(&ej), &ek).scale(1.0) * c;
                right += a.mul_coeffs(&ej, &h.antipode_of(&ek)).scale(1.0) * c;
            }
        }
        let target = a.unit.clone() * h.counit[i];
        antipode_res = antipode_res.max(linalg::max_abs_vec(&(left - target.clone())));
        antipode_res = antipode_res.max(linalg::max_abs_vec(&(right - target)));
    }
    report.push("antipode_law", antipode_res, tol);

    // antipode bijective
    let s_rank = linalg::rank(&h.antipode, tol);
    report.push_flag("antipode_bijective", s_rank == n, tol);

    // cancellation / spanning: Delta(A)(A (x) 1) and Delta(A)(1 (x) A) span A (x) A
    for (name, right_leg_first) in [("span_right_leg", false), ("span_left_leg", true)] {
        let mut m = CMat::zeros(n * n, n * n);
        for i in 0..n {
            let di: CVec = d.column(i).into_owned();
            for j in 0..n {
                let ej = AlgebraElement::basis(n, j).coeffs;
                let other = if right_leg_first {
                    // 1 (x) e_j
                    let mut v = CVec::zeros(n * n);
                    for p in 0..n {
                        for q in 0..n {
                            v[p * n + q] = a.unit[p] * ej[q];
                        }
                    }
                    v
                } else {
                    // e_j (x) 1
                    let mut v = CVec::zeros(n * n);
                    for p in 0..n {
                        for q in 0..n {
                            v[p * n + q] = ej[p] * a.unit[q];
                        }
                    }
                    v
                };
                let col = aa.mul_coeffs(&di, &other);
                m.set_column(i * n + j, &col);
            }
        }
        let r = linalg::rank(&m, tol);
        report.push_flag(name, r == n * n, tol);
    }

    report
}

/// Solve the left/right invariance system for the Haar state.
///
/// Returns tau with `(id (x) tau) Delta = tau(.) 1 = (tau (x) id) Delta` and
/// `tau(1) = 1`; existence, uniqueness, positivity and faithfulness are all
/// verified rather than assumed.
pub fn haar_state(a: &FDAlgebra, h: &HopfStructure, tol: f64) -> Result<LinearFunctional> {
    let n = a.dim;
    // rows: 2 n^2 equations, unknowns: tau_k
    let mut m = CMat::zeros(2 * n * n, n);
    for (i, j, k, v) in h.coproduct.iter_nonzero() {
        // (id (x) tau)Delta(e_i) = tau(e_i) unit  -> sum_k d[i][j][k] tau_k - tau_i unit_j = 0
        m[(i * n + j, k)] += v;
        // (tau (x) id)Delta(e_i) = tau(e_i) unit  -> sum_j d[i][j][k] tau_j - tau_i unit_k = 0
        m[(n * n + i * n + k, j)] += v;
    }
    for i in 0..n {
        for j in 0..n {
            m[(i * n + j, i)] -= a.unit[j];
            m[(n * n + i * n + j, i)] -= a.unit[j];
        }
    }
    let ns = linalg::nullspace(&m, tol);
    match ns.ncols() {
        0 => return Err(CqgError::NoInvariantState),
        1 => {}
        k => return Err(CqgError::NonUnique(k)),
    }
    let v: CVec = ns.column(0).into_owned();
    let norm = v.dot(&a.unit);
    if norm.norm() < tol {
        return Err(CqgError::NotPositive("invariant functional has tau(1)=0".into()));
    }
    let tau = LinearFunctional::new(v / norm);
    let flags = a.check_functional(&tau, tol);
    if !flags.positive {
        return Err(CqgError::NotPositive("invariant state fails positivity".into()));
    }
    if !flags.faithful {
        return Err(CqgError::NotFaithful("Haar state has a null direction".into()));
    }
    Ok(tau)
}

/// True iff tau(xy) = tau(yx) on all basis pairs.
pub fn is_tracial(a: &FDAlgebra, tau: &LinearFunctional, tol: f64) -> bool {
    a.check_functional(tau, tol).tracial
}

/// The dual quantum group: multiplication transposes the coproduct and
/// vice versa; the star is `f*(x) = conj(f(S(x)*))`.
pub fn dual_hopf(a: &FDAlgebra, h: &HopfStructure) -> Result<QuantumGroup> {
    let n = a.dim;
    let labels: Vec<String> = a.basis_labels.iter().map(|l| format!("{}^", l)).collect();

    // dual multiplication: (f g)(x) = (f (x) g)(Delta x)
    let mut mult = Tensor3::zeros(n, n, n);
    for (k, i, j, v) in h.coproduct.iter_nonzero() {
        mult.set(i, j, k, v);
    }
    // unit of the dual is the counit
    let unit = h.counit.clone();
    // dual star from s^[i][b] = sum_a S[a][b]... see derivation in dual star test
    let mut star = CMat::zeros(n, n);
    for i in 0..n {
        for c in 0..n {
            let mut acc = linalg::czero();
            for b in 0..n {
                acc += h.antipode[(c, b)] * a.star[(b, i)].conj();
            }
            star[(i, c)] = acc;
        }
    }
    let dual_alg = FDAlgebra::new(labels, mult, unit, star)?;

    // dual coproduct transposes the multiplication: (Delta^ f)(x (x) y) = f(xy)
    let mut coproduct = Tensor3::zeros(n, n, n);
    for (j, k, i, v) in a.mult.iter_nonzero() {
        coproduct.set(i, j, k, v);
    }
    // dual counit is evaluation at the unit of A
    let counit = a.unit.clone();
    // dual antipode is the transpose of S
    let antipode = h.antipode.transpose();
    let dual_hopf = HopfStructure::new(coproduct, counit, antipode)?;

    Ok(QuantumGroup {
        algebra: dual_alg,
        hopf: dual_hopf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{function_algebra, group_algebra, FiniteGroup};
    use crate::wedderburn;

    #[test]
    fn function_algebra_hopf_axioms() {
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let rep = validate_hopf(&qg.algebra, &qg.hopf, 1e-10);
        assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn group_algebra_s3_hopf_axioms() {
        let qg = group_algebra(&FiniteGroup::symmetric3());
        let rep = validate_hopf(&qg.algebra, &qg.hopf, 1e-10);
        assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn zeroed_coproduct_fails() {
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let broken = HopfStructure::new(
            Tensor3::zeros(2, 2, 2),
            qg.hopf.counit.clone(),
            qg.hopf.antipode.clone(),
        )
        .unwrap();
        let rep = validate_hopf(&qg.algebra, &broken, 1e-9);
        assert!(!rep.passed());
        assert!(rep.residual_of("counit_laws").unwrap() >= 1.0);
        assert_eq!(rep.residual_of("span_right_leg").unwrap(), 1.0);
    }

    #[test]
    fn haar_on_function_algebra_is_uniform() {
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let tau = haar_state(&qg.algebra, &qg.hopf, 1e-9).unwrap();
        for i in 0..2 {
            assert!((tau.covector[i] - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        }
        assert!(is_tracial(&qg.algebra, &tau, 1e-9));
    }

    #[test]
    fn haar_on_group_algebra_is_identity_indicator() {
        let qg = group_algebra(&FiniteGroup::symmetric3());
        let tau = haar_state(&qg.algebra, &qg.hopf, 1e-9).unwrap();
        for g in 0..6 {
            let expect = if g == 0 { 1.0 } else { 0.0 };
            assert!((tau.covector[g] - Complex64::new(expect, 0.0)).norm() < 1e-12);
        }
        assert!(is_tracial(&qg.algebra, &tau, 1e-9));
    }

    #[test]
    fn haar_on_trivial_algebra() {
        let qg = function_algebra(&FiniteGroup::cyclic(1));
        let tau = haar_state(&qg.algebra, &qg.hopf, 1e-9).unwrap();
        assert!((tau.covector[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn dual_of_function_algebra_is_group_algebra() {
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let dual = dual_hopf(&qg.algebra, &qg.hopf).unwrap();
        assert!(dual.algebra.validate(1e-10).passed());
        let rep = validate_hopf(&dual.algebra, &dual.hopf, 1e-10);
        assert!(rep.passed(), "{:?}", rep);
        let dec = wedderburn::decompose(&dual.algebra, 0, 1e-9).unwrap();
        assert_eq!(dec.blocks, vec![1, 1]);
    }

    #[test]
    fn dual_of_group_algebra_s3_is_six_points() {
        let qg = group_algebra(&FiniteGroup::symmetric3());
        let dual = dual_hopf(&qg.algebra, &qg.hopf).unwrap();
        assert!(validate_hopf(&dual.algebra, &dual.hopf, 1e-10).passed());
        let dec = wedderburn::decompose(&dual.algebra, 0, 1e-9).unwrap();
        assert_eq!(dec.blocks, vec![1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn bidual_recovers_block_structure() {
        for qg in [
            function_algebra(&FiniteGroup::symmetric3()),
            group_algebra(&FiniteGroup::symmetric3()),
        ] {
            let d1 = dual_hopf(&qg.algebra, &qg.hopf).unwrap();
            let d2 = dual_hopf(&d1.algebra, &d1.hopf).unwrap();
            let b0 = wedderburn::decompose(&qg.algebra, 0, 1e-9).unwrap().blocks;
            let b2 = wedderburn::decompose(&d2.algebra, 0, 1e-9).unwrap().blocks;
            assert_eq!(b0, b2);
        }
    }

    #[test]
    fn haar_of_dual_exists_and_is_faithful() {
        for qg in [
            function_algebra(&FiniteGroup::dihedral4()),
            group_algebra(&FiniteGroup::dihedral4()),
        ] {
            let dual = dual_hopf(&qg.algebra, &qg.hopf).unwrap();
            let tau = haar_state(&dual.algebra, &dual.hopf, 1e-9).unwrap();
            let flags = dual.algebra.check_functional(&tau, 1e-9);
            assert!(flags.faithful);
        }
    }

    #[test]
    fn kac_antipode_is_involutive_on_tracial_examples() {
        let qg = group_algebra(&FiniteGroup::symmetric3());
        let s2 = qg.hopf.antipode.transpose() * qg.hopf.antipode.transpose();
        assert!(linalg::identity_residual(&s2) < 1e-12);
    }
}
