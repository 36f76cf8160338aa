//! Left coactions on a second algebra, invariant states, the coaction
//! envelope unitary, and the induced action of classes over A on classes
//! over B.

use crate::algebra::{AlgebraElement, FDAlgebra, LinearFunctional, Tensor3};
use crate::error::{CqgError, Result};
use crate::gns::{self, GNSSpace};
use crate::hopf::HopfStructure;
use crate::linalg::{self, CMat, CVec};
use crate::modules::{self, K0Class, ProjectionModule};
use crate::report::ValidationReport;
use crate::wedderburn::BlockDecomposition;

/// A left coaction delta: B -> A (x) B given by its structure tensor:
/// `delta(e_i^B) = sum c[i][j][k] e_j^A (x) e_k^B`.
#[derive(Debug, Clone)]
pub struct Coaction {
    pub tensor: Tensor3,
}

impl Coaction {
    pub fn new(tensor: Tensor3, dim_a: usize, dim_b: usize) -> Result<Self> {
        if tensor.ni != dim_b || tensor.nj != dim_a || tensor.nk != dim_b {
            return Err(CqgError::ShapeMismatch(format!(
                "coaction tensor {}x{}x{} for dims A={}, B={}",
                tensor.ni, tensor.nj, tensor.nk, dim_a, dim_b
            )));
        }
        Ok(Coaction { tensor })
    }

    /// The coproduct viewed as the coaction of A on itself.
    pub fn self_coaction(h: &HopfStructure) -> Coaction {
        Coaction {
            tensor: h.coproduct.clone(),
        }
    }

    /// Matrix of delta as a linear map C^(dim B) -> C^(dim A * dim B),
    /// tensor leg index (j, k) -> j * dim_B + k.
    pub fn matrix(&self) -> CMat {
        let nb = self.tensor.ni;
        let mut m = CMat::zeros(self.tensor.nj * self.tensor.nk, nb);
        for (i, j, k, v) in self.tensor.iter_nonzero() {
            m[(j * self.tensor.nk + k, i)] = v;
        }
        m
    }

    pub fn of(&self, x: &CVec) -> CVec {
        self.matrix() * x
    }
}

/// Per-axiom residuals: *-homomorphism into A (x) B, coassociativity
/// against the coproduct of A, and the spanning property of delta(B)(A (x) 1).
pub fn validate_coaction(
    a: &FDAlgebra,
    ha: &HopfStructure,
    b: &FDAlgebra,
    delta: &Coaction,
    tol: f64,
) -> ValidationReport {
    let na = a.dim;
    let nb = b.dim;
    let mut report = ValidationReport::new();
    let ab = FDAlgebra::tensor_product(a, b);
    let dm = delta.matrix();

    // multiplicative: delta(xy) = delta(x) delta(y)
    let mut hom: f64 = 0.0;
    for i in 0..nb {
        let ei = AlgebraElement::basis(nb, i).coeffs;
        let di = dm.column(i).into_owned();
        for j in 0..nb {
            let ej = AlgebraElement::basis(nb, j).coeffs;
            let lhs = &dm * b.mul_coeffs(&ei, &ej);
            let rhs = ab.mul_coeffs(&di, &dm.column(j).into_owned());
            hom = hom.max(linalg::max_abs_vec(&(lhs - rhs)));
        }
    }
    report.push("coaction_multiplicative", hom, tol);

    // star: delta(x*) = delta(x)*
    let mut star_res: f64 = 0.0;
    for i in 0..nb {
        let ei = AlgebraElement::basis(nb, i).coeffs;
        let lhs = &dm * b.star_coeffs(&ei);
        let rhs = ab.star_coeffs(&(&dm * ei));
        star_res = star_res.max(linalg::max_abs_vec(&(lhs - rhs)));
    }
    report.push("coaction_star", star_res, tol);

    // unital: delta(1_B) = 1_A (x) 1_B
    let unital = linalg::max_abs_vec(&(&dm * b.unit.clone() - ab.unit.clone()));
    report.push("coaction_unital", unital, tol);

    // coassociativity: (Id (x) delta) delta = (Delta (x) Id) delta
    let mut coassoc: f64 = 0.0;
    for i in 0..nb {
        let mut lhs = CVec::zeros(na * na * nb);
        let mut rhs = CVec::zeros(na * na * nb);
        for (ii, j, k, c) in delta.tensor.iter_nonzero() {
            if ii != i {
                continue;
            }
            for (kk, p, q, c2) in delta.tensor.iter_nonzero() {
                if kk == k {
                    lhs[(j * na + p) * nb + q] += c * c2;
                }
            }
            for (jj, p, q, c2) in ha.coproduct.iter_nonzero() {
                if jj == j {
                    rhs[(p * na + q) * nb + k] += c * c2;
                }
            }
        }
        coassoc = coassoc.max(linalg::max_abs_vec(&(lhs - rhs)));
    }
    report.push("coaction_coassociativity", coassoc, tol);

    // spanning: delta(B)(A (x) 1) spans A (x) B
    let mut span = CMat::zeros(na * nb, na * nb);
    for i in 0..nb {
        let di = dm.column(i).into_owned();
        for j in 0..na {
            let ej = AlgebraElement::basis(na, j).coeffs;
            let mut other = CVec::zeros(na * nb);
            for p in 0..na {
                for q in 0..nb {
                    other[p * nb + q] = ej[p] * b.unit[q];
                }
            }
            span.set_column(i * na + j, &ab.mul_coeffs(&di, &other));
        }
    }
    report.push_flag("coaction_spanning", linalg::rank(&span, tol) == na * nb, tol);

    report
}

/// Solve (Id (x) eta) delta = eta(.) 1_A for a state eta on B; existence,
/// uniqueness, positivity and faithfulness are verified.
pub fn invariant_state(
    a: &FDAlgebra,
    b: &FDAlgebra,
    delta: &Coaction,
    tol: f64,
) -> Result<LinearFunctional> {
    let na = a.dim;
    let nb = b.dim;
    // rows (i, j): sum_k c[i][j][k] eta_k - eta_i unit_A[j] = 0
    let mut m = CMat::zeros(na * nb, nb);
    for (i, j, k, v) in delta.tensor.iter_nonzero() {
        m[(i * na + j, k)] += v;
    }
    for i in 0..nb {
        for j in 0..na {
            m[(i * na + j, i)] -= a.unit[j];
        }
    }
    let ns = linalg::nullspace(&m, tol);
    match ns.ncols() {
        0 => return Err(CqgError::NoInvariantState),
        1 => {}
        k => return Err(CqgError::NonUnique(k)),
    }
    let v: CVec = ns.column(0).into_owned();
    let norm = v.dot(&b.unit);
    if norm.norm() < tol {
        return Err(CqgError::NotPositive(
            "invariant functional has eta(1)=0".into(),
        ));
    }
    let eta = LinearFunctional::new(v / norm);
    let flags = b.check_functional(&eta, tol);
    if !flags.positive {
        return Err(CqgError::NotPositive(
            "invariant state fails positivity".into(),
        ));
    }
    if !flags.faithful {
        return Err(CqgError::NotFaithful(
            "invariant state has a null direction".into(),
        ));
    }
    Ok(eta)
}

/// The skew-linear map W: B^d -> A (x) B, d = dim A, in algebra coordinates,
/// with its envelope unitary between the GNS spaces of eta (on each slot of
/// B^d) and of f (x) eta on A (x) B.
///
/// Domain coordinates are slot-major: a tuple (b_1, ..., b_d) occupies
/// indices i * dim_B + k.
#[derive(Debug, Clone)]
pub struct CoactionW {
    pub matrix: CMat,
    pub envelope: CMat,
    /// Columns are the orthonormalized basis (g_i) of A under f.
    pub gs_basis: CMat,
    pub skew_residual: f64,
    pub isometry_residual: f64,
}

/// Build W: (b_i) |-> sum delta(b_i)(g_i (x) 1) with (g_i) the Gram-Schmidt
/// basis of A in the inner product of the Haar state f.
pub fn build_coaction_w(
    a: &FDAlgebra,
    b: &FDAlgebra,
    delta: &Coaction,
    eta: &LinearFunctional,
    f: &LinearFunctional,
    tol: f64,
) -> Result<CoactionW> {
    let na = a.dim;
    let nb = b.dim;
    let nn = na * nb;
    let ab = FDAlgebra::tensor_product(a, b);
    let h_a = gns::gns(a, f, tol)?;
    let h_b = gns::gns(b, eta, tol)?;
    // the columns of on_basis_inv are the Gram-Schmidt orthonormalization of
    // the basis of A in the f inner product (triangular change of basis)
    let gs = h_a.on_basis_inv.clone();

    let mut w = CMat::zeros(nn, nn);
    for i in 0..na {
        let gi: CVec = gs.column(i).into_owned();
        let mut gi1 = CVec::zeros(nn);
        for p in 0..na {
            for q in 0..nb {
                gi1[p * nb + q] = gi[p] * b.unit[q];
            }
        }
        for k in 0..nb {
            let col = ab.mul_coeffs(&delta.matrix().column(k).into_owned(), &gi1);
            w.set_column(i * nb + k, &col);
        }
    }

    // skew property W(b x) = delta(b) W(x), b acting diagonally on the slots
    let mut skew: f64 = 0.0;
    let id_na = CMat::identity(na, na);
    for j in 0..nb {
        let ej = AlgebraElement::basis(nb, j).coeffs;
        let diag = linalg::kron(&id_na, &b.left_mult_matrix(&ej));
        let lhs = &w * diag;
        let rhs = ab.left_mult_matrix(&delta.of(&ej)) * &w;
        skew = skew.max(linalg::max_abs(&(lhs - rhs)));
    }

    // isometry: (f (x) eta)<Wx, Wy> = eta(<x, y>), i.e. W* G_cod W = G_dom
    let mut cov = CVec::zeros(nn);
    for p in 0..na {
        for q in 0..nb {
            cov[p * nb + q] = f.covector[p] * eta.covector[q];
        }
    }
    let g_cod = ab.gram_matrix(&LinearFunctional::new(cov));
    let g_dom = linalg::kron(&id_na, &b.gram_matrix(eta));
    let isometry = linalg::max_abs(&(w.adjoint() * &g_cod * &w - g_dom));

    // surjectivity (hence envelope unitarity)
    let r = linalg::rank(&w, tol.max(1e-10));
    if r < nn {
        return Err(CqgError::NotSurjective {
            rank: r,
            expected: nn,
        });
    }

    let cod_on = linalg::kron(&h_a.on_basis, &h_b.on_basis);
    let dom_on_inv = linalg::kron(&id_na, &h_b.on_basis_inv);
    let envelope = &cod_on * &w * dom_on_inv;

    Ok(CoactionW {
        matrix: w,
        envelope,
        gs_basis: gs,
        skew_residual: skew,
        isometry_residual: isometry,
    })
}

/// The class over B of [p] acted on by [q]... of [q in M(B)] acted on by
/// [p in M(A)]: conjugate p (x) q by the envelope of W to a projection on
/// the slots B^d and read off the isotypic dimensions over B.
pub fn semiring_action(
    a: &FDAlgebra,
    b: &FDAlgebra,
    w: &CoactionW,
    h_a: &GNSSpace,
    h_b: &GNSSpace,
    dec_b: &BlockDecomposition,
    p: &ProjectionModule,
    q: &ProjectionModule,
) -> Result<K0Class> {
    let na = a.dim;
    let nb = b.dim;
    let nn = na * nb;
    if p.proj.dim != na || q.proj.dim != nb {
        return Err(CqgError::AlgebraMismatch);
    }
    let (dp, dq) = (p.d(), q.d());
    let dd = dp * dq;

    // the module (A (x) B)^(1 x D) (p (x) q): right multiplication on row
    // vectors, in envelope coordinates, amplification leg first
    let right_a = |x: &CVec| -> CMat { &h_a.on_basis * a.right_mult_matrix(x) * &h_a.on_basis_inv };
    let right_b = |x: &CVec| -> CMat { &h_b.on_basis * b.right_mult_matrix(x) * &h_b.on_basis_inv };
    let mut big = CMat::zeros(dd * nn, dd * nn);
    for r1 in 0..dp {
        for c1 in 0..dp {
            let bp = right_a(p.proj.entry(r1, c1));
            for r2 in 0..dq {
                for c2 in 0..dq {
                    let bq = right_b(q.proj.entry(r2, c2));
                    let kr = linalg::kron(&bp, &bq);
                    let (r, c) = (r1 * dq + r2, c1 * dq + c2);
                    big.view_mut((c * nn, r * nn), (nn, nn)).copy_from(&kr);
                }
            }
        }
    }
    let id_amp = CMat::identity(dd, dd);
    let w_inv = w
        .envelope
        .clone()
        .try_inverse()
        .ok_or_else(|| CqgError::Singular("coaction envelope not invertible".into()))?;
    let span = linalg::column_space(&(linalg::kron(&id_amp, &w_inv) * big), 1e-8);
    let proj = &span * span.adjoint();

    // the image is a B-module under the diagonal action on the slots
    let id_na = CMat::identity(na, na);
    for j in 0..nb {
        let act = linalg::kron(&id_amp, &linalg::kron(&id_na, &h_b.left_rep[j]));
        let lhs = &act * &proj;
        let res = linalg::max_abs(&(&proj * &lhs - &lhs));
        if res > 1e-7 {
            return Err(CqgError::NotLinear(res));
        }
    }

    let k = dec_b.blocks.len();
    let mut ranks = vec![0i64; k];
    for j in 0..k {
        let z = h_b.rep_of(&dec_b.central_projections[j].coeffs);
        let zi = linalg::kron(&id_amp, &linalg::kron(&id_na, &z));
        let tr = (&proj * zi).trace().re;
        let m = tr / dec_b.blocks[j] as f64;
        ranks[j] = linalg::round_to_integer(m, 1e-6).ok_or(CqgError::NonIntegerRank {
            dim: m,
            block: j,
        })?;
    }
    Ok(K0Class(ranks))
}

/// Outcome of the semiring-action law checks on generator classes.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ActionLaws {
    pub distributive_in_a: bool,
    pub distributive_in_b: bool,
    pub mixed_associative: bool,
}

impl ActionLaws {
    pub fn all(&self) -> bool {
        self.distributive_in_a && self.distributive_in_b && self.mixed_associative
    }
}

/// Verify distributivity in both arguments and the mixed associativity
/// p1 box (p2 act q) = (p1 box p2) act q on all generator classes.
#[allow(clippy::too_many_arguments)]
pub fn action_laws_check(
    a: &FDAlgebra,
    ha: &HopfStructure,
    h_a: &GNSSpace,
    dec_a: &BlockDecomposition,
    b: &FDAlgebra,
    w: &CoactionW,
    h_b: &GNSSpace,
    dec_b: &BlockDecomposition,
) -> Result<ActionLaws> {
    let gens_a: Vec<ProjectionModule> = dec_a
        .minimal_projections
        .iter()
        .map(|p| ProjectionModule::from_element(a, &p.coeffs, 1e-8))
        .collect::<Result<_>>()?;
    let gens_b: Vec<ProjectionModule> = dec_b
        .minimal_projections
        .iter()
        .map(|p| ProjectionModule::from_element(b, &p.coeffs, 1e-8))
        .collect::<Result<_>>()?;
    let act = |p: &ProjectionModule, q: &ProjectionModule| -> Result<K0Class> {
        semiring_action(a, b, w, h_a, h_b, dec_b, p, q)
    };

    let mut distributive_in_a = true;
    let mut distributive_in_b = true;
    for (i, gi) in gens_a.iter().enumerate() {
        for (j, gj) in gens_a.iter().enumerate() {
            if j < i {
                continue;
            }
            for q in &gens_b {
                let s = modules::direct_sum(a, gi, gj)?;
                let lhs = act(&s, q)?;
                let rhs = act(gi, q)?.add(&act(gj, q)?);
                if lhs != rhs {
                    distributive_in_a = false;
                }
            }
        }
    }
    for p in &gens_a {
        for (i, qi) in gens_b.iter().enumerate() {
            for (j, qj) in gens_b.iter().enumerate() {
                if j < i {
                    continue;
                }
                let s = modules::direct_sum(b, qi, qj)?;
                let lhs = act(p, &s)?;
                let rhs = act(p, qi)?.add(&act(p, qj)?);
                if lhs != rhs {
                    distributive_in_b = false;
                }
            }
        }
    }

    let mut mixed_associative = true;
    for gi in &gens_a {
        for gj in &gens_a {
            for ql in &gens_b {
                let inner = modules::box_class(a, ha, h_a, dec_a, gi, gj)?;
                let inner_rep = modules::representative_projection(a, dec_a, &inner)?;
                let lhs = act(&inner_rep, ql)?;
                let step = act(gj, ql)?;
                let step_rep = modules::representative_projection(b, dec_b, &step)?;
                let rhs = act(gi, &step_rep)?;
                if lhs != rhs {
                    mixed_associative = false;
                }
            }
        }
    }

    Ok(ActionLaws {
        distributive_in_a,
        distributive_in_b,
        mixed_associative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{function_algebra, group_algebra, FiniteGroup};
    use crate::hopf::{dual_hopf, haar_state, QuantumGroup};
    use crate::wedderburn;
    use num_complex::Complex64;

    struct Ctx {
        qg: QuantumGroup,
        tau: LinearFunctional,
        h: GNSSpace,
        dec: BlockDecomposition,
        delta: Coaction,
        w: CoactionW,
    }

    fn self_ctx(qg: QuantumGroup) -> Ctx {
        let tau = haar_state(&qg.algebra, &qg.hopf, 1e-9).unwrap();
        let h = gns::gns(&qg.algebra, &tau, 1e-9).unwrap();
        let dec = wedderburn::decompose(&qg.algebra, 0, 1e-9).unwrap();
        let delta = Coaction::self_coaction(&qg.hopf);
        let eta = invariant_state(&qg.algebra, &qg.algebra, &delta, 1e-9).unwrap();
        let w = build_coaction_w(&qg.algebra, &qg.algebra, &delta, &eta, &tau, 1e-9).unwrap();
        Ctx {
            qg,
            tau,
            h,
            dec,
            delta,
            w,
        }
    }

    #[test]
    fn self_coaction_validates() {
        for qg in [
            function_algebra(&FiniteGroup::cyclic(2)),
            group_algebra(&FiniteGroup::symmetric3()),
        ] {
            let delta = Coaction::self_coaction(&qg.hopf);
            let rep = validate_coaction(&qg.algebra, &qg.hopf, &qg.algebra, &delta, 1e-9);
            assert!(rep.passed(), "{:?}", rep);
        }
    }

    #[test]
    fn trivial_coaction_on_scalars_validates() {
        let qg = function_algebra(&FiniteGroup::symmetric3());
        let b = function_algebra(&FiniteGroup::cyclic(1)).algebra;
        // delta(1) = 1_A (x) 1: tensor c[0][j][0] = unit_A[j]
        let mut t = Tensor3::zeros(1, 6, 1);
        for j in 0..6 {
            t.set(0, j, 0, qg.algebra.unit[j]);
        }
        let delta = Coaction::new(t, 6, 1).unwrap();
        let rep = validate_coaction(&qg.algebra, &qg.hopf, &b, &delta, 1e-9);
        assert!(rep.passed(), "{:?}", rep);
        let eta = invariant_state(&qg.algebra, &b, &delta, 1e-9).unwrap();
        assert!((eta.covector[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn broken_tensor_fails_validation() {
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let delta = Coaction::new(Tensor3::zeros(2, 2, 2), 2, 2).unwrap();
        let rep = validate_coaction(&qg.algebra, &qg.hopf, &qg.algebra, &delta, 1e-9);
        assert!(!rep.passed());
        assert!(rep.residual_of("coaction_unital").unwrap() >= 1.0);
    }

    #[test]
    fn invariant_state_of_self_coaction_is_haar() {
        for qg in [
            function_algebra(&FiniteGroup::symmetric3()),
            group_algebra(&FiniteGroup::dihedral4()),
        ] {
            let tau = haar_state(&qg.algebra, &qg.hopf, 1e-9).unwrap();
            let delta = Coaction::self_coaction(&qg.hopf);
            let eta = invariant_state(&qg.algebra, &qg.algebra, &delta, 1e-9).unwrap();
            assert!(linalg::max_abs_vec(&(eta.covector - tau.covector)) < 1e-10);
        }
    }

    #[test]
    fn coaction_w_trivial_is_identity() {
        let qg = function_algebra(&FiniteGroup::cyclic(1));
        let c = self_ctx(qg);
        assert!((c.w.matrix[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(linalg::unitarity_residual(&c.w.envelope) < 1e-12);
    }

    #[test]
    fn coaction_w_envelope_unitary_and_skew() {
        for qg in [
            function_algebra(&FiniteGroup::cyclic(2)),
            group_algebra(&FiniteGroup::symmetric3()),
            function_algebra(&FiniteGroup::dihedral4()),
        ] {
            let c = self_ctx(qg);
            assert!(c.w.skew_residual < 1e-10, "skew {}", c.w.skew_residual);
            assert!(
                c.w.isometry_residual < 1e-10,
                "isometry {}",
                c.w.isometry_residual
            );
            assert!(linalg::unitarity_residual(&c.w.envelope) < 1e-9);
        }
    }

    #[test]
    fn skew_property_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let qg = group_algebra(&FiniteGroup::symmetric3());
        let c = self_ctx(qg);
        let a = &c.qg.algebra;
        let n = a.dim;
        let dmat = c.delta.matrix();
        let ab = FDAlgebra::tensor_product(a, a);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut bvec = CVec::zeros(n);
            let mut x = CVec::zeros(n * n);
            for i in 0..n {
                bvec[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            for i in 0..n * n {
                x[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            let diag = linalg::kron(&CMat::identity(n, n), &a.left_mult_matrix(&bvec));
            let lhs = &c.w.matrix * (diag * &x);
            let rhs = ab.left_mult_matrix(&(&dmat * bvec)) * (&c.w.matrix * &x);
            assert!(linalg::max_abs_vec(&(lhs - rhs)) < 1e-9);
        }
    }

    #[test]
    fn action_on_scalars_counts_dimension() {
        // B = C with the trivial coaction: [1_A] . [1] has rank dim A
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let b = function_algebra(&FiniteGroup::cyclic(1));
        let mut t = Tensor3::zeros(1, 2, 1);
        for j in 0..2 {
            t.set(0, j, 0, qg.algebra.unit[j]);
        }
        let delta = Coaction::new(t, 2, 1).unwrap();
        let tau = haar_state(&qg.algebra, &qg.hopf, 1e-9).unwrap();
        let eta = invariant_state(&qg.algebra, &b.algebra, &delta, 1e-9).unwrap();
        let w = build_coaction_w(&qg.algebra, &b.algebra, &delta, &eta, &tau, 1e-9).unwrap();
        let h_a = gns::gns(&qg.algebra, &tau, 1e-9).unwrap();
        let h_b = gns::gns(&b.algebra, &eta, 1e-9).unwrap();
        let dec_b = wedderburn::decompose(&b.algebra, 0, 1e-9).unwrap();
        let p = ProjectionModule::from_element(&qg.algebra, &qg.algebra.unit, 1e-9).unwrap();
        let q = ProjectionModule::from_element(&b.algebra, &b.algebra.unit, 1e-9).unwrap();
        let cls =
            semiring_action(&qg.algebra, &b.algebra, &w, &h_a, &h_b, &dec_b, &p, &q).unwrap();
        assert_eq!(cls, K0Class(vec![2]));
        // the zero module acts to zero
        let zero = ProjectionModule::from_element(&b.algebra, &CVec::zeros(1), 1e-9).unwrap();
        let cls0 =
            semiring_action(&qg.algebra, &b.algebra, &w, &h_a, &h_b, &dec_b, &p, &zero).unwrap();
        assert!(cls0.is_zero());
    }

    #[test]
    fn self_coaction_action_matches_box_classes() {
        for qg in [
            function_algebra(&FiniteGroup::cyclic(2)),
            group_algebra(&FiniteGroup::symmetric3()),
        ] {
            let c = self_ctx(qg);
            let a = &c.qg.algebra;
            let gens: Vec<ProjectionModule> = c
                .dec
                .minimal_projections
                .iter()
                .map(|p| ProjectionModule::from_element(a, &p.coeffs, 1e-8).unwrap())
                .collect();
            for gi in &gens {
                for gj in &gens {
                    let via_box =
                        modules::box_class(a, &c.qg.hopf, &c.h, &c.dec, gi, gj).unwrap();
                    let via_act =
                        semiring_action(a, a, &c.w, &c.h, &c.h, &c.dec, gi, gj).unwrap();
                    assert_eq!(via_box, via_act);
                }
            }
        }
    }

    #[test]
    fn action_laws_on_self_coactions() {
        for qg in [
            function_algebra(&FiniteGroup::cyclic(2)),
            group_algebra(&FiniteGroup::symmetric3()),
        ] {
            let c = self_ctx(qg);
            let a = &c.qg.algebra;
            let laws = action_laws_check(
                a, &c.qg.hopf, &c.h, &c.dec, a, &c.w, &c.h, &c.dec,
            )
            .unwrap();
            assert!(laws.all(), "{:?}", laws);
        }
    }

    #[test]
    fn dual_coaction_from_multiplicative_unitary() {
        // Phi(x) = W*(1 (x) x)W defines a left coaction of C(Z/2) on its
        // dual; here W is taken in its pairing form sum pi(e_h) (x) pi(chi_h)
        // (the Fourier transform on the second leg of the translation form)
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let tau = haar_state(&qg.algebra, &qg.hopf, 1e-9).unwrap();
        let h = gns::gns(&qg.algebra, &tau, 1e-9).unwrap();
        let dual = dual_hopf(&qg.algebra, &qg.hopf).unwrap();
        let n = qg.algebra.dim;

        let mut wmu = CMat::zeros(n * n, n * n);
        for g in 0..n {
            let mut chi = CVec::zeros(n);
            for x in 0..n {
                chi[x] = linalg::cone() * if (g * x) % 2 == 1 { -1.0 } else { 1.0 };
            }
            let eg = AlgebraElement::basis(n, g).coeffs;
            wmu += linalg::kron(&h.rep_of(&eg), &h.rep_of(&chi));
        }
        assert!(linalg::unitarity_residual(&wmu) < 1e-12);

        // the dual acts on L^2(A) by translation: lambda_g shifts the point
        // masses, which in these coordinates is the permutation matrix
        let lambda = |g: usize| -> CMat {
            let mut m = CMat::zeros(n, n);
            for i in 0..n {
                m[((i + g) % n, i)] = linalg::cone();
            }
            &h.on_basis * m * &h.on_basis_inv
        };
        // solve Phi(lambda_g) = sum c[g][j][k] pi(e_j) (x) lambda_k
        let mut t = Tensor3::zeros(n, n, n);
        for g in 0..n {
            let phi = wmu.adjoint()
                * linalg::kron(&CMat::identity(n, n), &lambda(g))
                * &wmu;
            let mut basis = CMat::zeros(n * n * n * n, n * n);
            for j in 0..n {
                for k in 0..n {
                    let m = linalg::kron(&h.rep_of(&AlgebraElement::basis(n, j).coeffs), &lambda(k));
                    for r in 0..n * n {
                        for s in 0..n * n {
                            basis[(r * n * n + s, j * n + k)] = m[(r, s)];
                        }
                    }
                }
            }
            let mut target = CVec::zeros(n * n * n * n);
            for r in 0..n * n {
                for s in 0..n * n {
                    target[r * n * n + s] = phi[(r, s)];
                }
            }
            let x = linalg::lstsq(&basis, &target, 1e-10);
            assert!(linalg::max_abs_vec(&(&basis * &x - target)) < 1e-9);
            for j in 0..n {
                for k in 0..n {
                    t.set(g, j, k, x[j * n + k]);
                }
            }
        }
        let delta = Coaction::new(t, n, n).unwrap();
        let rep = validate_coaction(&qg.algebra, &qg.hopf, &dual.algebra, &delta, 1e-8);
        assert!(rep.passed(), "{:?}", rep);
        // the invariant state is the Haar state of the dual
        let eta = invariant_state(&qg.algebra, &dual.algebra, &delta, 1e-8).unwrap();
        let dual_haar = haar_state(&dual.algebra, &dual.hopf, 1e-9).unwrap();
        assert!(linalg::max_abs_vec(&(eta.covector - dual_haar.covector)) < 1e-9);
    }

    #[test]
    fn action_invariant_under_unitary_conjugation() {
        use rand::SeedableRng;
        let qg = function_algebra(&FiniteGroup::symmetric3());
        let c = self_ctx(qg);
        let a = &c.qg.algebra;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let p = modules::random_matrix_projection(a, &c.dec, 2, &mut rng).unwrap();
            let q = modules::random_matrix_projection(a, &c.dec, 1, &mut rng).unwrap();
            let u = modules::random_matrix_unitary(a, &c.dec, 2, &mut rng).unwrap();
            let conj = u.mul(a, &p.proj).mul(a, &u.star(a));
            let p2 = ProjectionModule::new(a, conj, 1e-7).unwrap();
            let c1 = semiring_action(a, a, &c.w, &c.h, &c.h, &c.dec, &p, &q).unwrap();
            let c2 = semiring_action(a, a, &c.w, &c.h, &c.h, &c.dec, &p2, &q).unwrap();
            assert_eq!(c1, c2);
        }
    }
}
