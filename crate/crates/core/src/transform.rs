//! Multiplicative unitaries, the skew-linear module map, Fourier transform
//! and convolution over the Haar state.

use num_complex::Complex64;

use crate::algebra::{FDAlgebra, LinearFunctional};
use crate::error::{CqgError, Result};
use crate::gns::GNSSpace;
use crate::hopf::HopfStructure;
use crate::linalg::{self, CMat, CVec};

/// Which leg-ordering convention the unitary follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    V,
    W,
}

/// A multiplicative unitary on H (x) H in the orthonormal GNS basis.
#[derive(Debug, Clone)]
pub struct MultiplicativeUnitary {
    pub matrix: CMat,
    pub convention: Convention,
}

impl MultiplicativeUnitary {
    pub fn unitarity_residual(&self) -> f64 {
        linalg::unitarity_residual(&self.matrix)
    }

    /// Residual of the pentagon identity U12 U13 U23 = U23 U12 on H^(x)3.
    pub fn pentagon_residual(&self) -> f64 {
        let nn = self.matrix.nrows();
        let n = (nn as f64).sqrt().round() as usize;
        assert_eq!(n * n, nn);
        let id = CMat::identity(n, n);
        let u12 = linalg::kron(&self.matrix, &id);
        let u23 = linalg::kron(&id, &self.matrix);
        // swap of the last two legs turns leg pair (1,2) into (1,3)
        let mut p23 = CMat::zeros(n * n * n, n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    p23[(i * n * n + k * n + j, i * n * n + j * n + k)] = linalg::cone();
                }
            }
        }
        let u13 = &p23 * &u12 * &p23;
        let lhs = &u12 * u13 * &u23;
        let rhs = &u23 * &u12;
        linalg::max_abs(&(lhs - rhs))
    }
}

const CONDITION_BOUND: f64 = 1e12;

/// (pi (x) pi)(Delta e_i) as a matrix on H (x) H.
fn coproduct_rep(hopf: &HopfStructure, h: &GNSSpace, i: usize) -> CMat {
    let n = h.left_rep.len();
    let mut out = CMat::zeros(n * n, n * n);
    for (a, b, c, v) in hopf.coproduct.iter_nonzero() {
        if a == i {
            out += linalg::kron(&h.left_rep[b], &h.left_rep[c]) * v;
        }
    }
    out
}

fn gns_tensor_inverse(h: &GNSSpace) -> Result<(CMat, CMat)> {
    let cond = linalg::condition_number(&h.on_basis);
    if !cond.is_finite() || cond * cond > CONDITION_BOUND {
        return Err(CqgError::IllConditioned(cond * cond));
    }
    let rr = linalg::kron(&h.on_basis, &h.on_basis);
    let rr_inv = linalg::kron(&h.on_basis_inv, &h.on_basis_inv);
    Ok((rr, rr_inv))
}

/// The unitary with V (ae (x) be) = Delta(a) (e (x) be).
pub fn build_v(a: &FDAlgebra, hopf: &HopfStructure, h: &GNSSpace) -> Result<MultiplicativeUnitary> {
    let n = a.dim;
    let (_, rr_inv) = gns_tensor_inverse(h)?;
    let mut m = CMat::zeros(n * n, n * n);
    for i in 0..n {
        let di = coproduct_rep(hopf, h, i);
        for j in 0..n {
            let second = h.on_basis.column(j).into_owned();
            let mut arg = CVec::zeros(n * n);
            for p in 0..n {
                for q in 0..n {
                    arg[p * n + q] = h.cyclic[p] * second[q];
                }
            }
            m.set_column(i * n + j, &(&di * arg));
        }
    }
    Ok(MultiplicativeUnitary {
        matrix: m * rr_inv,
        convention: Convention::V,
    })
}

/// The unitary with W* (ae (x) be) = Delta(b) (ae (x) e).
pub fn build_w(a: &FDAlgebra, hopf: &HopfStructure, h: &GNSSpace) -> Result<MultiplicativeUnitary> {
    let n = a.dim;
    let (_, rr_inv) = gns_tensor_inverse(h)?;
    let mut m = CMat::zeros(n * n, n * n);
    for j in 0..n {
        let dj = coproduct_rep(hopf, h, j);
        for i in 0..n {
            let first = h.on_basis.column(i).into_owned();
            let mut arg = CVec::zeros(n * n);
            for p in 0..n {
                for q in 0..n {
                    arg[p * n + q] = first[p] * h.cyclic[q];
                }
            }
            m.set_column(i * n + j, &(&dj * arg));
        }
    }
    let w_star = m * rr_inv;
    Ok(MultiplicativeUnitary {
        matrix: w_star.adjoint(),
        convention: Convention::W,
    })
}

/// Residual of the reconstruction Delta(a) = V (a (x) 1) V* over the basis.
pub fn coproduct_reconstruction_residual(
    v: &MultiplicativeUnitary,
    hopf: &HopfStructure,
    h: &GNSSpace,
) -> f64 {
    let n = h.left_rep.len();
    let id = CMat::identity(n, n);
    let mut res: f64 = 0.0;
    for i in 0..n {
        let lhs = coproduct_rep(hopf, h, i);
        let rhs = &v.matrix * linalg::kron(&h.left_rep[i], &id) * v.matrix.adjoint();
        res = res.max(linalg::max_abs(&(lhs - rhs)));
    }
    res
}

/// The skew-linear map T with T(Delta(a) x) = a T(x) for x in A (x) A.
///
/// Coordinates: the domain carries algebra coordinates on both legs; the
/// codomain keeps the first leg in algebra coordinates and the second in
/// the orthonormal GNS basis, so the left module action of A stays visible.
#[derive(Debug, Clone)]
pub struct SkewLinearMap {
    pub matrix: CMat,
    /// The same map between the enveloping GNS spaces; unitary.
    pub envelope: CMat,
}

/// Build the skew-linear map x -> V* x (1 (x) e).
pub fn skew_map(a: &FDAlgebra, hopf: &HopfStructure, h: &GNSSpace) -> Result<SkewLinearMap> {
    let n = a.dim;
    let v = build_v(a, hopf, h)?;
    let (rr, _) = gns_tensor_inverse(h)?;
    let envelope = v.matrix.adjoint();
    let id = CMat::identity(n, n);
    let matrix = linalg::kron(&h.on_basis_inv, &id) * &envelope * rr;
    Ok(SkewLinearMap { matrix, envelope })
}

/// Max residual of T(Delta(a) x) = a T(x) over the basis of A and A (x) A.
pub fn skew_linearity_residual(
    a: &FDAlgebra,
    hopf: &HopfStructure,
    t: &SkewLinearMap,
) -> f64 {
    let n = a.dim;
    let id_n = CMat::identity(n, n);
    let mut res: f64 = 0.0;
    for i in 0..n {
        // multiplication by Delta(e_i) on A (x) A in algebra coordinates
        let mut m = CMat::zeros(n * n, n * n);
        for (x, p, q, v) in hopf.coproduct.iter_nonzero() {
            if x == i {
                let lp = a.left_mult_matrix(&crate::algebra::AlgebraElement::basis(n, p).coeffs);
                let lq = a.left_mult_matrix(&crate::algebra::AlgebraElement::basis(n, q).coeffs);
                m += linalg::kron(&lp, &lq) * v;
            }
        }
        let li = a.left_mult_matrix(&crate::algebra::AlgebraElement::basis(n, i).coeffs);
        let lhs = &t.matrix * m;
        let rhs = linalg::kron(&li, &id_n) * &t.matrix;
        res = res.max(linalg::max_abs(&(lhs - rhs)));
    }
    res
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// The Fourier pairing matrix and its inverse: forward[i][j] = tau(e_i e_j).
#[derive(Debug, Clone)]
pub struct FourierContext {
    pub forward: CMat,
    pub inverse: CMat,
}

pub fn fourier_context(a: &FDAlgebra, tau: &LinearFunctional) -> Result<FourierContext> {
    let n = a.dim;
    let mut fwd = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += a.mult.get(i, j, k) * tau.covector[k];
            }
            fwd[(i, j)] = acc;
        }
    }
    let inverse = fwd
        .clone()
        .try_inverse()
        .ok_or_else(|| CqgError::Singular("Fourier pairing matrix is singular".into()))?;
    Ok(FourierContext {
        forward: fwd,
        inverse,
    })
}

/// Fourier transform: forward lands in dual coordinates, inverse comes back.
pub fn fourier(ctx: &FourierContext, x: &CVec, direction: Direction) -> CVec {
    match direction {
        Direction::Forward => &ctx.forward * x,
        Direction::Inverse => &ctx.inverse * x,
    }
}

/// Convolution a * b = F^-1(F(a) F(b)), multiplying in the dual algebra.
///
/// With tau normalized by tau(1) = 1 this gives, on C(G),
/// delta_g * delta_h = (1/|G|) delta_{gh}.
pub fn convolve(
    a: &FDAlgebra,
    hopf: &HopfStructure,
    tau: &LinearFunctional,
    x: &CVec,
    y: &CVec,
) -> Result<CVec> {
    let ctx = fourier_context(a, tau)?;
    let fx = fourier(&ctx, x, Direction::Forward);
    let fy = fourier(&ctx, y, Direction::Forward);
    // dual multiplication: (fg)_k = sum_{i,j} Delta_k^{ij} f_i g_j
    let n = a.dim;
    let mut prod = CVec::zeros(n);
    for (k, i, j, v) in hopf.coproduct.iter_nonzero() {
        prod[k] += v * fx[i] * fy[j];
    }
    Ok(fourier(&ctx, &prod, Direction::Inverse))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement;
    use crate::generators::{function_algebra, group_algebra, FiniteGroup};
    use crate::gns;
    use crate::hopf::haar_state;
    use crate::wedderburn;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(qg: &crate::hopf::QuantumGroup) -> (LinearFunctional, GNSSpace) {
        let tau = haar_state(&qg.algebra, &qg.hopf, 1e-9).unwrap();
        let h = gns::gns(&qg.algebra, &tau, 1e-9).unwrap();
        (tau, h)
    }

    #[test]
    fn trivial_algebra_v_is_one() {
        let qg = function_algebra(&FiniteGroup::cyclic(1));
        let (_, h) = setup(&qg);
        let v = build_v(&qg.algebra, &qg.hopf, &h).unwrap();
        assert_eq!(v.matrix.nrows(), 1);
        assert!((v.matrix[(0, 0)] - linalg::cone()).norm() < 1e-12);
        let w = build_w(&qg.algebra, &qg.hopf, &h).unwrap();
        assert!((w.matrix[(0, 0)] - linalg::cone()).norm() < 1e-12);
    }

    #[test]
    fn function_z2_v_is_permutation_type() {
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let (_, h) = setup(&qg);
        let v = build_v(&qg.algebra, &qg.hopf, &h).unwrap();
        assert!(v.unitarity_residual() < 1e-10);
        assert!(v.pentagon_residual() < 1e-10);
        // each column has exactly one entry of modulus 1
        for j in 0..4 {
            let col = v.matrix.column(j);
            let big: Vec<f64> = col.iter().map(|z| z.norm()).filter(|x| *x > 1e-10).collect();
            assert_eq!(big.len(), 1);
            assert!((big[0] - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn group_z2_v_unitary_and_pentagon() {
        let qg = group_algebra(&FiniteGroup::cyclic(2));
        let (_, h) = setup(&qg);
        let v = build_v(&qg.algebra, &qg.hopf, &h).unwrap();
        assert!(v.unitarity_residual() < 1e-10);
        assert!(v.pentagon_residual() < 1e-10);
    }

    #[test]
    fn w_satisfies_pentagon() {
        for qg in [
            function_algebra(&FiniteGroup::cyclic(2)),
            group_algebra(&FiniteGroup::symmetric3()),
        ] {
            let (_, h) = setup(&qg);
            let w = build_w(&qg.algebra, &qg.hopf, &h).unwrap();
            assert!(w.unitarity_residual() < 1e-10);
            assert!(w.pentagon_residual() < 1e-10);
        }
    }

    #[test]
    fn coproduct_reconstructed_from_v() {
        for qg in [
            function_algebra(&FiniteGroup::cyclic(3)),
            group_algebra(&FiniteGroup::symmetric3()),
        ] {
            let (_, h) = setup(&qg);
            let v = build_v(&qg.algebra, &qg.hopf, &h).unwrap();
            assert!(coproduct_reconstruction_residual(&v, &qg.hopf, &h) < 1e-9);
        }
    }

    #[test]
    fn skew_map_on_trivial_algebra() {
        let qg = function_algebra(&FiniteGroup::cyclic(1));
        let (_, h) = setup(&qg);
        let t = skew_map(&qg.algebra, &qg.hopf, &h).unwrap();
        // 1 (x) 1 maps to 1 (x) e
        let mut x = CVec::zeros(1);
        x[0] = linalg::cone();
        let out = &t.matrix * x;
        assert!((out[0] - h.cyclic[0]).norm() < 1e-12);
    }

    #[test]
    fn skew_linearity_on_s3_group_algebra() {
        let qg = group_algebra(&FiniteGroup::symmetric3());
        let (_, h) = setup(&qg);
        let t = skew_map(&qg.algebra, &qg.hopf, &h).unwrap();
        assert!(skew_linearity_residual(&qg.algebra, &qg.hopf, &t) < 1e-9);
        // spot-check on 50 random (a, x) pairs as well
        let n = qg.algebra.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let mut av = CVec::zeros(n);
            let mut xv = CVec::zeros(n * n);
            for i in 0..n {
                av[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            for i in 0..n * n {
                xv[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            let mut m = CMat::zeros(n * n, n * n);
            for (c, p, q, v) in qg.hopf.coproduct.iter_nonzero() {
                let lp = qg
                    .algebra
                    .left_mult_matrix(&AlgebraElement::basis(n, p).coeffs);
                let lq = qg
                    .algebra
                    .left_mult_matrix(&AlgebraElement::basis(n, q).coeffs);
                m += linalg::kron(&lp, &lq) * (v * av[c]);
            }
            let la = qg.algebra.left_mult_matrix(&av);
            let lhs = &t.matrix * (&m * &xv);
            let rhs = linalg::kron(&la, &CMat::identity(n, n)) * (&t.matrix * &xv);
            assert!(linalg::max_abs_vec(&(lhs - rhs)) < 1e-9);
        }
    }

    #[test]
    fn skew_envelope_is_unitary() {
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let (_, h) = setup(&qg);
        let t = skew_map(&qg.algebra, &qg.hopf, &h).unwrap();
        assert!(linalg::unitarity_residual(&t.envelope) < 1e-10);
    }

    #[test]
    fn fourier_of_unit_is_tau() {
        let qg = group_algebra(&FiniteGroup::symmetric3());
        let (tau, _) = setup(&qg);
        let ctx = fourier_context(&qg.algebra, &tau).unwrap();
        let f1 = fourier(&ctx, &qg.algebra.unit, Direction::Forward);
        for i in 0..qg.algebra.dim {
            assert!((f1[i] - tau.covector[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn fourier_inverse_roundtrip() {
        let qg = function_algebra(&FiniteGroup::symmetric3());
        let (tau, _) = setup(&qg);
        let ctx = fourier_context(&qg.algebra, &tau).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut x = CVec::zeros(6);
        for i in 0..6 {
            x[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let back = fourier(&ctx, &fourier(&ctx, &x, Direction::Forward), Direction::Inverse);
        assert!(linalg::max_abs_vec(&(back - x)) < 1e-10);
    }

    #[test]
    fn fourier_of_sign_function_on_z2() {
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let (tau, _) = setup(&qg);
        let ctx = fourier_context(&qg.algebra, &tau).unwrap();
        let mut x = CVec::zeros(2);
        x[0] = linalg::cone();
        x[1] = -linalg::cone();
        let f = fourier(&ctx, &x, Direction::Forward);
        // proportional to u_0 - u_1, the sign character of the dual
        assert!((f[0] - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert!((f[1] - Complex64::new(-0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn convolution_identity_element() {
        let qg = function_algebra(&FiniteGroup::symmetric3());
        let (tau, _) = setup(&qg);
        let ctx = fourier_context(&qg.algebra, &tau).unwrap();
        // F^-1 of the dual unit (the counit covector) is the identity for *
        let eps: CVec = qg.hopf.counit.clone();
        let e = fourier(&ctx, &eps, Direction::Inverse);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut x = CVec::zeros(6);
        for i in 0..6 {
            x[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let out = convolve(&qg.algebra, &qg.hopf, &tau, &x, &e).unwrap();
        assert!(linalg::max_abs_vec(&(out - x)) < 1e-10);
    }

    #[test]
    fn convolution_of_point_masses() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::symmetric3()] {
            let qg = function_algebra(&g);
            let (tau, _) = setup(&qg);
            let n = g.order;
            let scale = 1.0 / n as f64;
            for a in 0..n {
                for b in 0..n {
                    let da = AlgebraElement::basis(n, a).coeffs;
                    let db = AlgebraElement::basis(n, b).coeffs;
                    let out = convolve(&qg.algebra, &qg.hopf, &tau, &da, &db).unwrap();
                    let mut expect = CVec::zeros(n);
                    expect[g.mul(a, b)] = Complex64::new(scale, 0.0);
                    assert!(linalg::max_abs_vec(&(out - expect)) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn convolution_is_associative() {
        let qg = group_algebra(&FiniteGroup::symmetric3());
        let (tau, _) = setup(&qg);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = qg.algebra.dim;
        let mut rand_vec = || {
            let mut x = CVec::zeros(n);
            for i in 0..n {
                x[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            x
        };
        for _ in 0..10 {
            let (x, y, z) = (rand_vec(), rand_vec(), rand_vec());
            let xy_z = convolve(
                &qg.algebra,
                &qg.hopf,
                &tau,
                &convolve(&qg.algebra, &qg.hopf, &tau, &x, &y).unwrap(),
                &z,
            )
            .unwrap();
            let x_yz = convolve(
                &qg.algebra,
                &qg.hopf,
                &tau,
                &x,
                &convolve(&qg.algebra, &qg.hopf, &tau, &y, &z).unwrap(),
            )
            .unwrap();
            assert!(linalg::max_abs_vec(&(xy_z - x_yz)) < 1e-9);
        }
    }

    #[test]
    fn convolution_preserves_positivity() {
        let qg = group_algebra(&FiniteGroup::symmetric3());
        let (tau, _) = setup(&qg);
        let dec = wedderburn::decompose(&qg.algebra, 0, 1e-9).unwrap();
        let n = qg.algebra.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let mut y = CVec::zeros(n);
            let mut z = CVec::zeros(n);
            for i in 0..n {
                y[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                z[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            let a = qg.algebra.mul_coeffs(&qg.algebra.star_coeffs(&y), &y);
            let b = qg.algebra.mul_coeffs(&qg.algebra.star_coeffs(&z), &z);
            let c = convolve(&qg.algebra, &qg.hopf, &tau, &a, &b).unwrap();
            assert!(dec.is_positive(&c, 1e-8));
        }
    }

    #[test]
    fn pentagon_on_bundled_small_examples() {
        for (name, qg) in crate::generators::bundled_examples() {
            if qg.algebra.dim > 6 {
                continue;
            }
            let (_, h) = setup(&qg);
            let v = build_v(&qg.algebra, &qg.hopf, &h).unwrap();
            assert!(v.pentagon_residual() < 1e-9, "{}", name);
            assert!(v.unitarity_residual() < 1e-9, "{}", name);
        }
    }
}
