//! GNS construction for a faithful state: Gram factorization, orthonormal
//! basis change, and the left regular representation.

use crate::algebra::{AlgebraElement, FDAlgebra, LinearFunctional};
use crate::error::{CqgError, Result};
use crate::linalg::{self, CMat, CVec};

/// The GNS Hilbert space L^2(A, phi) for a faithful state phi.
///
/// Since the state is faithful no quotient is needed: the algebra itself is
/// the Hilbert space. `on_basis` maps algebra coefficients to coordinates in
/// an orthonormal basis; `left_rep[i]` is left multiplication by `e_i` in
/// that basis.
#[derive(Debug, Clone)]
pub struct GNSSpace {
    pub gram: CMat,
    /// Upper-triangular factor with gram = chol^dagger chol.
    pub chol: CMat,
    /// Change of basis from algebra coordinates to the orthonormal basis
    /// (equal to `chol`).
    pub on_basis: CMat,
    pub on_basis_inv: CMat,
    pub left_rep: Vec<CMat>,
    /// Coordinates of the image of the unit.
    pub cyclic: CVec,
}

impl GNSSpace {
    /// Representation matrix of an arbitrary element.
    pub fn rep_of(&self, x: &CVec) -> CMat {
        let n = x.len();
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            if x[i].norm() != 0.0 {
                m += &self.left_rep[i] * x[i];
            }
        }
        m
    }

    /// GNS image of an algebra element in orthonormal coordinates.
    pub fn embed(&self, x: &CVec) -> CVec {
        &self.on_basis * x
    }
}

/// Build the GNS space of a faithful state with phi(1) = 1.
pub fn gns(a: &FDAlgebra, phi: &LinearFunctional, tol: f64) -> Result<GNSSpace> {
    let n = a.dim;
    let gram = a.gram_matrix(phi);
    if linalg::hermitian_residual(&gram) > tol {
        return Err(CqgError::NotPositive("Gram matrix is not Hermitian".into()));
    }
    let herm = (gram.clone() + gram.adjoint()).scale(0.5);
    let ev = linalg::hermitian_eigenvalues(&herm);
    if ev.first().copied().unwrap_or(0.0) <= tol {
        return Err(CqgError::NotFaithful(format!(
            "Gram matrix has eigenvalue {:.3e}",
            ev.first().copied().unwrap_or(0.0)
        )));
    }
    let chol = nalgebra::Cholesky::new(herm)
        .ok_or_else(|| CqgError::NotFaithful("Gram matrix not positive definite".into()))?;
    // nalgebra gives G = L L^dagger; we use R = L^dagger so G = R^dagger R.
    let r: CMat = chol.l().adjoint();
    let r_inv = r
        .clone()
        .try_inverse()
        .ok_or_else(|| CqgError::Singular("Cholesky factor not invertible".into()))?;
    let left_rep: Vec<CMat> = (0..n)
        .map(|i| {
            let l = a.left_mult_matrix(&AlgebraElement::basis(n, i).coeffs);
            &r * l * &r_inv
        })
        .collect();
    let cyclic = &r * a.unit.clone();
    Ok(GNSSpace {
        gram,
        chol: r.clone(),
        on_basis: r,
        on_basis_inv: r_inv,
        left_rep,
        cyclic,
    })
}
