//! Finite-dimensional *-algebras given by structure constants.
//!
//! An algebra of dimension `n` is described by a multiplication tensor
//! `m[i][j][k]` with `e_i e_j = sum_k m[i][j][k] e_k`, a unit coefficient
//! vector, and a star matrix `s[i][j]` acting antilinearly by
//! `(sum c_i e_i)^* = sum conj(c_i) s[i][j] e_j`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{CqgError, Result};
use crate::linalg::{self, CMat, CVec};
use crate::report::ValidationReport;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Dense rank-3 tensor of complex scalars, row-major in (i, j, k).
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    pub ni: usize,
    pub nj: usize,
    pub nk: usize,
    data: Vec<Complex64>,
}

impl Tensor3 {
    pub fn zeros(ni: usize, nj: usize, nk: usize) -> Self {
        Tensor3 {
            ni,
            nj,
            nk,
            data: vec![linalg::czero(); ni * nj * nk],
        }
    }

    pub fn from_data(ni: usize, nj: usize, nk: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != ni * nj * nk {
            return Err(CqgError::ShapeMismatch(format!(
                "tensor data length {} != {}*{}*{}",
                data.len(),
                ni,
                nj,
                nk
            )));
        }
        Ok(Tensor3 { ni, nj, nk, data })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.data[(i * self.nj + j) * self.nk + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Complex64) {
        self.data[(i * self.nj + j) * self.nk + k] = v;
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, Complex64)> + '_ {
        let nj = self.nj;
        let nk = self.nk;
        self.data.iter().enumerate().filter_map(move |(idx, v)| {
            if v.norm() == 0.0 {
                None
            } else {
                let k = idx % nk;
                let j = (idx / nk) % nj;
                let i = idx / (nj * nk);
                Some((i, j, k, *v))
            }
        })
    }
}

/// A finite-dimensional *-algebra presented by structure constants.
#[derive(Debug, Clone)]
pub struct FDAlgebra {
    pub dim: usize,
    pub basis_labels: Vec<String>,
    /// e_i e_j = sum_k mult[i][j][k] e_k
    pub mult: Tensor3,
    pub unit: CVec,
    /// (sum c_i e_i)^* = sum_i conj(c_i) sum_j star[i][j] e_j
    pub star: CMat,
}

/// Element of an algebra: basis coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub coeffs: CVec,
}

impl AlgebraElement {
    pub fn new(coeffs: CVec) -> Self {
        AlgebraElement { coeffs }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut c = CVec::zeros(n);
        c[i] = linalg::cone();
        AlgebraElement { coeffs: c }
    }

    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            coeffs: CVec::zeros(n),
        }
    }
}

/// A linear functional on the algebra, stored as a covector.
#[derive(Debug, Clone)]
pub struct LinearFunctional {
    pub covector: CVec,
}

/// Flags computed for a functional from its Gram matrix.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FunctionalFlags {
    pub positive: bool,
    pub faithful: bool,
    pub tracial: bool,
    pub norm_at_unit: f64,
}

impl LinearFunctional {
    pub fn new(covector: CVec) -> Self {
        LinearFunctional { covector }
    }

    pub fn apply(&self, x: &AlgebraElement) -> Complex64 {
        self.covector.dot(&x.coeffs)
    }

    pub fn apply_coeffs(&self, c: &CVec) -> Complex64 {
        self.covector.dot(c)
    }
}

impl FDAlgebra {
    pub fn new(
        basis_labels: Vec<String>,
        mult: Tensor3,
        unit: CVec,
        star: CMat,
    ) -> Result<Self> {
        let dim = basis_labels.len();
        if dim == 0 {
            return Err(CqgError::ShapeMismatch("algebra dimension 0".into()));
        }
        if mult.ni != dim || mult.nj != dim || mult.nk != dim {
            return Err(CqgError::ShapeMismatch(format!(
                "mult tensor {}x{}x{} for dim {}",
                mult.ni, mult.nj, mult.nk, dim
            )));
        }
        if unit.len() != dim {
            return Err(CqgError::ShapeMismatch(format!(
                "unit length {} for dim {}",
                unit.len(),
                dim
            )));
        }
        if star.nrows() != dim || star.ncols() != dim {
            return Err(CqgError::ShapeMismatch(format!(
                "star matrix {}x{} for dim {}",
                star.nrows(),
                star.ncols(),
                dim
            )));
        }
        Ok(FDAlgebra {
            dim,
            basis_labels,
            mult,
            unit,
            star,
        })
    }

    pub fn unit_element(&self) -> AlgebraElement {
        AlgebraElement::new(self.unit.clone())
    }

    pub fn check_dim(&self, x: &AlgebraElement) -> Result<()> {
        if x.coeffs.len() != self.dim {
            return Err(CqgError::DimensionMismatch {
                expected: self.dim,
                got: x.coeffs.len(),
            });
        }
        Ok(())
    }

    /// Matrix of left multiplication by x: (xy)_coeffs = L_x y_coeffs.
    pub fn left_mult_matrix(&self, x: &CVec) -> CMat {
        let n = self.dim;
        let mut l = CMat::zeros(n, n);
        for (i, j, k, v) in self.mult.iter_nonzero() {
            l[(k, j)] += x[i] * v;
        }
        l
    }

    /// Matrix of right multiplication by x: (yx)_coeffs = R_x y_coeffs.
    pub fn right_mult_matrix(&self, x: &CVec) -> CMat {
        let n = self.dim;
        let mut r = CMat::zeros(n, n);
        for (i, j, k, v) in self.mult.iter_nonzero() {
            r[(k, i)] += x[j] * v;
        }
        r
    }

    pub fn mul_coeffs(&self, x: &CVec, y: &CVec) -> CVec {
        let n = self.dim;
        let mut out = CVec::zeros(n);
        for (i, j, k, v) in self.mult.iter_nonzero() {
            out[k] += x[i] * y[j] * v;
        }
        out
    }

    pub fn star_coeffs(&self, x: &CVec) -> CVec {
        // (x*)_j = sum_i conj(x_i) s[i][j]
        self.star.transpose() * x.map(|z| z.conj())
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(AlgebraElement::new(self.mul_coeffs(&x.coeffs, &y.coeffs)))
    }

    pub fn star_element(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_dim(x)?;
        Ok(AlgebraElement::new(self.star_coeffs(&x.coeffs)))
    }

    /// Gram matrix G[i][j] = phi(e_i^* e_j) of a functional.
    pub fn gram_matrix(&self, phi: &LinearFunctional) -> CMat {
        let n = self.dim;
        let mut g = CMat::zeros(n, n);
        for i in 0..n {
            let ei_star = self.star_coeffs(&AlgebraElement::basis(n, i).coeffs);
            for j in 0..n {
                let prod = self.mul_coeffs(&ei_star, &AlgebraElement::basis(n, j).coeffs);
                g[(i, j)] = phi.apply_coeffs(&prod);
            }
        }
        g
    }

    /// Positivity / faithfulness / traciality flags of a functional.
    pub fn check_functional(&self, phi: &LinearFunctional, tol: f64) -> FunctionalFlags {
        let g = self.gram_matrix(phi);
        let herm = linalg::hermitian_residual(&g);
        let ev = linalg::hermitian_eigenvalues(&g);
        let min_ev = ev.first().copied().unwrap_or(0.0);
        let positive = herm < tol && min_ev > -tol;
        let faithful = positive && min_ev > tol;
        let mut trace_res: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ei = AlgebraElement::basis(self.dim, i).coeffs;
                let ej = AlgebraElement::basis(self.dim, j).coeffs;
                let xy = phi.apply_coeffs(&self.mul_coeffs(&ei, &ej));
                let yx = phi.apply_coeffs(&self.mul_coeffs(&ej, &ei));
                trace_res = trace_res.max((xy - yx).norm());
            }
        }
        FunctionalFlags {
            positive,
            faithful,
            tracial: trace_res < tol,
            norm_at_unit: phi.apply_coeffs(&self.unit).norm(),
        }
    }

    /// Per-axiom residual report for the algebra structure.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let n = self.dim;
        let mut report = ValidationReport::new();

        // associativity on basis triples
        let mut assoc: f64 = 0.0;
        for i in 0..n {
            let ei = AlgebraElement::basis(n, i).coeffs;
            for j in 0..n {
                let ej = AlgebraElement::basis(n, j).coeffs;
                let ij = self.mul_coeffs(&ei, &ej);
                for l in 0..n {
                    let el = AlgebraElement::basis(n, l).coeffs;
                    let lhs = self.mul_coeffs(&ij, &el);
                    let jl = self.mul_coeffs(&ej, &el);
                    let rhs = self.mul_coeffs(&ei, &jl);
                    assoc = assoc.max(linalg::max_abs_vec(&(lhs - rhs)));
                }
            }
        }
        report.push("associativity", assoc, tol);

        // unit laws
        let mut unit_res: f64 = 0.0;
        for i in 0..n {
            let ei = AlgebraElement::basis(n, i).coeffs;
            let left = self.mul_coeffs(&self.unit, &ei);
            let right = self.mul_coeffs(&ei, &self.unit);
            unit_res = unit_res.max(linalg::max_abs_vec(&(left - ei.clone())));
            unit_res = unit_res.max(linalg::max_abs_vec(&(right - ei)));
        }
        report.push("unit_laws", unit_res, tol);

        // star involutive
        let mut invol: f64 = 0.0;
        for i in 0..n {
            let ei = AlgebraElement::basis(n, i).coeffs;
            let ss = self.star_coeffs(&self.star_coeffs(&ei));
            invol = invol.max(linalg::max_abs_vec(&(ss - ei)));
        }
        report.push("star_involutive", invol, tol);

        // star antimultiplicative: (xy)* = y* x*
        let mut antimult: f64 = 0.0;
        for i in 0..n {
            let ei = AlgebraElement::basis(n, i).coeffs;
            for j in 0..n {
                let ej = AlgebraElement::basis(n, j).coeffs;
                let lhs = self.star_coeffs(&self.mul_coeffs(&ei, &ej));
                let rhs = self.mul_coeffs(&self.star_coeffs(&ej), &self.star_coeffs(&ei));
                antimult = antimult.max(linalg::max_abs_vec(&(lhs - rhs)));
            }
        }
        report.push("star_antimultiplicative", antimult, tol);

        report
    }

    /// The normalized regular trace phi(x) = Tr(L_x) / n.
    ///
    /// On a semisimple *-algebra with a C*-realizable star this is a faithful
    /// tracial state; its failure modes drive the Wedderburn error reporting.
    pub fn regular_trace(&self) -> LinearFunctional {
        let n = self.dim;
        let mut cov = CVec::zeros(n);
        for i in 0..n {
            let l = self.left_mult_matrix(&AlgebraElement::basis(n, i).coeffs);
            cov[i] = l.trace() / Complex64::new(n as f64, 0.0);
        }
        LinearFunctional::new(cov)
    }

    /// Tensor product algebra A (x) B with basis index (i_A * dim_B + i_B).
    pub fn tensor_product(a: &FDAlgebra, b: &FDAlgebra) -> FDAlgebra {
        let n = a.dim;
        let m = b.dim;
        let nm = n * m;
        let mut labels = Vec::with_capacity(nm);
        for i in 0..n {
            for p in 0..m {
                labels.push(format!("{}(x){}", a.basis_labels[i], b.basis_labels[p]));
            }
        }
        let mut mult = Tensor3::zeros(nm, nm, nm);
        for (i, j, k, v) in a.mult.iter_nonzero() {
            for (p, q, r, w) in b.mult.iter_nonzero() {
                mult.set(i * m + p, j * m + q, k * m + r, v * w);
            }
        }
        let mut unit = CVec::zeros(nm);
        for i in 0..n {
            for p in 0..m {
                unit[i * m + p] = a.unit[i] * b.unit[p];
            }
        }
        let star = linalg::kron(&a.star, &b.star);
        FDAlgebra {
            dim: nm,
            basis_labels: labels,
            mult,
            unit,
            star,
        }
    }
}
