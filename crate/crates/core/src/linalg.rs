//! Dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn cone() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Max absolute entry of a matrix.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_vec(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Residual of `m` against the identity, in max-abs norm.
pub fn identity_residual(m: &CMat) -> f64 {
    let n = m.nrows();
    max_abs(&(m - CMat::identity(n, n)))
}

/// Residual of unitarity, max(|U†U - I|, |UU† - I|).
pub fn unitarity_residual(u: &CMat) -> f64 {
    let a = identity_residual(&(u.adjoint() * u));
    let b = identity_residual(&(u * u.adjoint()));
    a.max(b)
}

pub fn hermitian_residual(m: &CMat) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let h = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Hermitian eigendecomposition; returns (eigenvalues, eigenvectors as columns).
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let h = (m + m.adjoint()).scale(0.5);
    let se = nalgebra::SymmetricEigen::new(h);
    let ev: Vec<f64> = se.eigenvalues.iter().copied().collect();
    (ev, se.eigenvectors)
}

// NOTE: nalgebra's complex SVD loses accuracy on (nearly) rank-deficient
// matrices, so everything below is built on column-pivoted QR and Hermitian
// eigendecompositions instead.

/// Singular values, descending, from the eigenvalues of the Gram matrix.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    let gram = if m.nrows() <= m.ncols() {
        m * m.adjoint()
    } else {
        m.adjoint() * m
    };
    let mut sv: Vec<f64> = hermitian_eigenvalues(&gram)
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Numerical rank with absolute cutoff on the pivoted-QR diagonal.
pub fn rank(m: &CMat, tol: f64) -> usize {
    let qr = m.clone().col_piv_qr();
    let r = qr.r();
    (0..r.nrows().min(r.ncols()))
        .filter(|&i| r[(i, i)].norm() > tol)
        .count()
}

/// Condition number (ratio of extreme singular values); infinite if singular.
pub fn condition_number(m: &CMat) -> f64 {
    let sv = singular_values(m);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Orthonormal basis (columns) of the nullspace of `m`.
pub fn nullspace(m: &CMat, tol: f64) -> CMat {
    let n = m.ncols();
    // row-space basis, then its orthogonal complement
    let rows = column_space(&m.adjoint(), tol);
    let proj = CMat::identity(n, n) - &rows * rows.adjoint();
    let (ev, vecs) = hermitian_eigen(&proj);
    let mut cols: Vec<CVec> = Vec::new();
    for (i, l) in ev.iter().enumerate() {
        // eigenvalues of a projection sit at 0 or 1
        if *l > 0.5 {
            cols.push(vecs.column(i).into_owned());
        }
    }
    let mut out = CMat::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        out.set_column(j, c);
    }
    out
}

/// Orthonormal basis (columns) of the column space of `m`.
pub fn column_space(m: &CMat, tol: f64) -> CMat {
    let qr = m.clone().col_piv_qr();
    let q = qr.q();
    let r = qr.r();
    let rank = (0..r.nrows().min(r.ncols()))
        .filter(|&i| r[(i, i)].norm() > tol)
        .count();
    q.columns(0, rank).into_owned()
}

/// Solve m x = b in the least-squares sense (m must have full column rank).
pub fn lstsq(m: &CMat, b: &CVec, _tol: f64) -> CVec {
    let normal = m.adjoint() * m;
    let rhs = m.adjoint() * b;
    normal
        .lu()
        .solve(&rhs)
        .expect("normal equations are solvable for full-column-rank systems")
}

/// Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Distance from vector `v` to the subspace spanned by the orthonormal columns of `q`.
pub fn distance_to_span(q: &CMat, v: &CVec) -> f64 {
    let proj = q * (q.adjoint() * v);
    max_abs_vec(&(v - proj))
}

/// Cluster a sorted-or-unsorted list of real values into groups closer than `tol`.
/// Returns (representative, multiplicity) pairs sorted ascending.
pub fn cluster_values(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<(f64, usize)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((rep, count)) if (v - *rep).abs() <= tol => {
                // running mean keeps the representative centred
                *rep = (*rep * (*count as f64) + v) / (*count as f64 + 1.0);
                *count += 1;
            }
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Round a real number to the nearest integer, failing if it is farther than `tol`.
pub fn round_to_integer(x: f64, tol: f64) -> Option<i64> {
    let r = x.round();
    if (x - r).abs() <= tol {
        Some(r as i64)
    } else {
        None
    }
}
