//! Normal Hopf *-subalgebras, the ideal generated by the counit kernel,
//! quotient quantum groups, and the induced short exact sequence on K0.

use num_complex::Complex64;

use crate::algebra::{AlgebraElement, FDAlgebra, Tensor3};
use crate::error::{CqgError, Result};
use crate::gns;
use crate::hopf::{haar_state, HopfStructure, QuantumGroup};
use crate::linalg::{self, CMat, CVec};
use crate::modules::{self, K0Class, ProjectionModule};
use crate::wedderburn;

/// A Hopf *-subalgebra of B with the structural flags of its embedding.
#[derive(Debug, Clone)]
pub struct HopfSubalgebra {
    /// Orthonormal columns spanning N inside B.
    pub basis: CMat,
    pub unital: bool,
    pub star_closed: bool,
    pub mult_closed: bool,
    pub coproduct_closed: bool,
    pub antipode_stable: bool,
    /// Closure under the left adjoint action x . n = sum x_(1) n S(x_(2)).
    pub normal_left: bool,
    /// Closure under the right adjoint action n . x = sum S(x_(1)) n x_(2).
    pub normal_right: bool,
    /// Worst distance of an adjoint-action image from the span.
    pub normality_residual: f64,
}

impl HopfSubalgebra {
    pub fn normal(&self) -> bool {
        self.normal_left && self.normal_right
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// Verify that the span of the given vectors is a Hopf *-subalgebra and
/// compute its flags, including normality via the adjoint actions.
pub fn check_subalgebra(
    b: &FDAlgebra,
    hb: &HopfStructure,
    span: &CMat,
    tol: f64,
) -> Result<HopfSubalgebra> {
    let n = b.dim;
    if span.nrows() != n {
        return Err(CqgError::ShapeMismatch(format!(
            "subalgebra basis has {} rows for dim {}",
            span.nrows(),
            n
        )));
    }
    let q = linalg::column_space(span, tol);
    let k = q.ncols();

    let mut mult_res: f64 = 0.0;
    for i in 0..k {
        let qi: CVec = q.column(i).into_owned();
        for j in 0..k {
            let qj: CVec = q.column(j).into_owned();
            mult_res = mult_res.max(linalg::distance_to_span(&q, &b.mul_coeffs(&qi, &qj)));
        }
    }
    if mult_res > tol.max(1e-9) {
        return Err(CqgError::NotSubalgebra(mult_res));
    }

    let unital = linalg::distance_to_span(&q, &b.unit) <= tol.max(1e-9);
    let star_closed = (0..k).all(|i| {
        linalg::distance_to_span(&q, &b.star_coeffs(&q.column(i).into_owned())) <= tol.max(1e-9)
    });
    let antipode_stable = (0..k).all(|i| {
        linalg::distance_to_span(&q, &hb.antipode_of(&q.column(i).into_owned())) <= tol.max(1e-9)
    });

    let qq = linalg::kron(&q, &q);
    let d = hb.coproduct_matrix();
    let coproduct_closed = (0..k).all(|i| {
        linalg::distance_to_span(&qq, &(&d * q.column(i).into_owned())) <= tol.max(1e-9)
    });

    // adjoint actions of every basis element of B on every basis element of N
    let s_of: Vec<CVec> = (0..n)
        .map(|i| hb.antipode_of(&AlgebraElement::basis(n, i).coeffs))
        .collect();
    let mut left_res: f64 = 0.0;
    let mut right_res: f64 = 0.0;
    for c in 0..k {
        let nvec: CVec = q.column(c).into_owned();
        for x in 0..n {
            let mut left = CVec::zeros(n);
            let mut right = CVec::zeros(n);
            for (i, j, l, v) in hb.coproduct.iter_nonzero() {
                if i != x {
                    continue;
                }
                let ej = AlgebraElement::basis(n, j).coeffs;
                let el = AlgebraElement::basis(n, l).coeffs;
                left += b.mul_coeffs(&b.mul_coeffs(&ej, &nvec), &s_of[l]) * v;
                right += b.mul_coeffs(&b.mul_coeffs(&s_of[j], &nvec), &el) * v;
            }
            left_res = left_res.max(linalg::distance_to_span(&q, &left));
            right_res = right_res.max(linalg::distance_to_span(&q, &right));
        }
    }

    Ok(HopfSubalgebra {
        basis: q,
        unital,
        star_closed,
        mult_closed: true,
        coproduct_closed,
        antipode_stable,
        normal_left: left_res <= tol.max(1e-8),
        normal_right: right_res <= tol.max(1e-8),
        normality_residual: left_res.max(right_res),
    })
}

/// The two-sided ideal generated by N+ = N intersect ker(counit), the ideal
/// as an algebra in its own right, and the quotient quantum group B/ideal.
#[derive(Debug, Clone)]
pub struct HopfIdealData {
    /// Orthonormal basis of N intersect ker(counit) (not yet saturated).
    pub nplus: CMat,
    /// Orthonormal basis of the generated two-sided ideal; also the matrix of
    /// the inclusion into B.
    pub ideal: CMat,
    /// The ideal with its own unit (its central support); `None` when zero.
    pub ideal_algebra: Option<FDAlgebra>,
    /// Orthonormal basis of the complement realizing the quotient; the
    /// projection B -> B/ideal is its adjoint.
    pub quotient_basis: CMat,
    pub quotient: QuantumGroup,
}

impl HopfIdealData {
    pub fn ideal_dim(&self) -> usize {
        self.ideal.ncols()
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient_basis.ncols()
    }

    /// Coordinates in the quotient of an element of B.
    pub fn project(&self, x: &CVec) -> CVec {
        self.quotient_basis.adjoint() * x
    }

    /// Coordinates in B of an element of the ideal algebra.
    pub fn include(&self, x: &CVec) -> CVec {
        &self.ideal * x
    }
}

fn restrict_algebra(b: &FDAlgebra, q: &CMat, label: &str, tol: f64) -> Result<FDAlgebra> {
    let m = q.ncols();
    let labels: Vec<String> = (0..m).map(|i| format!("{}{}", label, i)).collect();
    let mut mult = Tensor3::zeros(m, m, m);
    let mut res: f64 = 0.0;
    for i in 0..m {
        let qi: CVec = q.column(i).into_owned();
        for j in 0..m {
            let prod = b.mul_coeffs(&qi, &q.column(j).into_owned());
            res = res.max(linalg::distance_to_span(q, &prod));
            let coords = q.adjoint() * prod;
            for k in 0..m {
                if coords[k].norm() > 1e-14 {
                    mult.set(i, j, k, coords[k]);
                }
            }
        }
    }
    if res > tol.max(1e-8) {
        return Err(CqgError::NotSubalgebra(res));
    }
    // the unit: the element acting as identity on the span
    let mut sys = CMat::zeros(m * m, m);
    let mut rhs = CVec::zeros(m * m);
    for j in 0..m {
        let qj: CVec = q.column(j).into_owned();
        for k in 0..m {
            let prod = q.adjoint() * b.mul_coeffs(&q.column(k).into_owned(), &qj);
            for r in 0..m {
                sys[(j * m + r, k)] = prod[r];
            }
        }
        for r in 0..m {
            rhs[j * m + r] = if r == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
    }
    let unit = linalg::lstsq(&sys, &rhs, 1e-12);
    if linalg::max_abs_vec(&(&sys * &unit - rhs)) > tol.max(1e-8) {
        return Err(CqgError::Singular("restricted algebra has no unit".into()));
    }
    let mut star = CMat::zeros(m, m);
    for i in 0..m {
        let st = b.star_coeffs(&q.column(i).into_owned());
        let star_res = linalg::distance_to_span(q, &st);
        if star_res > tol.max(1e-8) {
            return Err(CqgError::NotSubalgebra(star_res));
        }
        let coords = q.adjoint() * st;
        for c in 0..m {
            star[(i, c)] = coords[c];
        }
    }
    FDAlgebra::new(labels, mult, unit, star)
}

/// Build N+, saturate it to a two-sided ideal, and form the quotient Hopf
/// structure on the orthogonal complement.
pub fn hopf_ideal(
    b: &FDAlgebra,
    hb: &HopfStructure,
    sub: &HopfSubalgebra,
    tol: f64,
) -> Result<HopfIdealData> {
    if !sub.normal() {
        return Err(CqgError::NotNormal(sub.normality_residual));
    }
    let n = b.dim;
    let k = sub.dim();

    // N+ = N intersect ker(counit)
    let mut eps = CMat::zeros(1, k);
    for i in 0..k {
        eps[(0, i)] = hb.counit_of(&sub.basis.column(i).into_owned());
    }
    let combos = linalg::nullspace(&eps, tol);
    let nplus = &sub.basis * combos;

    // saturate to a two-sided ideal
    let mut ideal = linalg::column_space(&nplus, tol);
    loop {
        let m = ideal.ncols();
        if m == 0 {
            break;
        }
        let mut stack = CMat::zeros(n, m + 2 * n * m);
        stack.view_mut((0, 0), (n, m)).copy_from(&ideal);
        let mut col = m;
        for i in 0..n {
            let ei = AlgebraElement::basis(n, i).coeffs;
            for j in 0..m {
                let v: CVec = ideal.column(j).into_owned();
                stack.set_column(col, &b.mul_coeffs(&ei, &v));
                stack.set_column(col + 1, &b.mul_coeffs(&v, &ei));
                col += 2;
            }
        }
        let bigger = linalg::column_space(&stack, tol);
        if bigger.ncols() == m {
            break;
        }
        ideal = bigger;
    }

    let ideal_algebra = if ideal.ncols() == 0 {
        None
    } else {
        Some(restrict_algebra(b, &ideal, "n", tol)?)
    };

    // quotient carrier: the orthogonal complement of the ideal
    let qq = if ideal.ncols() == 0 {
        CMat::identity(n, n)
    } else {
        linalg::nullspace(&ideal.adjoint(), tol)
    };
    let m = qq.ncols();
    if ideal.ncols() + m != n {
        return Err(CqgError::ShapeMismatch(format!(
            "ideal dim {} + quotient dim {} != {}",
            ideal.ncols(),
            m,
            n
        )));
    }
    let proj = qq.adjoint();

    let labels: Vec<String> = (0..m).map(|i| format!("q{}", i)).collect();
    let mut mult = Tensor3::zeros(m, m, m);
    for i in 0..m {
        let wi: CVec = qq.column(i).into_owned();
        for j in 0..m {
            let coords = &proj * b.mul_coeffs(&wi, &qq.column(j).into_owned());
            for l in 0..m {
                if coords[l].norm() > 1e-14 {
                    mult.set(i, j, l, coords[l]);
                }
            }
        }
    }
    let unit = &proj * b.unit.clone();
    let mut star = CMat::zeros(m, m);
    for i in 0..m {
        let coords = &proj * b.star_coeffs(&qq.column(i).into_owned());
        for c in 0..m {
            star[(i, c)] = coords[c];
        }
    }
    let quotient_algebra = FDAlgebra::new(labels, mult, unit, star)?;

    let d = hb.coproduct_matrix();
    let proj2 = linalg::kron(&proj, &proj);
    let mut coproduct = Tensor3::zeros(m, m, m);
    for i in 0..m {
        let img = &proj2 * (&d * qq.column(i).into_owned());
        for j in 0..m {
            for l in 0..m {
                let v = img[j * m + l];
                if v.norm() > 1e-14 {
                    coproduct.set(i, j, l, v);
                }
            }
        }
    }
    let mut counit = CVec::zeros(m);
    for i in 0..m {
        counit[i] = hb.counit_of(&qq.column(i).into_owned());
    }
    let mut antipode = CMat::zeros(m, m);
    for i in 0..m {
        let coords = &proj * hb.antipode_of(&qq.column(i).into_owned());
        for c in 0..m {
            antipode[(i, c)] = coords[c];
        }
    }
    let quotient_hopf = HopfStructure::new(coproduct, counit, antipode)?;

    Ok(HopfIdealData {
        nplus,
        ideal,
        ideal_algebra,
        quotient_basis: qq,
        quotient: QuantumGroup {
            algebra: quotient_algebra,
            hopf: quotient_hopf,
        },
    })
}

// ---------------------------------------------------------------------------
// integer linear algebra on small matrices

type IMat = Vec<Vec<i64>>;

fn imat_mul_vec(m: &IMat, x: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// Diagonalize by unimodular row/column operations: returns (u, d, v) with
/// u * m * v = d and d diagonal (Smith-style, without the divisibility chain).
fn int_diagonalize(m: &IMat) -> (IMat, IMat, IMat) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut d = m.clone();
    let mut u: IMat = (0..rows)
        .map(|i| (0..rows).map(|j| (i == j) as i64).collect())
        .collect();
    let mut v: IMat = (0..cols)
        .map(|i| (0..cols).map(|j| (i == j) as i64).collect())
        .collect();
    let mut t = 0;
    while t < rows.min(cols) {
        // minimal nonzero pivot in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = d[i][t].div_euclid(d[t][t]);
            if q != 0 {
                for j in 0..cols {
                    d[i][j] -= q * d[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= q * u[t][j];
                }
            }
            if d[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = d[t][j].div_euclid(d[t][t]);
            if q != 0 {
                for i in 0..rows {
                    d[i][j] -= q * d[i][t];
                }
                for i in 0..cols {
                    v[i][j] -= q * v[i][t];
                }
            }
            if d[t][j] != 0 {
                clean = false;
            }
        }
        if clean {
            t += 1;
        }
    }
    (u, d, v)
}

fn int_rank(d: &IMat) -> usize {
    let mut r = 0;
    for (i, row) in d.iter().enumerate() {
        if i < row.len() && row[i] != 0 {
            r += 1;
        }
    }
    r
}

/// Solve m x = b over the integers, if possible.
fn integer_solve(m: &IMat, bvec: &[i64]) -> Option<Vec<i64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let (u, d, v) = int_diagonalize(m);
    let ub = imat_mul_vec(&u, bvec);
    let mut y = vec![0i64; cols];
    for i in 0..rows {
        let di = if i < cols { d[i][i] } else { 0 };
        if di != 0 {
            if ub[i] % di != 0 {
                return None;
            }
            y[i] = ub[i] / di;
        } else if ub[i] != 0 {
            return None;
        }
    }
    Some(imat_mul_vec(&v, &y))
}

/// A basis of the integer kernel of m (columns of v past the rank).
fn integer_kernel(m: &IMat) -> Vec<Vec<i64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    if cols == 0 {
        return Vec::new();
    }
    let (_, d, v) = int_diagonalize(m);
    let r = int_rank(&d);
    (r..cols)
        .map(|j| (0..cols).map(|i| v[i][j]).collect())
        .collect()
}

// ---------------------------------------------------------------------------

/// Exactness of 0 -> K0(ideal) -> K0(B) -> K0(B/ideal) -> 0 plus the ring
/// properties of the maps, all as integer-matrix statements.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ExactnessReport {
    pub ideal_blocks: Vec<usize>,
    pub b_blocks: Vec<usize>,
    pub quotient_blocks: Vec<usize>,
    pub inclusion_matrix: Vec<Vec<i64>>,
    pub projection_matrix: Vec<Vec<i64>>,
    pub iota_injective: bool,
    pub composite_zero: bool,
    pub kernel_is_image: bool,
    pub pi_surjective: bool,
    pub pi_multiplicative: bool,
    /// K0(pi)(x box y) >= K0(pi)(x) box K0(pi)(y) componentwise: the quotient
    /// of a box module surjects onto the box of the quotients, so the defect
    /// class is itself a module class. Strict inequality occurs exactly when
    /// the ideal meets a block whose box-square has support outside it (e.g.
    /// the 2-dim irreducible of S3 over the A3 ideal), so the stronger
    /// equality in `pi_multiplicative` can genuinely fail.
    pub pi_submultiplicative: bool,
    pub image_is_ring_ideal: bool,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.iota_injective && self.composite_zero && self.kernel_is_image && self.pi_surjective
    }

    pub fn all(&self) -> bool {
        self.exact() && self.pi_multiplicative && self.image_is_ring_ideal
    }
}

pub fn k0_exactness(
    b: &FDAlgebra,
    hb: &HopfStructure,
    data: &HopfIdealData,
    tol: f64,
) -> Result<ExactnessReport> {
    let dec_b = wedderburn::decompose(b, 0, tol)?;
    let k_b = dec_b.blocks.len();

    // K0 of the inclusion: classes in B of the ideal's minimal projections
    let mut m_iota: IMat = vec![Vec::new(); k_b];
    let mut ideal_blocks = Vec::new();
    if let Some(alg) = &data.ideal_algebra {
        let dec_i = wedderburn::decompose(alg, 0, tol)?;
        ideal_blocks = dec_i.blocks.clone();
        for p in &dec_i.minimal_projections {
            let in_b = data.include(&p.coeffs);
            let pm = ProjectionModule::from_element(b, &in_b, tol.max(1e-7))?;
            let cls = modules::k0_class(b, &dec_b, &pm, tol.max(1e-7))?;
            for (r, val) in cls.0.iter().enumerate() {
                m_iota[r].push(*val);
            }
        }
    }
    let k_i = ideal_blocks.len();

    // K0 of the projection: classes in the quotient of B's minimal projections
    let qalg = &data.quotient.algebra;
    let dec_q = wedderburn::decompose(qalg, 0, tol)?;
    let k_q = dec_q.blocks.len();
    let mut m_pi: IMat = vec![vec![0; k_b]; k_q];
    for (c, p) in dec_b.minimal_projections.iter().enumerate() {
        let img = data.project(&p.coeffs);
        let pm = ProjectionModule::from_element(qalg, &img, tol.max(1e-7))?;
        let cls = modules::k0_class(qalg, &dec_q, &pm, tol.max(1e-7))?;
        for (r, val) in cls.0.iter().enumerate() {
            m_pi[r][c] = *val;
        }
    }

    let (_, d_iota, _) = int_diagonalize(&m_iota);
    let iota_injective = int_rank(&d_iota) == k_i;

    let mut composite_zero = true;
    for c in 0..k_i {
        let col: Vec<i64> = (0..k_b).map(|r| m_iota[r][c]).collect();
        if imat_mul_vec(&m_pi, &col).iter().any(|x| *x != 0) {
            composite_zero = false;
        }
    }

    let kernel_is_image = composite_zero
        && integer_kernel(&m_pi)
            .iter()
            .all(|v| integer_solve(&m_iota, v).is_some());

    let pi_surjective = (0..k_q).all(|j| {
        let e: Vec<i64> = (0..k_q).map(|i| (i == j) as i64).collect();
        integer_solve(&m_pi, &e).is_some()
    });

    // ring structure: the box-product tables of B and of the quotient
    let tau_b = haar_state(b, hb, tol)?;
    let h_b = gns::gns(b, &tau_b, tol)?;
    let table_b = modules::k0_ring_table(b, hb, &h_b, &dec_b)?;
    let tau_q = haar_state(qalg, &data.quotient.hopf, tol)?;
    let h_q = gns::gns(qalg, &tau_q, tol)?;
    let table_q = modules::k0_ring_table(qalg, &data.quotient.hopf, &h_q, &dec_q)?;

    let apply_pi = |x: &K0Class| -> K0Class {
        K0Class(imat_mul_vec(&m_pi, &x.0))
    };
    let mut pi_multiplicative = true;
    let mut pi_submultiplicative = true;
    for i in 0..k_b {
        for j in 0..k_b {
            let ei = K0Class((0..k_b).map(|t| (t == i) as i64).collect());
            let ej = K0Class((0..k_b).map(|t| (t == j) as i64).collect());
            let lhs = apply_pi(&table_b[i][j]);
            let rhs = modules::class_product(&table_q, &apply_pi(&ei), &apply_pi(&ej));
            if lhs != rhs {
                pi_multiplicative = false;
            }
            if lhs.0.iter().zip(&rhs.0).any(|(l, r)| l < r) {
                pi_submultiplicative = false;
            }
        }
    }

    let mut image_is_ring_ideal = true;
    for c in 0..k_i {
        let col = K0Class((0..k_b).map(|r| m_iota[r][c]).collect());
        for x in 0..k_b {
            let ex = K0Class((0..k_b).map(|t| (t == x) as i64).collect());
            for prod in [
                modules::class_product(&table_b, &col, &ex),
                modules::class_product(&table_b, &ex, &col),
            ] {
                if integer_solve(&m_iota, &prod.0).is_none() {
                    image_is_ring_ideal = false;
                }
            }
        }
    }

    Ok(ExactnessReport {
        ideal_blocks,
        b_blocks: dec_b.blocks.clone(),
        quotient_blocks: dec_q.blocks.clone(),
        inclusion_matrix: m_iota,
        projection_matrix: m_pi,
        iota_injective,
        composite_zero,
        kernel_is_image,
        pi_surjective,
        pi_multiplicative,
        pi_submultiplicative,
        image_is_ring_ideal,
    })
}
