//! Projection modules, K0 classes, the box product on classes, the
//! Grothendieck ring, and the four-way isometry equivalence checker.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::FDAlgebra;
use crate::error::{CqgError, Result};
use crate::gns::GNSSpace;
use crate::hopf::HopfStructure;
use crate::linalg::{self, CMat, CVec};
use crate::transform;
use crate::wedderburn::BlockDecomposition;

/// A d x d matrix with entries in the algebra, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixElement {
    pub d: usize,
    pub dim: usize,
    pub entries: Vec<CVec>,
}

impl MatrixElement {
    pub fn zeros(d: usize, dim: usize) -> Self {
        MatrixElement {
            d,
            dim,
            entries: vec![CVec::zeros(dim); d * d],
        }
    }

    pub fn identity(a: &FDAlgebra, d: usize) -> Self {
        let mut m = MatrixElement::zeros(d, a.dim);
        for r in 0..d {
            m.entries[r * d + r] = a.unit.clone();
        }
        m
    }

    pub fn from_entries(d: usize, dim: usize, entries: Vec<CVec>) -> Result<Self> {
        if entries.len() != d * d || entries.iter().any(|e| e.len() != dim) {
            return Err(CqgError::ShapeMismatch(
                "matrix element needs d*d entries of algebra dimension".into(),
            ));
        }
        Ok(MatrixElement { d, dim, entries })
    }

    pub fn entry(&self, r: usize, c: usize) -> &CVec {
        &self.entries[r * self.d + c]
    }

    pub fn mul(&self, a: &FDAlgebra, other: &MatrixElement) -> MatrixElement {
        assert_eq!(self.d, other.d);
        let mut out = MatrixElement::zeros(self.d, self.dim);
        for r in 0..self.d {
            for c in 0..self.d {
                let mut acc = CVec::zeros(self.dim);
                for k in 0..self.d {
                    acc += a.mul_coeffs(self.entry(r, k), other.entry(k, c));
                }
                out.entries[r * self.d + c] = acc;
            }
        }
        out
    }

    pub fn star(&self, a: &FDAlgebra) -> MatrixElement {
        let mut out = MatrixElement::zeros(self.d, self.dim);
        for r in 0..self.d {
            for c in 0..self.d {
                out.entries[r * self.d + c] = a.star_coeffs(self.entry(c, r));
            }
        }
        out
    }

    pub fn sub(&self, other: &MatrixElement) -> MatrixElement {
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(other.entries.iter()) {
            *e -= o;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(linalg::max_abs_vec)
            .fold(0.0, f64::max)
    }

    /// Residual against p^2 = p = p*.
    pub fn projection_residual(&self, a: &FDAlgebra) -> f64 {
        let sq = self.mul(a, self);
        let st = self.star(a);
        sq.sub(self).max_abs().max(st.sub(self).max_abs())
    }

    /// Block matrix of the element under a representation of the algebra.
    pub fn rep_with<F: Fn(&CVec) -> CMat>(&self, rep: F, m: usize) -> CMat {
        let mut out = CMat::zeros(self.d * m, self.d * m);
        for r in 0..self.d {
            for c in 0..self.d {
                out.view_mut((r * m, c * m), (m, m))
                    .copy_from(&rep(self.entry(r, c)));
            }
        }
        out
    }

    /// Left-multiplication operator on A^d in algebra coordinates.
    pub fn left_mult(&self, a: &FDAlgebra) -> CMat {
        let n = self.dim;
        let mut out = CMat::zeros(self.d * n, self.d * n);
        for r in 0..self.d {
            for c in 0..self.d {
                out.view_mut((r * n, c * n), (n, n))
                    .copy_from(&a.left_mult_matrix(self.entry(r, c)));
            }
        }
        out
    }
}

/// A finitely generated projective right module p A^d.
#[derive(Debug, Clone)]
pub struct ProjectionModule {
    pub proj: MatrixElement,
}

impl ProjectionModule {
    pub fn new(a: &FDAlgebra, proj: MatrixElement, tol: f64) -> Result<Self> {
        let res = proj.projection_residual(a);
        if res > tol {
            return Err(CqgError::NotProjection(res));
        }
        Ok(ProjectionModule { proj })
    }

    pub fn from_element(a: &FDAlgebra, p: &CVec, tol: f64) -> Result<Self> {
        let m = MatrixElement::from_entries(1, a.dim, vec![p.clone()])?;
        ProjectionModule::new(a, m, tol)
    }

    pub fn d(&self) -> usize {
        self.proj.d
    }
}

/// Murray-von Neumann class data: one rank per Wedderburn block.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct K0Class(pub Vec<i64>);

impl K0Class {
    pub fn zero(k: usize) -> Self {
        K0Class(vec![0; k])
    }

    pub fn add(&self, other: &K0Class) -> K0Class {
        K0Class(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0)
    }
}

/// A formal difference of classes; canonical form has min(pos, neg) = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrothendieckElement {
    pub pos: K0Class,
    pub neg: K0Class,
}

impl GrothendieckElement {
    pub fn new(pos: K0Class, neg: K0Class) -> Self {
        GrothendieckElement { pos, neg }.canonical()
    }

    pub fn from_class(pos: K0Class) -> Self {
        let k = pos.0.len();
        GrothendieckElement {
            pos,
            neg: K0Class::zero(k),
        }
    }

    pub fn canonical(&self) -> GrothendieckElement {
        let mut pos = self.pos.clone();
        let mut neg = self.neg.clone();
        for i in 0..pos.0.len() {
            let m = pos.0[i].min(neg.0[i]);
            pos.0[i] -= m;
            neg.0[i] -= m;
        }
        GrothendieckElement { pos, neg }
    }
}

/// The K0 class of a projection: ranks of the block components of rep(p).
pub fn k0_class(
    a: &FDAlgebra,
    dec: &BlockDecomposition,
    p: &ProjectionModule,
    tol: f64,
) -> Result<K0Class> {
    let res = p.proj.projection_residual(a);
    if res > tol {
        return Err(CqgError::NotProjection(res));
    }
    let k = dec.blocks.len();
    let mut ranks = vec![0i64; k];
    for j in 0..k {
        let (off, nj) = (dec.offsets[j], dec.blocks[j]);
        let mut t = Complex64::new(0.0, 0.0);
        for r in 0..p.d() {
            let block = dec.rep_of(p.proj.entry(r, r));
            for s in 0..nj {
                t += block[(off + s, off + s)];
            }
        }
        ranks[j] = linalg::round_to_integer(t.re, 1e-6).ok_or(CqgError::NonIntegerRank {
            dim: t.re,
            block: j,
        })?;
    }
    Ok(K0Class(ranks))
}

/// Block-diagonal direct sum of projections over the same algebra.
pub fn direct_sum(
    a: &FDAlgebra,
    p: &ProjectionModule,
    q: &ProjectionModule,
) -> Result<ProjectionModule> {
    if p.proj.dim != q.proj.dim {
        return Err(CqgError::AlgebraMismatch);
    }
    let d = p.d() + q.d();
    let mut out = MatrixElement::zeros(d, a.dim);
    for r in 0..p.d() {
        for c in 0..p.d() {
            out.entries[r * d + c] = p.proj.entry(r, c).clone();
        }
    }
    for r in 0..q.d() {
        for c in 0..q.d() {
            out.entries[(p.d() + r) * d + (p.d() + c)] = q.proj.entry(r, c).clone();
        }
    }
    ProjectionModule::new(a, out, 1e-8)
}

/// A canonical projection with the given class: a diagonal of minimal
/// projections, one per counted block copy.
pub fn representative_projection(
    a: &FDAlgebra,
    dec: &BlockDecomposition,
    class: &K0Class,
) -> Result<ProjectionModule> {
    let total: i64 = class.0.iter().sum();
    if class.0.iter().any(|c| *c < 0) {
        return Err(CqgError::ShapeMismatch(
            "module classes need nonnegative ranks".into(),
        ));
    }
    let d = (total.max(1)) as usize;
    let mut m = MatrixElement::zeros(d, a.dim);
    let mut slot = 0;
    for (j, c) in class.0.iter().enumerate() {
        for _ in 0..*c {
            m.entries[slot * d + slot] = dec.minimal_projections[j].coeffs.clone();
            slot += 1;
        }
    }
    ProjectionModule::new(a, m, 1e-8)
}

/// The box product of two projection modules, computed through the
/// skew-linear map on the enveloping Hilbert space.
///
/// The image projection lives on C^(dp dq) (x) H (x) H; the right action of
/// the algebra rides on the first H leg, and the class is read off from the
/// isotypic dimensions cut out by the minimal central projections.
pub fn box_product(
    a: &FDAlgebra,
    hopf: &HopfStructure,
    h: &GNSSpace,
    dec: &BlockDecomposition,
    p: &ProjectionModule,
    q: &ProjectionModule,
) -> Result<ProjectionModule> {
    let class = box_class(a, hopf, h, dec, p, q)?;
    representative_projection(a, dec, &class)
}

/// The K0 class of the box product.
pub fn box_class(
    a: &FDAlgebra,
    hopf: &HopfStructure,
    h: &GNSSpace,
    dec: &BlockDecomposition,
    p: &ProjectionModule,
    q: &ProjectionModule,
) -> Result<K0Class> {
    let n = a.dim;
    let (dp, dq) = (p.d(), q.d());
    let dd = dp * dq;
    let t = transform::skew_map(a, hopf, h)?;

    // the module (A (x) A)^(1 x D) (p (x) q) in envelope coordinates:
    // right multiplication by p (x) q on row vectors, amplification leg first
    let right_rep = |x: &CVec| -> CMat { &h.on_basis * a.right_mult_matrix(x) * &h.on_basis_inv };
    let nn = n * n;
    let mut big = CMat::zeros(dd * nn, dd * nn);
    for r1 in 0..dp {
        for c1 in 0..dp {
            let bp = right_rep(p.proj.entry(r1, c1));
            for r2 in 0..dq {
                for c2 in 0..dq {
                    let bq = right_rep(q.proj.entry(r2, c2));
                    let kr = linalg::kron(&bp, &bq);
                    let (r, c) = (r1 * dq + r2, c1 * dq + c2);
                    big.view_mut((c * nn, r * nn), (nn, nn)).copy_from(&kr);
                }
            }
        }
    }
    let id_amp = CMat::identity(dd, dd);
    let v_env = linalg::kron(&id_amp, &t.envelope);
    let span = linalg::column_space(&(&v_env * big), 1e-8);
    let proj = &span * span.adjoint();

    // the image is a left module: a . T(x) = T(Delta(a) x) keeps it invariant
    let id_n = CMat::identity(n, n);
    for j in 0..n {
        let act = linalg::kron(&id_amp, &linalg::kron(&h.left_rep[j], &id_n));
        let lhs = &act * &proj;
        let res = linalg::max_abs(&(&proj * &lhs - &lhs));
        if res > 1e-7 {
            return Err(CqgError::NotLinear(res));
        }
    }

    let k = dec.blocks.len();
    let mut ranks = vec![0i64; k];
    for j in 0..k {
        let z = h.rep_of(&dec.central_projections[j].coeffs);
        let zi = linalg::kron(&id_amp, &linalg::kron(&z, &id_n));
        let tr = (&proj * zi).trace().re;
        let m = tr / dec.blocks[j] as f64;
        ranks[j] = linalg::round_to_integer(m, 1e-6).ok_or(CqgError::NonIntegerRank {
            dim: m,
            block: j,
        })?;
    }
    Ok(K0Class(ranks))
}

/// Checks that equal input classes give equal box-product classes.
pub fn well_definedness_check(
    a: &FDAlgebra,
    hopf: &HopfStructure,
    h: &GNSSpace,
    dec: &BlockDecomposition,
    p: &ProjectionModule,
    p2: &ProjectionModule,
    q: &ProjectionModule,
) -> Result<bool> {
    let c1 = box_class(a, hopf, h, dec, p, q)?;
    let c2 = box_class(a, hopf, h, dec, p2, q)?;
    Ok(c1 == c2)
}

/// Pairwise box products of the block generator classes.
pub fn k0_ring_table(
    a: &FDAlgebra,
    hopf: &HopfStructure,
    h: &GNSSpace,
    dec: &BlockDecomposition,
) -> Result<Vec<Vec<K0Class>>> {
    let k = dec.blocks.len();
    let gens: Vec<ProjectionModule> = (0..k)
        .map(|j| ProjectionModule::from_element(a, &dec.minimal_projections[j].coeffs, 1e-8))
        .collect::<Result<_>>()?;
    let mut table = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            row.push(box_class(a, hopf, h, dec, &gens[i], &gens[j])?);
        }
        table.push(row);
    }
    Ok(table)
}

/// Multiply arbitrary classes through the generator table, bilinearly.
pub fn class_product(table: &[Vec<K0Class>], x: &K0Class, y: &K0Class) -> K0Class {
    let k = table.len();
    let mut out = K0Class::zero(k);
    for i in 0..k {
        for j in 0..k {
            let coef = x.0[i] * y.0[j];
            if coef != 0 {
                for l in 0..k {
                    out.0[l] += coef * table[i][j].0[l];
                }
            }
        }
    }
    out
}

/// (a - b) box (c - d) = (ac + bd) - (ad + bc), in canonical form.
pub fn grothendieck_product(
    table: &[Vec<K0Class>],
    x: &GrothendieckElement,
    y: &GrothendieckElement,
) -> GrothendieckElement {
    let pp = class_product(table, &x.pos, &y.pos);
    let nn = class_product(table, &x.neg, &y.neg);
    let pn = class_product(table, &x.pos, &y.neg);
    let np = class_product(table, &x.neg, &y.pos);
    GrothendieckElement::new(pp.add(&nn), pn.add(&np))
}

/// An A-linear map u = q u p between projection modules of equal size.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub domain: ProjectionModule,
    pub codomain: ProjectionModule,
    pub map: MatrixElement,
}

/// Outcome of the four-condition equivalence check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct TfaeReport {
    pub adjointable_unitary: bool,
    pub module_isomorphism: bool,
    pub norm_isometry: bool,
    pub state_isometry: bool,
}

impl TfaeReport {
    pub fn all(&self) -> bool {
        self.adjointable_unitary
            && self.module_isomorphism
            && self.norm_isometry
            && self.state_isometry
    }

    pub fn agree(&self) -> bool {
        let flags = [
            self.adjointable_unitary,
            self.module_isomorphism,
            self.norm_isometry,
            self.state_isometry,
        ];
        flags.iter().all(|f| *f) || flags.iter().all(|f| !*f)
    }
}

fn operator_norm(dec: &BlockDecomposition, x: &CVec) -> f64 {
    let m = dec.rep_of(x);
    linalg::singular_values(&m).first().copied().unwrap_or(0.0)
}

/// Inner product of module vectors: <x, y> = sum_r x_r* y_r in A.
pub fn module_inner(a: &FDAlgebra, d: usize, x: &CVec, y: &CVec) -> CVec {
    let n = a.dim;
    let mut acc = CVec::zeros(n);
    for r in 0..d {
        let xr = x.rows(r * n, n).into_owned();
        let yr = y.rows(r * n, n).into_owned();
        acc += a.mul_coeffs(&a.star_coeffs(&xr), &yr);
    }
    acc
}

/// Evaluate the four equivalent conditions on a surjective A-linear map.
pub fn tfae_check(
    a: &FDAlgebra,
    dec: &BlockDecomposition,
    phi: &crate::algebra::LinearFunctional,
    u: &ModuleMap,
    tol: f64,
    seed: u64,
) -> Result<TfaeReport> {
    let n = a.dim;
    let d = u.map.d;
    if u.domain.d() != d || u.codomain.d() != d {
        return Err(CqgError::ShapeMismatch("module map sizes differ".into()));
    }
    // A-linearity is structural for left multiplication; check u = q u p
    let qup = u
        .codomain
        .proj
        .mul(a, &u.map.mul(a, &u.domain.proj));
    let lin_res = qup.sub(&u.map).max_abs();
    if lin_res > tol.max(1e-8) {
        return Err(CqgError::NotLinear(lin_res));
    }
    // surjectivity: rank of rep(u) rep(p) equals rank of rep(q)
    let m = dec.rep_dim();
    let ru = u.map.rep_with(|x| dec.rep_of(x), m);
    let rp = u.domain.proj.rep_with(|x| dec.rep_of(x), m);
    let rq = u.codomain.proj.rep_with(|x| dec.rep_of(x), m);
    let rank_u = linalg::rank(&(&ru * &rp), 1e-8);
    let rank_q = linalg::rank(&rq, 1e-8);
    if rank_u < rank_q {
        return Err(CqgError::NotSurjective {
            rank: rank_u,
            expected: rank_q,
        });
    }

    // (1) <Ux, Uy> = <x, y> as elements of A: p u* u p = p
    let ustar_u = u.map.star(a).mul(a, &u.map);
    let inner_res = u
        .domain
        .proj
        .mul(a, &ustar_u.mul(a, &u.domain.proj))
        .sub(&u.domain.proj)
        .max_abs();
    let adjointable_unitary = inner_res < tol.max(1e-8);

    // (2) Hilbert module isomorphism: bijective and compatible with the
    // A-valued inner product
    let rank_p = linalg::rank(&rp, 1e-8);
    let module_isomorphism =
        rank_u == rank_p && rank_u == rank_q && inner_res < tol.max(1e-8);

    // (3) norm isometry on sampled module vectors
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lp = u.domain.proj.left_mult(a);
    let lu = u.map.left_mult(a);
    let mut norm_isometry = true;
    for _ in 0..200 {
        let mut v = CVec::zeros(d * n);
        for i in 0..d * n {
            v[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let x = &lp * v;
        let ux = &lu * &x;
        let nx = operator_norm(dec, &module_inner(a, d, &x, &x)).sqrt();
        let nux = operator_norm(dec, &module_inner(a, d, &ux, &ux)).sqrt();
        if (nx - nux).abs() > tol.max(1e-7) * (1.0 + nx) {
            norm_isometry = false;
            break;
        }
    }

    // (4) phi(<Ux, Uy>) = phi(<x, y>) as a linear identity over module basis
    let mut state_isometry = true;
    'outer: for i in 0..d * n {
        let mut ei = CVec::zeros(d * n);
        ei[i] = linalg::cone();
        let x = &lp * ei;
        let ux = &lu * &x;
        for j in 0..d * n {
            let mut ej = CVec::zeros(d * n);
            ej[j] = linalg::cone();
            let y = &lp * ej;
            let uy = &lu * &y;
            let lhs = phi.apply_coeffs(&module_inner(a, d, &x, &y));
            let rhs = phi.apply_coeffs(&module_inner(a, d, &ux, &uy));
            if (lhs - rhs).norm() > tol.max(1e-8) {
                state_isometry = false;
                break 'outer;
            }
        }
    }

    Ok(TfaeReport {
        adjointable_unitary,
        module_isomorphism,
        norm_isometry,
        state_isometry,
    })
}

/// Matrix of the module map between enveloping GNS spaces, with its
/// unitarity residual.
pub fn envelope_unitary(
    a: &FDAlgebra,
    h: &GNSSpace,
    u: &ModuleMap,
) -> Result<(CMat, f64)> {
    let d = u.map.d;
    let id_d = CMat::identity(d, d);
    let embed = linalg::kron(&id_d, &h.on_basis);
    let embed_inv = linalg::kron(&id_d, &h.on_basis_inv);
    let q_dom = linalg::column_space(&(&embed * u.domain.proj.left_mult(a)), 1e-8);
    let q_cod = linalg::column_space(&(&embed * u.codomain.proj.left_mult(a)), 1e-8);
    let u_env_full = &embed * u.map.left_mult(a) * embed_inv;
    let m = q_cod.adjoint() * u_env_full * q_dom;
    let res = linalg::unitarity_residual(&m);
    Ok((m, res))
}

/// Pull a block matrix in the image of the amplified representation back to
/// algebra coordinates.
pub fn rep_pullback(
    a: &FDAlgebra,
    dec: &BlockDecomposition,
    big: &CMat,
    d: usize,
) -> Result<MatrixElement> {
    let n = a.dim;
    let m = dec.rep_dim();
    let mut flat = CMat::zeros(m * m, n);
    for i in 0..n {
        for r in 0..m {
            for c in 0..m {
                flat[(r * m + c, i)] = dec.rep[i][(r, c)];
            }
        }
    }
    let mut out = MatrixElement::zeros(d, n);
    for br in 0..d {
        for bc in 0..d {
            let block = big.view((br * m, bc * m), (m, m));
            let mut b = CVec::zeros(m * m);
            for r in 0..m {
                for c in 0..m {
                    b[r * m + c] = block[(r, c)];
                }
            }
            let x = linalg::lstsq(&flat, &b, 1e-10);
            // confirm the block really lies in the image
            let back = &flat * &x;
            if linalg::max_abs_vec(&(back - b)) > 1e-7 {
                return Err(CqgError::NotLinear(0.0));
            }
            out.entries[br * d + bc] = x;
        }
    }
    Ok(out)
}

/// A Haar-random-ish unitary in M_d(A): exp(i h) of a random Hermitian.
pub fn random_matrix_unitary(
    a: &FDAlgebra,
    dec: &BlockDecomposition,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<MatrixElement> {
    let n = a.dim;
    let mut hmat = MatrixElement::zeros(d, n);
    for r in 0..d {
        for c in 0..d {
            let mut v = CVec::zeros(n);
            for i in 0..n {
                v[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            hmat.entries[r * d + c] = v;
        }
    }
    let herm = {
        let st = hmat.star(a);
        let mut out = hmat.clone();
        for (e, s) in out.entries.iter_mut().zip(st.entries.iter()) {
            *e = (e.clone() + s).scale(0.5);
        }
        out
    };
    let m = dec.rep_dim();
    let hrep = herm.rep_with(|x| dec.rep_of(x), m);
    let (ev, vecs) = linalg::hermitian_eigen(&hrep);
    let mut diag = CMat::zeros(d * m, d * m);
    for (i, l) in ev.iter().enumerate() {
        diag[(i, i)] = Complex64::new(l.cos(), l.sin());
    }
    let urep = &vecs * diag * vecs.adjoint();
    rep_pullback(a, dec, &urep, d)
}

/// A random projection in M_d(A) via the positive spectral subspace of a
/// random Hermitian element.
pub fn random_matrix_projection(
    a: &FDAlgebra,
    dec: &BlockDecomposition,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<ProjectionModule> {
    let n = a.dim;
    let mut hmat = MatrixElement::zeros(d, n);
    for r in 0..d {
        for c in 0..d {
            let mut v = CVec::zeros(n);
            for i in 0..n {
                v[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            hmat.entries[r * d + c] = v;
        }
    }
    let herm = {
        let st = hmat.star(a);
        let mut out = hmat.clone();
        for (e, s) in out.entries.iter_mut().zip(st.entries.iter()) {
            *e = (e.clone() + s).scale(0.5);
        }
        out
    };
    let m = dec.rep_dim();
    let hrep = herm.rep_with(|x| dec.rep_of(x), m);
    let (ev, vecs) = linalg::hermitian_eigen(&hrep);
    let mut diag = CMat::zeros(d * m, d * m);
    for (i, l) in ev.iter().enumerate() {
        if *l > 0.0 {
            diag[(i, i)] = linalg::cone();
        }
    }
    let prep = &vecs * diag * vecs.adjoint();
    let p = rep_pullback(a, dec, &prep, d)?;
    ProjectionModule::new(a, p, 1e-7)
}
