//! Numerical Artin-Wedderburn decomposition.
//!
//! Strategy: the regular trace gives a faithful GNS representation; the
//! center is the nullspace of the commutation constraints; a random
//! Hermitian central element splits the algebra into blocks through its
//! spectral projections, computed in the algebra by polynomial functional
//! calculus. One irreducible representation per block is cut out by a
//! minimal projection.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, FDAlgebra};
use crate::error::{CqgError, Result};
use crate::gns::{self, GNSSpace};
use crate::linalg::{self, CMat, CVec};

/// Wedderburn block data for a finite-dimensional C*-realizable algebra.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// Block sizes (n_1, ..., n_k), ascending; sum of squares equals dim.
    pub blocks: Vec<usize>,
    /// Faithful block-diagonal *-representation, one matrix per basis
    /// element, of size sum(n_i).
    pub rep: Vec<CMat>,
    /// Offset of each block inside the representation matrices.
    pub offsets: Vec<usize>,
    /// Minimal central projections, one per block.
    pub central_projections: Vec<AlgebraElement>,
    /// One minimal projection per block (class generator for K0).
    pub minimal_projections: Vec<AlgebraElement>,
    /// GNS space of the regular trace (used internally for spectra).
    pub regular: GNSSpace,
}

impl BlockDecomposition {
    pub fn rep_dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn rep_of(&self, x: &CVec) -> CMat {
        let m = self.rep_dim();
        let mut out = CMat::zeros(m, m);
        for (i, r) in self.rep.iter().enumerate() {
            if x[i].norm() != 0.0 {
                out += r * x[i];
            }
        }
        out
    }

    /// Positivity test through the faithful representation.
    pub fn is_positive(&self, x: &CVec, tol: f64) -> bool {
        let m = self.rep_of(x);
        if linalg::hermitian_residual(&m) > tol {
            return false;
        }
        let ev = linalg::hermitian_eigenvalues(&m);
        ev.first().copied().unwrap_or(0.0) >= -tol
    }
}

fn spectral_projection(
    a: &FDAlgebra,
    h: &CVec,
    eigen: &[(f64, usize)],
    target: usize,
) -> CVec {
    let mut p = a.unit.clone();
    let lam = eigen[target].0;
    for (l, (mu, _)) in eigen.iter().enumerate() {
        if l == target {
            continue;
        }
        // p <- p (h - mu) / (lam - mu)
        let shifted = h - a.unit.clone() * Complex64::new(*mu, 0.0);
        p = a.mul_coeffs(&p, &shifted) / Complex64::new(lam - mu, 0.0);
    }
    p
}

fn random_hermitian_in_span(
    a: &FDAlgebra,
    span: &CMat,
    rng: &mut ChaCha8Rng,
) -> CVec {
    let mut v = CVec::zeros(a.dim);
    for j in 0..span.ncols() {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        v += span.column(j) * c;
    }
    (v.clone() + a.star_coeffs(&v)).scale(0.5)
}

/// Compute the block decomposition. Deterministic for a fixed seed.
pub fn decompose(a: &FDAlgebra, seed: u64, tol: f64) -> Result<BlockDecomposition> {
    let n = a.dim;
    let phi = a.regular_trace();

    // semisimplicity: the bilinear trace form must be nondegenerate
    let mut bform = CMat::zeros(n, n);
    for i in 0..n {
        let ei = AlgebraElement::basis(n, i).coeffs;
        for j in 0..n {
            let ej = AlgebraElement::basis(n, j).coeffs;
            bform[(i, j)] = phi.apply_coeffs(&a.mul_coeffs(&ei, &ej));
        }
    }
    if linalg::rank(&bform, tol) < n {
        return Err(CqgError::NotSemisimple);
    }

    // C*-realizability: the Hermitian trace form must be positive definite
    let regular = gns::gns(a, &phi, tol).map_err(|e| match e {
        CqgError::NotFaithful(_) | CqgError::NotPositive(_) => CqgError::NotStarRealizable,
        other => other,
    })?;

    // center = nullspace of the stacked commutation constraints
    let mut comm = CMat::zeros(n * n, n);
    for i in 0..n {
        let ei = AlgebraElement::basis(n, i).coeffs;
        let diff = a.left_mult_matrix(&ei) - a.right_mult_matrix(&ei);
        comm.view_mut((i * n, 0), (n, n)).copy_from(&diff);
    }
    let center = linalg::nullspace(&comm, tol);
    let k = center.ncols();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // split the center with a random Hermitian central element
    let mut central_projs: Option<Vec<CVec>> = None;
    for _attempt in 0..32 {
        let h = random_hermitian_in_span(a, &center, &mut rng);
        let hm = regular.rep_of(&h);
        if linalg::hermitian_residual(&hm) > 1e-8 {
            continue;
        }
        let ev = linalg::hermitian_eigenvalues(&hm);
        let scale = ev.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let clusters = linalg::cluster_values(&ev, 1e-8 * scale.max(1.0));
        if clusters.len() != k {
            continue;
        }
        let projs: Vec<CVec> = (0..k)
            .map(|j| spectral_projection(a, &h, &clusters, j))
            .collect();
        // sanity: idempotent, self-adjoint, sum to 1
        let mut ok = true;
        let mut total = CVec::zeros(n);
        for p in &projs {
            let sq = a.mul_coeffs(p, p);
            if linalg::max_abs_vec(&(sq - p.clone())) > 1e-7 {
                ok = false;
            }
            if linalg::max_abs_vec(&(a.star_coeffs(p) - p.clone())) > 1e-7 {
                ok = false;
            }
            total += p;
        }
        if linalg::max_abs_vec(&(total - a.unit.clone())) > 1e-7 {
            ok = false;
        }
        if ok {
            central_projs = Some(projs);
            break;
        }
    }
    let central_projs = central_projs.ok_or(CqgError::NotSemisimple)?;

    // block sizes from the regular-representation dimension of each ideal
    let mut items: Vec<(usize, CVec)> = Vec::with_capacity(k);
    for z in central_projs {
        let t = regular.rep_of(&z).trace();
        let d = linalg::round_to_integer(t.re, 1e-6).ok_or(CqgError::NotSemisimple)? as usize;
        let nj = (d as f64).sqrt().round() as usize;
        if nj * nj != d {
            return Err(CqgError::NotSemisimple);
        }
        items.push((nj, z));
    }
    items.sort_by(|x, y| {
        x.0.cmp(&y.0).then_with(|| {
            // deterministic tie-break on coefficients
            let xs: Vec<(u64, u64)> = x.1.iter().map(|c| (c.re.to_bits(), c.im.to_bits())).collect();
            let ys: Vec<(u64, u64)> = y.1.iter().map(|c| (c.re.to_bits(), c.im.to_bits())).collect();
            xs.partial_cmp(&ys).unwrap()
        })
    });
    if items.iter().map(|(nj, _)| nj * nj).sum::<usize>() != n {
        return Err(CqgError::NotSemisimple);
    }

    // find a minimal projection and an irreducible representation per block
    let mut blocks = Vec::with_capacity(k);
    let mut offsets = Vec::with_capacity(k);
    let mut central_projections = Vec::with_capacity(k);
    let mut minimal_projections = Vec::with_capacity(k);
    let mut irreps: Vec<Vec<CMat>> = Vec::with_capacity(k);
    let mut offset = 0;

    for (nj, z) in items {
        let p = if nj == 1 {
            z.clone()
        } else {
            find_minimal_projection(a, &regular, &z, nj, &mut rng)?
        };

        // the left module A p carries the irreducible representation
        let mut cols = CMat::zeros(n, n);
        for i in 0..n {
            let ei = AlgebraElement::basis(n, i).coeffs;
            cols.set_column(i, &a.mul_coeffs(&ei, &p));
        }
        // orthonormalize in the GNS inner product of the regular trace
        let embedded = &regular.on_basis * cols;
        let q = linalg::column_space(&embedded, 1e-8);
        if q.ncols() != nj {
            return Err(CqgError::NotSemisimple);
        }
        let rho: Vec<CMat> = (0..n)
            .map(|i| q.adjoint() * &regular.left_rep[i] * &q)
            .collect();

        blocks.push(nj);
        offsets.push(offset);
        offset += nj;
        central_projections.push(AlgebraElement::new(z));
        minimal_projections.push(AlgebraElement::new(p));
        irreps.push(rho);
    }

    let m = offset;
    let rep: Vec<CMat> = (0..n)
        .map(|i| {
            let mut big = CMat::zeros(m, m);
            for (j, rho) in irreps.iter().enumerate() {
                let nj = blocks[j];
                big.view_mut((offsets[j], offsets[j]), (nj, nj))
                    .copy_from(&rho[i]);
            }
            big
        })
        .collect();

    let dec = BlockDecomposition {
        blocks,
        rep,
        offsets,
        central_projections,
        minimal_projections,
        regular,
    };
    verify_star_isomorphism(a, &dec)?;
    Ok(dec)
}

fn find_minimal_projection(
    a: &FDAlgebra,
    regular: &GNSSpace,
    z: &CVec,
    nj: usize,
    rng: &mut ChaCha8Rng,
) -> Result<CVec> {
    let n = a.dim;
    for _attempt in 0..64 {
        let mut y = CVec::zeros(n);
        for i in 0..n {
            y[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let zyz = a.mul_coeffs(z, &a.mul_coeffs(&y, z));
        let h = (zyz.clone() + a.star_coeffs(&zyz)).scale(0.5);
        let hm = regular.rep_of(&h);
        let ev = linalg::hermitian_eigenvalues(&hm);
        let scale = ev.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let clusters = linalg::cluster_values(&ev, 1e-8 * scale.max(1.0));
        // a simple eigenvalue inside the block shows up with multiplicity nj
        // in the regular representation
        let candidate = clusters
            .iter()
            .enumerate()
            .filter(|(_, (lam, mult))| *mult == nj && lam.abs() > 1e-6 * scale.max(1.0))
            .max_by(|x, y| x.1 .0.abs().partial_cmp(&y.1 .0.abs()).unwrap());
        let Some((idx, _)) = candidate else { continue };
        let p = spectral_projection(a, &h, &clusters, idx);
        let sq = a.mul_coeffs(&p, &p);
        let sa = a.star_coeffs(&p);
        if linalg::max_abs_vec(&(sq - p.clone())) < 1e-7
            && linalg::max_abs_vec(&(sa - p.clone())) < 1e-7
        {
            let t = regular.rep_of(&p).trace();
            if (t.re - nj as f64).abs() < 1e-6 {
                return Ok(p);
            }
        }
    }
    Err(CqgError::NotSemisimple)
}

fn verify_star_isomorphism(a: &FDAlgebra, dec: &BlockDecomposition) -> Result<()> {
    let n = a.dim;
    let m = dec.rep_dim();
    let mut res: f64 = 0.0;
    for i in 0..n {
        let ei = AlgebraElement::basis(n, i).coeffs;
        for j in 0..n {
            let ej = AlgebraElement::basis(n, j).coeffs;
            let lhs = dec.rep_of(&a.mul_coeffs(&ei, &ej));
            let rhs = dec.rep_of(&ei) * dec.rep_of(&ej);
            res = res.max(linalg::max_abs(&(lhs - rhs)));
        }
        let star_lhs = dec.rep_of(&a.star_coeffs(&ei));
        let star_rhs = dec.rep_of(&ei).adjoint();
        res = res.max(linalg::max_abs(&(star_lhs - star_rhs)));
    }
    if res > 1e-7 {
        return Err(CqgError::NotStarRealizable);
    }
    // injectivity: rep as a linear map C^n -> C^(m^2) has rank n
    let mut flat = CMat::zeros(m * m, n);
    for i in 0..n {
        for r in 0..m {
            for c in 0..m {
                flat[(r * m + c, i)] = dec.rep[i][(r, c)];
            }
        }
    }
    if linalg::rank(&flat, 1e-9) < n {
        return Err(CqgError::NotStarRealizable);
    }
    Ok(())
}
