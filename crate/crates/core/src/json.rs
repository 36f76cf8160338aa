//! JSON file format for quantum groups (versioned, sparse structure
//! constants) and the report documents the CLI emits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{FDAlgebra, Tensor3};
use crate::error::{CqgError, Result};
use crate::hopf::{HopfStructure, QuantumGroup};
use crate::linalg::{CMat, CVec};

/// One sparse tensor entry: (i, j, k, re, im).
pub type SparseEntry = (usize, usize, usize, f64, f64);

/// A complex scalar as a (re, im) pair.
pub type Pair = (f64, f64);

/// Reference to a coaction delta: B -> A (x) B stored alongside B.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CoactionBlock {
    /// Path (relative to this file) of the acting quantum group A.
    pub algebra_file: String,
    /// delta(e_i^B) = sum c[i][j][k] e_j^A (x) e_k^B.
    pub tensor: Vec<SparseEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuantumGroupFile {
    pub format: u32,
    pub dimension: usize,
    pub basis_labels: Vec<String>,
    pub mult: Vec<SparseEntry>,
    pub unit: Vec<Pair>,
    /// Row i holds the coordinates of (e_i)*.
    pub star: Vec<Vec<Pair>>,
    pub coproduct: Vec<SparseEntry>,
    pub counit: Vec<Pair>,
    /// Row i holds the coordinates of S(e_i).
    pub antipode: Vec<Vec<Pair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coaction: Option<CoactionBlock>,
}

fn parse_err(path: &str, message: impl Into<String>) -> CqgError {
    CqgError::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

fn pair_to_c(p: Pair, path: &str) -> Result<Complex64> {
    if !p.0.is_finite() || !p.1.is_finite() {
        return Err(parse_err(path, "entry is not finite"));
    }
    Ok(Complex64::new(p.0, p.1))
}

fn c_to_pair(c: Complex64) -> Pair {
    (c.re, c.im)
}

fn vec_to_pairs(v: &CVec) -> Vec<Pair> {
    v.iter().map(|c| c_to_pair(*c)).collect()
}

fn mat_rows_to_pairs(m: &CMat) -> Vec<Vec<Pair>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| c_to_pair(m[(i, j)])).collect())
        .collect()
}

fn tensor_to_sparse(t: &Tensor3) -> Vec<SparseEntry> {
    t.iter_nonzero()
        .map(|(i, j, k, v)| (i, j, k, v.re, v.im))
        .collect()
}

fn sparse_to_tensor(
    entries: &[SparseEntry],
    dims: (usize, usize, usize),
    path: &str,
) -> Result<Tensor3> {
    let mut t = Tensor3::zeros(dims.0, dims.1, dims.2);
    for (pos, &(i, j, k, re, im)) in entries.iter().enumerate() {
        let epath = format!("{}[{}]", path, pos);
        if i >= dims.0 || j >= dims.1 || k >= dims.2 {
            return Err(parse_err(
                &epath,
                format!("index ({}, {}, {}) out of range", i, j, k),
            ));
        }
        let v = pair_to_c((re, im), &epath)?;
        t.set(i, j, k, t.get(i, j, k) + v);
    }
    Ok(t)
}

fn pairs_to_vec(pairs: &[Pair], n: usize, path: &str) -> Result<CVec> {
    if pairs.len() != n {
        return Err(parse_err(
            path,
            format!("expected {} entries, got {}", n, pairs.len()),
        ));
    }
    let mut v = CVec::zeros(n);
    for (i, &p) in pairs.iter().enumerate() {
        v[i] = pair_to_c(p, &format!("{}[{}]", path, i))?;
    }
    Ok(v)
}

fn pairs_to_mat(rows: &[Vec<Pair>], n: usize, path: &str) -> Result<CMat> {
    if rows.len() != n {
        return Err(parse_err(
            path,
            format!("expected {} rows, got {}", n, rows.len()),
        ));
    }
    let mut m = CMat::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(parse_err(
                &format!("{}[{}]", path, i),
                format!("expected {} entries, got {}", n, row.len()),
            ));
        }
        for (j, &p) in row.iter().enumerate() {
            m[(i, j)] = pair_to_c(p, &format!("{}[{}][{}]", path, i, j))?;
        }
    }
    Ok(m)
}

impl QuantumGroupFile {
    pub fn from_quantum_group(qg: &QuantumGroup) -> QuantumGroupFile {
        let a = &qg.algebra;
        QuantumGroupFile {
            format: 1,
            dimension: a.dim,
            basis_labels: a.basis_labels.clone(),
            mult: tensor_to_sparse(&a.mult),
            unit: vec_to_pairs(&a.unit),
            star: mat_rows_to_pairs(&a.star),
            coproduct: tensor_to_sparse(&qg.hopf.coproduct),
            counit: vec_to_pairs(&qg.hopf.counit),
            antipode: mat_rows_to_pairs(&qg.hopf.antipode),
            coaction: None,
        }
    }

    pub fn to_quantum_group(&self) -> Result<QuantumGroup> {
        if self.format != 1 {
            return Err(parse_err(
                "format",
                format!("unsupported format version {}", self.format),
            ));
        }
        let n = self.dimension;
        if n == 0 {
            return Err(parse_err("dimension", "dimension must be positive"));
        }
        if self.basis_labels.len() != n {
            return Err(parse_err(
                "basis_labels",
                format!("expected {} labels, got {}", n, self.basis_labels.len()),
            ));
        }
        let mult = sparse_to_tensor(&self.mult, (n, n, n), "mult")?;
        let unit = pairs_to_vec(&self.unit, n, "unit")?;
        let star = pairs_to_mat(&self.star, n, "star")?;
        let algebra = FDAlgebra::new(self.basis_labels.clone(), mult, unit, star)?;
        let coproduct = sparse_to_tensor(&self.coproduct, (n, n, n), "coproduct")?;
        let counit = pairs_to_vec(&self.counit, n, "counit")?;
        let antipode = pairs_to_mat(&self.antipode, n, "antipode")?;
        let hopf = HopfStructure::new(coproduct, counit, antipode)?;
        Ok(QuantumGroup { algebra, hopf })
    }

    pub fn parse_str(s: &str) -> Result<QuantumGroupFile> {
        serde_json::from_str(s).map_err(|e| parse_err("$", e.to_string()))
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("serialization cannot fail")
        } else {
            serde_json::to_string(self).expect("serialization cannot fail")
        }
    }

    pub fn load(path: &std::path::Path) -> Result<QuantumGroupFile> {
        let text = std::fs::read_to_string(path)?;
        QuantumGroupFile::parse_str(&text)
    }

    pub fn save(&self, path: &std::path::Path, pretty: bool) -> Result<()> {
        std::fs::write(path, self.to_json(pretty) + "\n")?;
        Ok(())
    }
}

/// Coaction tensor from a block, checked against the two dimensions.
pub fn coaction_tensor(block: &CoactionBlock, dim_a: usize, dim_b: usize) -> Result<Tensor3> {
    sparse_to_tensor(&block.tensor, (dim_b, dim_a, dim_b), "coaction.tensor")
}

/// One named check in a report document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportCheck {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// The CLI's JSON output: per-check results plus any computed data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub tolerance: f64,
    pub seed: u64,
    pub checks: Vec<ReportCheck>,
    pub pass: bool,
    #[serde(skip_serializing_if = "serde_json::Value::is_null", default)]
    pub data: serde_json::Value,
}

impl ReportDocument {
    pub fn new(command: &str, tolerance: f64, seed: u64) -> ReportDocument {
        ReportDocument {
            command: command.to_string(),
            tolerance,
            seed,
            checks: Vec::new(),
            pass: true,
            data: serde_json::Value::Null,
        }
    }

    pub fn from_validation(
        command: &str,
        tolerance: f64,
        seed: u64,
        report: &crate::report::ValidationReport,
    ) -> ReportDocument {
        let mut doc = ReportDocument::new(command, tolerance, seed);
        for c in &report.checks {
            doc.pass &= c.pass;
            doc.checks.push(ReportCheck {
                name: c.name.clone(),
                residual: c.residual,
                tolerance: c.tol,
                pass: c.pass,
            });
        }
        doc
    }

    pub fn push(&mut self, name: &str, residual: f64, tolerance: f64) {
        let pass = residual <= tolerance;
        self.pass &= pass;
        self.checks.push(ReportCheck {
            name: name.to_string(),
            residual,
            tolerance,
            pass,
        });
    }

    pub fn push_flag(&mut self, name: &str, ok: bool) {
        self.pass &= ok;
        self.checks.push(ReportCheck {
            name: name.to_string(),
            residual: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass: ok,
        });
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("serialization cannot fail")
        } else {
            serde_json::to_string(self).expect("serialization cannot fail")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{bundled_examples, function_algebra, FiniteGroup};
    use crate::hopf::validate_hopf;

    #[test]
    fn round_trip_is_identity_on_generated_files() {
        for (name, qg) in bundled_examples() {
            let file = QuantumGroupFile::from_quantum_group(&qg);
            let text = file.to_json(true);
            let back = QuantumGroupFile::parse_str(&text).unwrap();
            assert_eq!(file, back, "{}", name);
            assert_eq!(text, back.to_json(true), "{}", name);
            let qg2 = back.to_quantum_group().unwrap();
            assert!(qg2.algebra.validate(1e-10).passed(), "{}", name);
            assert!(validate_hopf(&qg2.algebra, &qg2.hopf, 1e-10).passed(), "{}", name);
        }
    }

    #[test]
    fn out_of_range_index_names_the_json_path() {
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let mut file = QuantumGroupFile::from_quantum_group(&qg);
        file.mult.push((7, 0, 0, 1.0, 0.0));
        let err = file.to_quantum_group().unwrap_err();
        match err {
            CqgError::Parse { path, .. } => assert_eq!(path, format!("mult[{}]", file.mult.len() - 1)),
            other => panic!("unexpected error {:?}", other),
        }
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(
            QuantumGroupFile::parse_str("{ not json"),
            Err(CqgError::Parse { .. })
        ));
    }

    #[test]
    fn non_finite_entry_rejected() {
        let qg = function_algebra(&FiniteGroup::cyclic(2));
        let mut file = QuantumGroupFile::from_quantum_group(&qg);
        file.unit[0] = (f64::NAN, 0.0);
        assert!(matches!(
            file.to_quantum_group(),
            Err(CqgError::Parse { .. })
        ));
    }

    #[test]
    fn report_document_tracks_pass_state() {
        let mut doc = ReportDocument::new("check", 1e-9, 0);
        doc.push("good", 1e-12, 1e-9);
        assert!(doc.pass);
        doc.push("bad", 1e-3, 1e-9);
        assert!(!doc.pass);
        let text = doc.to_json(false);
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.checks.len(), 2);
        assert!(!back.pass);
    }
}
