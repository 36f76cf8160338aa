//! Command-line front end: validation, Haar states, multiplicative
//! unitaries, Fourier/convolution, K0 and the box product, TFAE checks,
//! coactions, and Hopf-ideal exact sequences on JSON-described quantum
//! groups.
//!
//! Exit codes: 0 = all checks passed, 1 = a mathematical check failed,
//! 2 = input/parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cqg_core::algebra::AlgebraElement;
use cqg_core::coaction::{self, Coaction};
use cqg_core::error::CqgError;
use cqg_core::generators::{function_algebra, group_algebra, FiniteGroup};
use cqg_core::gns::{self, GNSSpace};
use cqg_core::hopf::{haar_state, validate_hopf, QuantumGroup};
use cqg_core::json::{coaction_tensor, QuantumGroupFile, ReportDocument};
use cqg_core::linalg::{self, CVec};
use cqg_core::modules::{
    self, MatrixElement, ModuleMap, ProjectionModule,
};
use cqg_core::transform::{self, Direction};
use cqg_core::wedderburn::{self, BlockDecomposition};
use cqg_core::{LinearFunctional, Result};

#[derive(Parser)]
#[command(name = "cqg", about = "Finite-dimensional C*-algebraic quantum groups", version)]
struct Cli {
    /// Numerical tolerance for all residual checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for all randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit the report as compact JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Emit the report as pretty-printed JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the algebra and Hopf axioms.
    Check { file: PathBuf },
    /// Solve for the Haar state and report its flags.
    Haar { file: PathBuf },
    /// Build the multiplicative unitaries V and W on the Haar GNS space.
    Munitary {
        file: PathBuf,
        /// Also check the pentagon equation.
        #[arg(long)]
        pentagon: bool,
    },
    /// Fourier pairing matrix and its inverse.
    Fourier { file: PathBuf },
    /// Convolution: associativity and the Fourier homomorphism property.
    Convolve { file: PathBuf },
    /// Block decomposition and K0 rank vectors.
    K0 { file: PathBuf },
    /// The box-product ring table on K0 generator classes.
    Box { file: PathBuf },
    /// Seeded module maps through the four-condition equivalence.
    Tfae {
        file: PathBuf,
        /// Number of seeded module maps to test.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Coaction checks; the file must carry a "coaction" block.
    Coact {
        #[command(subcommand)]
        what: CoactCmd,
    },
    /// Hopf ideal of a normal subalgebra and the K0 exact sequence.
    Ideal {
        file: PathBuf,
        /// JSON file with the subalgebra basis: an array of columns of
        /// [re, im] pairs.
        #[arg(long)]
        sub: PathBuf,
    },
    /// Emit a built-in example as a quantum-group file.
    Generate {
        kind: Kind,
        /// Group name: c1..c12, s3, or d4.
        group: String,
        /// Write to a file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CoactCmd {
    /// Validate the coaction axioms.
    Check { file: PathBuf },
    /// Solve for the invariant state.
    State { file: PathBuf },
    /// Build W, check its envelope, and act on generator classes.
    Act { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    FunctionAlgebra,
    GroupAlgebra,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            // generate writes the file itself; no report on top of it
            if !matches!(cli.cmd, Cmd::Generate { .. }) {
                emit(&cli, &doc);
            }
            if doc.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                CqgError::Parse { .. } | CqgError::Io(_) | CqgError::UnsupportedGroup(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}

fn emit(cli: &Cli, doc: &ReportDocument) {
    if cli.pretty {
        println!("{}", doc.to_json(true));
    } else if cli.json {
        println!("{}", doc.to_json(false));
    } else {
        for c in &doc.checks {
            println!(
                "{} {:<40} residual {:.3e}  tol {:.1e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.residual,
                c.tolerance
            );
        }
        println!("{}", if doc.pass { "ok" } else { "FAILED" });
    }
}

fn load(path: &Path) -> Result<(QuantumGroupFile, QuantumGroup)> {
    let file = QuantumGroupFile::load(path)?;
    let qg = file.to_quantum_group()?;
    Ok((file, qg))
}

struct Ctx {
    tau: LinearFunctional,
    h: GNSSpace,
    dec: BlockDecomposition,
}

fn ctx(qg: &QuantumGroup, tol: f64, seed: u64) -> Result<Ctx> {
    let tau = haar_state(&qg.algebra, &qg.hopf, tol)?;
    let h = gns::gns(&qg.algebra, &tau, tol)?;
    let dec = wedderburn::decompose(&qg.algebra, seed, tol)?;
    Ok(Ctx { tau, h, dec })
}

fn covector_json(v: &CVec) -> serde_json::Value {
    serde_json::json!(v.iter().map(|c| (c.re, c.im)).collect::<Vec<_>>())
}

fn run(cli: &Cli) -> Result<ReportDocument> {
    let tol = cli.tol;
    let seed = cli.seed;
    match &cli.cmd {
        Cmd::Check { file } => {
            let (_, qg) = load(file)?;
            let mut report = qg.algebra.validate(tol);
            report.merge(validate_hopf(&qg.algebra, &qg.hopf, tol));
            let mut doc = ReportDocument::from_validation("check", tol, seed, &report);
            doc.data = serde_json::json!({ "dimension": qg.algebra.dim });
            Ok(doc)
        }
        Cmd::Haar { file } => {
            let (_, qg) = load(file)?;
            let tau = haar_state(&qg.algebra, &qg.hopf, tol)?;
            let flags = qg.algebra.check_functional(&tau, tol);
            let mut doc = ReportDocument::new("haar", tol, seed);
            doc.push_flag("haar_positive", flags.positive);
            doc.push_flag("haar_faithful", flags.faithful);
            doc.push_flag("haar_tracial", flags.tracial);
            doc.push(
                "haar_normalized",
                (tau.apply_coeffs(&qg.algebra.unit) - Complex64::new(1.0, 0.0)).norm(),
                tol.max(1e-12),
            );
            doc.data = serde_json::json!({
                "covector": covector_json(&tau.covector),
                "tracial": flags.tracial,
            });
            Ok(doc)
        }
        Cmd::Munitary { file, pentagon } => {
            let (_, qg) = load(file)?;
            let c = ctx(&qg, tol, seed)?;
            let v = transform::build_v(&qg.algebra, &qg.hopf, &c.h)?;
            let w = transform::build_w(&qg.algebra, &qg.hopf, &c.h)?;
            let mut doc = ReportDocument::new("munitary", tol, seed);
            doc.push("v_unitarity", v.unitarity_residual(), tol);
            doc.push("w_unitarity", w.unitarity_residual(), tol);
            doc.push(
                "coproduct_reconstruction",
                transform::coproduct_reconstruction_residual(&v, &qg.hopf, &c.h),
                tol,
            );
            if *pentagon {
                doc.push("v_pentagon", v.pentagon_residual(), tol);
                doc.push("w_pentagon", w.pentagon_residual(), tol);
            }
            Ok(doc)
        }
        Cmd::Fourier { file } => {
            let (_, qg) = load(file)?;
            let tau = haar_state(&qg.algebra, &qg.hopf, tol)?;
            let fc = transform::fourier_context(&qg.algebra, &tau)?;
            let mut doc = ReportDocument::new("fourier", tol, seed);
            doc.push(
                "inverse_residual",
                linalg::identity_residual(&(&fc.forward * &fc.inverse)),
                tol,
            );
            let n = qg.algebra.dim;
            let mut round: f64 = 0.0;
            for i in 0..n {
                let e = AlgebraElement::basis(n, i).coeffs;
                let back = transform::fourier(
                    &fc,
                    &transform::fourier(&fc, &e, Direction::Forward),
                    Direction::Inverse,
                );
                round = round.max(linalg::max_abs_vec(&(back - e)));
            }
            doc.push("round_trip", round, tol);
            Ok(doc)
        }
        Cmd::Convolve { file } => {
            let (_, qg) = load(file)?;
            let a = &qg.algebra;
            let tau = haar_state(a, &qg.hopf, tol)?;
            let n = a.dim;
            let mut table: Vec<Vec<CVec>> = Vec::with_capacity(n);
            for i in 0..n {
                let ei = AlgebraElement::basis(n, i).coeffs;
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    let ej = AlgebraElement::basis(n, j).coeffs;
                    row.push(transform::convolve(a, &qg.hopf, &tau, &ei, &ej)?);
                }
                table.push(row);
            }
            let conv_vec = |x: &CVec, k: usize| -> CVec {
                let mut acc = CVec::zeros(n);
                for l in 0..n {
                    acc += &table[l][k] * x[l];
                }
                acc
            };
            let mut assoc: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        // (e_i * e_j) * e_k vs e_i * (e_j * e_k) by linearity
                        let lhs = conv_vec(&table[i][j], k);
                        let mut rhs = CVec::zeros(n);
                        for l in 0..n {
                            rhs += &table[i][l] * table[j][k][l];
                        }
                        assoc = assoc.max(linalg::max_abs_vec(&(lhs - rhs)));
                    }
                }
            }
            let fc = transform::fourier_context(a, &tau)?;
            let mut homo: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let f_conv = transform::fourier(&fc, &table[i][j], Direction::Forward);
                    let fi = transform::fourier(
                        &fc,
                        &AlgebraElement::basis(n, i).coeffs,
                        Direction::Forward,
                    );
                    let fj = transform::fourier(
                        &fc,
                        &AlgebraElement::basis(n, j).coeffs,
                        Direction::Forward,
                    );
                    // dual product of the transforms
                    let mut prod = CVec::zeros(n);
                    for (k, p, q, v) in qg.hopf.coproduct.iter_nonzero() {
                        prod[k] += v * fi[p] * fj[q];
                    }
                    homo = homo.max(linalg::max_abs_vec(&(f_conv - prod)));
                }
            }
            let mut doc = ReportDocument::new("convolve", tol, seed);
            doc.push("associativity", assoc, tol.max(1e-9));
            doc.push("fourier_homomorphism", homo, tol.max(1e-9));
            Ok(doc)
        }
        Cmd::K0 { file } => {
            let (_, qg) = load(file)?;
            let a = &qg.algebra;
            let dec = wedderburn::decompose(a, seed, tol)?;
            let unit = ProjectionModule::from_element(a, &a.unit, tol.max(1e-8))?;
            let unit_class = modules::k0_class(a, &dec, &unit, tol.max(1e-7))?;
            let mut doc = ReportDocument::new("k0", tol, seed);
            doc.push_flag(
                "unit_class_is_block_vector",
                unit_class.0 == dec.blocks.iter().map(|b| *b as i64).collect::<Vec<_>>(),
            );
            doc.data = serde_json::json!({
                "blocks": dec.blocks,
                "unit_class": unit_class.0,
            });
            Ok(doc)
        }
        Cmd::Box { file } => {
            let (_, qg) = load(file)?;
            let a = &qg.algebra;
            let c = ctx(&qg, tol, seed)?;
            let table = modules::k0_ring_table(a, &qg.hopf, &c.h, &c.dec)?;
            let k = c.dec.blocks.len();
            let mut assoc = true;
            for i in 0..k {
                for j in 0..k {
                    for l in 0..k {
                        let e = |t: usize| {
                            modules::K0Class((0..k).map(|s| (s == t) as i64).collect())
                        };
                        let lhs = modules::class_product(&table, &table[i][j], &e(l));
                        let rhs = modules::class_product(&table, &e(i), &table[j][l]);
                        assoc &= lhs == rhs;
                    }
                }
            }
            let mut wd = true;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..5 {
                let p = modules::random_matrix_projection(a, &c.dec, 2, &mut rng)?;
                let u = modules::random_matrix_unitary(a, &c.dec, 2, &mut rng)?;
                let conj = u.mul(a, &p.proj).mul(a, &u.star(a));
                let p2 = ProjectionModule::new(a, conj, tol.max(1e-7))?;
                let q = modules::random_matrix_projection(a, &c.dec, 1, &mut rng)?;
                wd &= modules::well_definedness_check(a, &qg.hopf, &c.h, &c.dec, &p, &p2, &q)?;
            }
            let mut doc = ReportDocument::new("box", tol, seed);
            doc.push_flag("table_associative", assoc);
            doc.push_flag("well_defined_on_classes", wd);
            doc.data = serde_json::json!({
                "blocks": c.dec.blocks,
                "table": table
                    .iter()
                    .map(|row| row.iter().map(|c| c.0.clone()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            Ok(doc)
        }
        Cmd::Tfae { file, count } => {
            let (_, qg) = load(file)?;
            let a = &qg.algebra;
            let c = ctx(&qg, tol, seed)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut agree = true;
            let mut unitary_pass = true;
            let mut scaled_fails = true;
            for it in 0..*count {
                let p = modules::random_matrix_projection(a, &c.dec, 2, &mut rng)?;
                let u = modules::random_matrix_unitary(a, &c.dec, 2, &mut rng)?;
                let q = ProjectionModule::new(
                    a,
                    u.mul(a, &p.proj).mul(a, &u.star(a)),
                    tol.max(1e-7),
                )?;
                let map = ModuleMap {
                    domain: p.clone(),
                    codomain: q,
                    map: u.mul(a, &p.proj),
                };
                let rep = modules::tfae_check(a, &c.dec, &c.tau, &map, tol.max(1e-6), it as u64)?;
                agree &= rep.agree();
                unitary_pass &= rep.all();
                let mut twice = map.map.clone();
                for e in &mut twice.entries {
                    *e = e.clone().scale(2.0);
                }
                let scaled = ModuleMap {
                    domain: p.clone(),
                    codomain: map.codomain.clone(),
                    map: twice,
                };
                let rep2 =
                    modules::tfae_check(a, &c.dec, &c.tau, &scaled, tol.max(1e-6), it as u64)?;
                agree &= rep2.agree();
                scaled_fails &= !rep2.all();
            }
            let mut doc = ReportDocument::new("tfae", tol, seed);
            doc.push_flag("conditions_agree", agree);
            doc.push_flag("unitary_maps_pass", unitary_pass);
            doc.push_flag("scaled_maps_fail", scaled_fails);
            Ok(doc)
        }
        Cmd::Coact { what } => run_coact(what, tol, seed),
        Cmd::Ideal { file, sub } => {
            let (_, qg) = load(file)?;
            let a = &qg.algebra;
            let text = std::fs::read_to_string(sub)?;
            let cols: Vec<Vec<(f64, f64)>> =
                serde_json::from_str(&text).map_err(|e| CqgError::Parse {
                    path: "$".into(),
                    message: e.to_string(),
                })?;
            let mut span = cqg_core::linalg::CMat::zeros(a.dim, cols.len());
            for (j, col) in cols.iter().enumerate() {
                if col.len() != a.dim {
                    return Err(CqgError::Parse {
                        path: format!("[{}]", j),
                        message: format!("expected {} entries, got {}", a.dim, col.len()),
                    });
                }
                for (i, &(re, im)) in col.iter().enumerate() {
                    span[(i, j)] = Complex64::new(re, im);
                }
            }
            let sub = cqg_core::ideal::check_subalgebra(a, &qg.hopf, &span, tol)?;
            let mut doc = ReportDocument::new("ideal", tol, seed);
            doc.push_flag("unital", sub.unital);
            doc.push_flag("star_closed", sub.star_closed);
            doc.push_flag("coproduct_closed", sub.coproduct_closed);
            doc.push_flag("antipode_stable", sub.antipode_stable);
            doc.push_flag("normal", sub.normal());
            if !sub.normal() {
                return Ok(doc);
            }
            let data = cqg_core::ideal::hopf_ideal(a, &qg.hopf, &sub, tol)?;
            doc.push_flag(
                "dimension_additivity",
                data.ideal_dim() + data.quotient_dim() == a.dim,
            );
            doc.push_flag(
                "quotient_valid",
                data.quotient.algebra.validate(tol.max(1e-8)).passed()
                    && validate_hopf(
                        &data.quotient.algebra,
                        &data.quotient.hopf,
                        tol.max(1e-8),
                    )
                    .passed(),
            );
            let rep = cqg_core::ideal::k0_exactness(a, &qg.hopf, &data, tol)?;
            doc.push_flag("iota_injective", rep.iota_injective);
            doc.push_flag("composite_zero", rep.composite_zero);
            doc.push_flag("kernel_is_image", rep.kernel_is_image);
            doc.push_flag("pi_surjective", rep.pi_surjective);
            doc.push_flag("pi_submultiplicative", rep.pi_submultiplicative);
            doc.data = serde_json::json!({
                "ideal_dim": data.ideal_dim(),
                "quotient_dim": data.quotient_dim(),
                "exactness": rep,
            });
            Ok(doc)
        }
        Cmd::Generate {
            kind,
            group,
            output,
        } => {
            let g = FiniteGroup::by_name(group)?;
            let qg = match kind {
                Kind::FunctionAlgebra => function_algebra(&g),
                Kind::GroupAlgebra => group_algebra(&g),
            };
            let file = QuantumGroupFile::from_quantum_group(&qg);
            let pretty = !cli.json;
            match output {
                Some(path) => file.save(path, pretty)?,
                None => println!("{}", file.to_json(pretty)),
            }
            Ok(ReportDocument::new("generate", tol, seed))
        }
    }
}

fn load_coaction(path: &Path, tol: f64) -> Result<(QuantumGroup, QuantumGroup, Coaction)> {
    let (file, qg_b) = load(path)?;
    let block = file.coaction.as_ref().ok_or_else(|| CqgError::Parse {
        path: "coaction".into(),
        message: "file has no coaction block".into(),
    })?;
    let a_path = path
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .join(&block.algebra_file);
    let (_, qg_a) = load(&a_path)?;
    let tensor = coaction_tensor(block, qg_a.algebra.dim, qg_b.algebra.dim)?;
    let delta = Coaction::new(tensor, qg_a.algebra.dim, qg_b.algebra.dim)?;
    let _ = tol;
    Ok((qg_a, qg_b, delta))
}

fn run_coact(what: &CoactCmd, tol: f64, seed: u64) -> Result<ReportDocument> {
    match what {
        CoactCmd::Check { file } => {
            let (qg_a, qg_b, delta) = load_coaction(file, tol)?;
            let report = coaction::validate_coaction(
                &qg_a.algebra,
                &qg_a.hopf,
                &qg_b.algebra,
                &delta,
                tol,
            );
            Ok(ReportDocument::from_validation("coact check", tol, seed, &report))
        }
        CoactCmd::State { file } => {
            let (qg_a, qg_b, delta) = load_coaction(file, tol)?;
            let eta = coaction::invariant_state(&qg_a.algebra, &qg_b.algebra, &delta, tol)?;
            let flags = qg_b.algebra.check_functional(&eta, tol);
            let mut doc = ReportDocument::new("coact state", tol, seed);
            doc.push_flag("invariant_state_positive", flags.positive);
            doc.push_flag("invariant_state_faithful", flags.faithful);
            doc.data = serde_json::json!({ "covector": covector_json(&eta.covector) });
            Ok(doc)
        }
        CoactCmd::Act { file } => {
            let (qg_a, qg_b, delta) = load_coaction(file, tol)?;
            let a = &qg_a.algebra;
            let b = &qg_b.algebra;
            let ca = ctx(&qg_a, tol, seed)?;
            let eta = coaction::invariant_state(a, b, &delta, tol)?;
            let h_b = gns::gns(b, &eta, tol)?;
            let dec_b = wedderburn::decompose(b, seed, tol)?;
            let w = coaction::build_coaction_w(a, b, &delta, &eta, &ca.tau, tol)?;
            let mut doc = ReportDocument::new("coact act", tol, seed);
            doc.push("skew_residual", w.skew_residual, tol.max(1e-8));
            doc.push("isometry_residual", w.isometry_residual, tol.max(1e-8));
            doc.push(
                "envelope_unitarity",
                linalg::unitarity_residual(&w.envelope),
                tol.max(1e-8),
            );
            let mut classes = Vec::new();
            for p in &ca.dec.minimal_projections {
                let pm = ProjectionModule::new(
                    a,
                    MatrixElement::from_entries(1, a.dim, vec![p.coeffs.clone()])?,
                    tol.max(1e-7),
                )?;
                let mut row = Vec::new();
                for q in &dec_b.minimal_projections {
                    let qm = ProjectionModule::new(
                        b,
                        MatrixElement::from_entries(1, b.dim, vec![q.coeffs.clone()])?,
                        tol.max(1e-7),
                    )?;
                    let cls =
                        coaction::semiring_action(a, b, &w, &ca.h, &h_b, &dec_b, &pm, &qm)?;
                    row.push(cls.0);
                }
                classes.push(row);
            }
            doc.data = serde_json::json!({
                "blocks_a": ca.dec.blocks,
                "blocks_b": dec_b.blocks,
                "action_classes": classes,
            });
            Ok(doc)
        }
    }
}
