use std::io::Write;
use std::path::Path;
use std::time::Instant;

use hsbasis::basis::{enumerate_basis, Family};
use hsbasis::dense::{number_operator_dense, poly_to_dense, DenseOperator};
use hsbasis::hamiltonian::{
    bound_report, builtin_instance, read_fcidump, SubsetSpec, TwoBodyIntegrals,
};
use hsbasis::projection::{
    pi1_identity_rhs, number_commutator_deviation, one_rdm, KBodyProjector, ProjectionReport,
    NUMBER_PRESERVING_TOL,
};
use hsbasis::trace::TripleForm;
use hsbasis::verify::{run_verify, Fault, Level};
use hsbasis::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, EXIT_OK, EXIT_VERIFY};
use crate::io::{self, BasisLine, InputFile, OperatorFile};
use crate::{
    BasisArgs, BoundArgs, Command, FaultArg, GramArgs, LevelArg, Mode, ProjectArgs, RdmArgs,
    VerifyArgs,
};

/// Largest `n` for dense Gram checks.
pub const GRAM_DENSE_MAX_N: usize = 3;
/// Largest `n` for exact Gram checks.
pub const GRAM_EXACT_MAX_N: usize = 5;
/// Gram tolerance in dense mode.
pub const GRAM_TOL: f64 = 1e-10;

type Out<'a> = &'a mut dyn Write;

fn emit(out: Out, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|e| CliError::input(format!("cannot write output: {e}")))
}

fn emit_or_write(out: Out, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => io::write_text(p, &format!("{text}\n")),
        None => emit(out, text),
    }
}

pub fn dispatch(cmd: &Command, out: Out) -> Result<i32, CliError> {
    match cmd {
        Command::Basis(a) => cmd_basis(a, out),
        Command::Gram(a) => cmd_gram(a, out),
        Command::Project(a) => cmd_project(a, out),
        Command::Rdm(a) => cmd_rdm(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Bound(a) => cmd_bound(a, out),
    }
}

pub fn cmd_basis(a: &BasisArgs, out: Out) -> Result<i32, CliError> {
    let basis = enumerate_basis(a.family.into(), a.n, a.k)?;
    let mut text = String::new();
    for e in &basis {
        text.push_str(&io::to_json(&BasisLine::from_element(e)));
        text.push('\n');
    }
    match &a.out {
        Some(p) => io::write_text(p, &text)?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::input(format!("cannot write output: {e}")))?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct GramReport {
    n: usize,
    family: String,
    k: Option<usize>,
    mode: &'static str,
    elements: usize,
    max_offdiag: f64,
    max_diag_deviation: f64,
    /// Exact mode: entries whose integer value differs from `δ·2^h`.
    exact_mismatches: Option<u64>,
    passed: bool,
}

pub fn cmd_gram(a: &GramArgs, out: Out) -> Result<i32, CliError> {
    let family: Family = a.family.into();
    let cap = match a.mode {
        Mode::Dense => GRAM_DENSE_MAX_N,
        Mode::Exact => GRAM_EXACT_MAX_N,
    };
    if a.n > cap {
        return Err(CliError::input(format!(
            "gram in {:?} mode supports n <= {cap}, got {}",
            a.mode, a.n
        )));
    }
    let basis = enumerate_basis(family, a.n, a.k)?;
    let real = family == Family::BReal;
    let (max_off, max_diag, mismatches) = match a.mode {
        Mode::Exact => {
            let forms: Vec<TripleForm<i64>> =
                basis.iter().map(|e| TripleForm::new(&e.raw)).collect();
            let hs: Vec<u32> = basis
                .iter()
                .map(|e| e.normalization.half_exponent)
                .collect();
            let rows: Vec<(f64, f64, u64)> = forms
                .par_iter()
                .enumerate()
                .map(|(x, fx)| {
                    let mut row = (0.0f64, 0.0f64, 0u64);
                    for (y, fy) in forms.iter().enumerate() {
                        let mut g = fx.inner(fy).expect("same n");
                        if real {
                            g.im = 0;
                        }
                        let expect = if x == y { 1i64 << hs[x] } else { 0 };
                        if g != Complex::new(expect, 0) {
                            row.2 += 1;
                        }
                        let scale = 2f64.powf(-((hs[x] + hs[y]) as f64) / 2.0);
                        let dev = ((g.re - expect) as f64).hypot(g.im as f64) * scale;
                        if x == y {
                            row.1 = row.1.max(dev);
                        } else {
                            row.0 = row.0.max(dev);
                        }
                    }
                    row
                })
                .collect();
            fold_rows(&rows, true)
        }
        Mode::Dense => {
            let mats: Vec<DenseOperator<f64>> = basis
                .iter()
                .map(|e| e.to_dense())
                .collect::<hsbasis::Result<_>>()?;
            let rows: Vec<(f64, f64, u64)> = mats
                .par_iter()
                .enumerate()
                .map(|(x, mx)| {
                    let mut row = (0.0f64, 0.0f64, 0u64);
                    for (y, my) in mats.iter().enumerate() {
                        let mut g = mx.hs_inner(my).expect("same n");
                        if real {
                            g.im = 0.0;
                        }
                        if x == y {
                            row.1 = row.1.max((g - Complex::new(1.0, 0.0)).norm());
                        } else {
                            row.0 = row.0.max(g.norm());
                        }
                    }
                    row
                })
                .collect();
            fold_rows(&rows, false)
        }
    };
    let passed = match mismatches {
        Some(m) => m == 0,
        None => max_off <= GRAM_TOL && max_diag <= GRAM_TOL,
    };
    let report = GramReport {
        n: a.n,
        family: family.tag().into(),
        k: a.k,
        mode: match a.mode {
            Mode::Exact => "exact",
            Mode::Dense => "dense",
        },
        elements: basis.len(),
        max_offdiag: max_off,
        max_diag_deviation: max_diag,
        exact_mismatches: mismatches,
        passed,
    };
    emit_or_write(out, a.out.as_deref(), &io::to_json_pretty(&report))?;
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY })
}

fn fold_rows(rows: &[(f64, f64, u64)], exact: bool) -> (f64, f64, Option<u64>) {
    let (o, d, m) = rows.iter().fold((0.0f64, 0.0f64, 0u64), |acc, r| {
        (acc.0.max(r.0), acc.1.max(r.1), acc.2 + r.2)
    });
    (o, d, exact.then_some(m))
}

#[derive(Serialize)]
struct ProjectOutput<'a> {
    report: &'a ProjectionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<OperatorFile>,
}

pub fn cmd_project(a: &ProjectArgs, out: Out) -> Result<i32, CliError> {
    let input = io::read_input(&a.input)?;
    let n = match &input {
        InputFile::Operator(p) => p.n(),
        InputFile::Density(r) => r.n(),
    };
    let proj = KBodyProjector::new(n, a.k, a.family.into())?;
    let result = match &input {
        InputFile::Operator(p) => proj.project_poly(p)?,
        InputFile::Density(r) => proj.project_dense(r.op())?,
    };
    let file = OperatorFile::from_poly(&result.output);
    let embedded = match &a.out {
        Some(p) => {
            io::write_text(p, &format!("{}\n", io::to_json_pretty(&file)))?;
            None
        }
        None => Some(file),
    };
    emit(
        out,
        &io::to_json_pretty(&ProjectOutput {
            report: &result.report,
            output: embedded,
        }),
    )?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RdmReport {
    n: usize,
    /// Row-major `γ_{ij} = tr(ρ c*_i c_j)` as `[re, im]`.
    gamma: Vec<[f64; 2]>,
    trace: f64,
    particle_number: f64,
    min_eigenvalue: f64,
    max_eigenvalue: f64,
    number_preserving: bool,
    /// `max |2ⁿ π₁(ρ) − rhs|`, present when `ρ` is number-preserving.
    pi1_identity_deviation: Option<f64>,
}

pub fn cmd_rdm(a: &RdmArgs, out: Out) -> Result<i32, CliError> {
    let InputFile::Density(rho) = io::read_input(&a.input)? else {
        return Err(CliError::input("rdm requires a density file"));
    };
    let n = rho.n();
    let gamma = one_rdm(&rho)?;
    let num = number_operator_dense::<f64>(n)?;
    let particle_number = rho.op().matmul(&num)?.trace().re;
    let number_preserving = number_commutator_deviation(rho.op())? <= NUMBER_PRESERVING_TOL;
    let deviation = if number_preserving {
        let lhs = poly_to_dense(
            &KBodyProjector::new(n, 1, Family::B)?
                .project_dense(rho.op())?
                .output,
        )?;
        let rhs = pi1_identity_rhs(&rho)?;
        Some(lhs.max_abs_diff(&rhs) * (1u64 << n) as f64)
    } else {
        None
    };
    let report = RdmReport {
        n,
        gamma: gamma.entries().iter().map(|c| [c.re, c.im]).collect(),
        trace: gamma.trace().re,
        particle_number,
        min_eigenvalue: gamma.min_eigenvalue(),
        max_eigenvalue: gamma.max_eigenvalue(),
        number_preserving,
        pi1_identity_deviation: deviation,
    };
    emit_or_write(out, a.out.as_deref(), &io::to_json_pretty(&report))?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(a: &VerifyArgs, out: Out) -> Result<i32, CliError> {
    let level = match a.level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let fault = match a.fault {
        Some(FaultArg::MultiSign) => Fault::MultiSign,
        None => Fault::None,
    };
    let start = Instant::now();
    let results = run_verify(level, a.seed, fault);
    let mut failed = 0;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        if !r.passed {
            failed += 1;
        }
        emit(
            out,
            &format!(
                "{status} {:<26} checks={:<8} {}",
                r.name, r.checks, r.detail
            ),
        )?;
        eprintln!("{:<26} {:>9.3} s", r.name, r.seconds);
    }
    eprintln!("{:<26} {:>9.3} s", "total", start.elapsed().as_secs_f64());
    emit(
        out,
        &format!(
            "{} of {} suites passed (seed {})",
            results.len() - failed,
            results.len(),
            a.seed
        ),
    )?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY })
}

fn read_subset_file(path: &Path) -> Result<SubsetSpec, CliError> {
    let text = io::read_text(path)?;
    let ids = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect();
    Ok(SubsetSpec::Ids(ids))
}

pub fn cmd_bound(a: &BoundArgs, out: Out) -> Result<i32, CliError> {
    let (name, ints): (String, TwoBodyIntegrals) = match (&a.fcidump, &a.instance) {
        (Some(p), _) => (p.display().to_string(), read_fcidump(p)?),
        (None, Some(name)) => (name.clone(), builtin_instance(name)?),
        (None, None) => return Err(CliError::input("bound needs --fcidump or --instance")),
    };
    let spec = match &a.subset_file {
        Some(p) => read_subset_file(p)?,
        None => SubsetSpec::parse_named(&a.subset)?,
    };
    let report = bound_report(&name, &ints, &spec)?;
    emit_or_write(out, a.out.as_deref(), &io::to_json_pretty(&report))?;
    Ok(EXIT_OK)
}
