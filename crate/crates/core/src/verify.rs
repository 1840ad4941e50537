//! Self-verification suites: every combinatorial route checked against the
//! dense realization or an identity it must satisfy.
//!
//! A suite reports the first violated check; the run continues with the
//! remaining suites. Randomized suites draw from one seed.

use std::time::Instant;

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basis::{
    b_indices, basis_intersection_check, bk_indices, breal_indices, build_majorana, dim_kbody,
    enumerate_basis, expected_intersection_ids, majorana_gram_algebraic, majorana_indices,
    BasisIndex, Family, MajoranaSet,
};
use crate::dense::{
    eigenvalues_square, hs_inner_monomial_dense, monomial_matrix, poly_to_dense, DenseOperator,
};
use crate::error::Result;
use crate::fock::{multi_sign, OrbitalSet};
use crate::hamiltonian::{
    bound_report, build_hamiltonian, builtin_instance, ground_energy, random_repulsive_integrals,
    SubsetSpec, TwoBodyIntegrals, BOUND_TOL,
};
use crate::projection::{pi1_identity_rhs, number_operator_trace, KBodyProjector};
use crate::random::{random_dense, random_hermitian_matrix, random_number_preserving_density};
use crate::trace::{hs_inner_disjoint, hs_inner_general_with, SignFn};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

/// Deliberate corruption for exercising the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Multi-sign replaced by its absolute value.
    MultiSign,
}

fn abs_multi_sign(tops: &[OrbitalSet], bottoms: &[OrbitalSet]) -> i32 {
    multi_sign(tops, bottoms).abs()
}

impl Fault {
    pub fn sign_fn(self) -> SignFn {
        match self {
            Fault::None => multi_sign,
            Fault::MultiSign => abs_multi_sign,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub checks: u64,
    pub detail: String,
    pub seconds: f64,
}

type Outcome = std::result::Result<(u64, String), String>;

fn run(name: &'static str, f: impl FnOnce() -> Outcome) -> SuiteResult {
    let start = Instant::now();
    let (passed, checks, detail) = match f() {
        Ok((checks, detail)) => (true, checks, detail),
        Err(detail) => (false, 0, detail),
    };
    SuiteResult {
        name,
        passed,
        checks,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn trace_general(n: usize, sign: SignFn) -> Outcome {
    let mats: Vec<DenseOperator<i64>> = lift(
        (0..1u32 << (2 * n))
            .map(|x| {
                monomial_matrix(
                    OrbitalSet::from_bits(x >> n),
                    OrbitalSet::from_bits(x & ((1 << n) - 1)),
                    n,
                )
            })
            .collect(),
    )?;
    let mut checks = 0;
    for a in OrbitalSet::all(n) {
        for b in OrbitalSet::all(n) {
            for (x, m) in mats.iter().enumerate() {
                let c = OrbitalSet::from_bits(x as u32 >> n);
                let d = OrbitalSet::from_bits(x as u32 & ((1 << n) - 1));
                let formula = hs_inner_general_with(sign, a, b, c, d, n);
                let dense = lift(hs_inner_monomial_dense(a, b, m))?;
                checks += 1;
                if dense != Complex::new(formula, 0) {
                    return Err(format!(
                        "<c({a},{b}), c({c},{d})>: formula {formula}, dense {dense}"
                    ));
                }
            }
        }
    }
    Ok((checks, format!("n={n}, all quadruples exact")))
}

fn disjoint_triples(n: usize) -> Vec<(OrbitalSet, OrbitalSet, OrbitalSet)> {
    b_indices(n)
        .unwrap_or_default()
        .into_iter()
        .filter_map(|ix| match ix {
            BasisIndex::B { k, i, j } => Some((k, i, j)),
            _ => None,
        })
        .collect()
}

fn occupied_monomial(
    k: OrbitalSet,
    a: OrbitalSet,
    b: OrbitalSet,
    n: usize,
) -> Result<DenseOperator<i64>> {
    Ok(&monomial_matrix(k, k, n)? * &monomial_matrix(a, b, n)?)
}

fn trace_disjoint(n: usize) -> Outcome {
    let triples = disjoint_triples(n);
    let mats: Vec<DenseOperator<i64>> = lift(
        triples
            .iter()
            .map(|&(k, a, b)| occupied_monomial(k, a, b, n))
            .collect(),
    )?;
    let mut checks = 0;
    for (x, &(k, a, b)) in triples.iter().enumerate() {
        for (y, &(l, c, d)) in triples.iter().enumerate() {
            let formula = lift(hs_inner_disjoint(k, a, b, l, c, d, n))? as i64;
            let dense = lift(mats[x].hs_inner(&mats[y]))?;
            checks += 1;
            if dense != Complex::new(formula, 0) {
                return Err(format!(
                    "<n{k} c({a},{b}), n{l} c({c},{d})>: formula {formula}, dense {dense}"
                ));
            }
        }
    }
    Ok((checks, format!("n={n}, {} triples", triples.len())))
}

/// `⟨b_K c_{IJ}, b_L c_{CD}⟩` from the disjoint trace formula with `b_K` expanded.
fn gram_b_exact(n: usize) -> Outcome {
    let triples = disjoint_triples(n);
    let mut checks = 0;
    for &(k, i, j) in &triples {
        for &(l, c, d) in &triples {
            checks += 1;
            if (i, j) != (c, d) {
                continue;
            }
            let mut sum: i64 = 0;
            for s in k.subsets() {
                for t in l.subsets() {
                    let w = (-2i64).pow(s.len() + t.len());
                    sum += w * lift(hs_inner_disjoint(s, i, j, t, c, d, n))? as i64;
                }
            }
            let expect = if k == l {
                1i64 << (n as u32 - (i | j).len())
            } else {
                0
            };
            if sum != expect {
                return Err(format!(
                    "raw Gram entry ({k},{i},{j})x({l},{c},{d}) = {sum}, expected {expect}"
                ));
            }
        }
    }
    Ok((
        checks,
        format!("n={n}, {}^2 entries, zero deviation", triples.len()),
    ))
}

fn gram_dense(n: usize, family: Family) -> Outcome {
    let basis = lift(enumerate_basis(family, n, None))?;
    let mats: Vec<DenseOperator<f64>> = lift(basis.iter().map(|e| e.to_dense()).collect())?;
    let mut worst: f64 = 0.0;
    for (x, e) in mats.iter().enumerate() {
        for (y, f) in mats.iter().enumerate() {
            let g = lift(e.hs_inner(f))?;
            let g = if family == Family::BReal {
                Complex::new(g.re, 0.0)
            } else {
                g
            };
            let expect = if x == y { 1.0 } else { 0.0 };
            worst = worst.max((g - Complex::new(expect, 0.0)).norm());
        }
    }
    if worst > 1e-12 {
        return Err(format!("{family} Gram deviation {worst:e} at n={n}"));
    }
    Ok((
        (mats.len() * mats.len()) as u64,
        format!("{family} n={n}, max deviation {worst:e}"),
    ))
}

fn dimensions(max_n: usize) -> Outcome {
    let mut checks = 0;
    for n in 1..=max_n {
        let all = lift(b_indices(n))?.len() as u64;
        if all != 1 << (2 * n) {
            return Err(format!("|B| = {all} at n={n}"));
        }
        for k in 0..=n {
            let d = lift(dim_kbody(n, k))?;
            let bk = lift(bk_indices(n, k))?.len() as u64;
            let mk = lift(majorana_indices(n, Some(k)))?.len() as u64;
            let rk = lift(breal_indices(n, Some(k)))?.len() as u64;
            checks += 1;
            if bk != d || mk != d || rk != d {
                return Err(format!(
                    "n={n} k={k}: dim {d}, |Bk| {bk}, |Mk| {mk}, |BRk| {rk}"
                ));
            }
        }
    }
    Ok((checks, format!("n<={max_n}")))
}

fn majorana_relations(max_n: usize, algebraic_n: usize) -> Outcome {
    let mut checks = 0;
    for n in 1..=max_n {
        let id = lift(DenseOperator::<i64>::identity(n))?;
        let ms: Vec<DenseOperator<i64>> = lift(
            (1..=2 * n)
                .map(|j| poly_to_dense(&build_majorana(j, n)?))
                .collect(),
        )?;
        for (x, a) in ms.iter().enumerate() {
            for (y, b) in ms.iter().enumerate() {
                let expect = id.scale(Complex::new(if x == y { 2 } else { 0 }, 0));
                checks += 1;
                if lift(a.anticommutator(b))? != expect {
                    return Err(format!("{{a{}, a{}}} wrong at n={n}", x + 1, y + 1));
                }
            }
        }
        for e in lift(enumerate_basis(Family::Majorana, n, None))? {
            checks += 1;
            if e.index
                != (BasisIndex::Majorana {
                    j: MajoranaSet::EMPTY,
                })
                && lift(poly_to_dense(&e.raw))?.trace() != Complex::new(0, 0)
            {
                return Err(format!("tr {} != 0", e.id()));
            }
        }
    }
    for n in 1..=algebraic_n {
        for j in MajoranaSet::all(n) {
            for k in MajoranaSet::all(n) {
                checks += 1;
                let g = majorana_gram_algebraic(j, k, n);
                if g != if j == k { 1 << n } else { 0 } {
                    return Err(format!("<a{j}, a{k}> = {g} at n={n}"));
                }
            }
        }
    }
    Ok((
        checks,
        format!("dense n<={max_n}, algebraic n<={algebraic_n}"),
    ))
}

fn intersection(max_n: usize) -> Outcome {
    for n in 1..=max_n {
        let common = lift(basis_intersection_check(n))?;
        let ids: Vec<String> = common.iter().map(|e| e.id()).collect();
        if ids != expected_intersection_ids(n) {
            return Err(format!("n={n}: common elements {ids:?}"));
        }
    }
    Ok((
        max_n as u64,
        "scaled identity, plus parity when 4 | n".into(),
    ))
}

fn pi1_identity(ns: &[usize], per_n: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for &n in ns {
        let proj = lift(KBodyProjector::new(n, 1, Family::B))?;
        for _ in 0..per_n {
            let rho = lift(random_number_preserving_density(n, &mut rng))?;
            let lhs = lift(poly_to_dense(&lift(proj.project_dense(rho.op()))?.output))?;
            let rhs = lift(pi1_identity_rhs(&rho))?;
            worst = worst.max(lhs.max_abs_diff(&rhs) * (1u64 << n) as f64);
        }
    }
    if worst > 1e-10 {
        return Err(format!("max |2^n pi1(rho) - rhs| = {worst:e}"));
    }
    Ok((
        (ns.len() * per_n) as u64,
        format!("max deviation {worst:e}"),
    ))
}

fn number_trace() -> Outcome {
    for n in 1..=16usize {
        let formula = lift(number_operator_trace(n))?;
        let binom: i64 = (0..=n as i64)
            .scan(1i64, |c, k| {
                let v = *c;
                *c = *c * (n as i64 - k) / (k + 1);
                Some(k * v)
            })
            .sum();
        if formula != (n as i64) << (n - 1) || formula != binom {
            return Err(format!("n={n}: formula {formula}, sum {binom}"));
        }
    }
    Ok((16, "n<=16 exact".into()))
}

fn projection_laws(max_n: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    let mut checks = 0;
    for n in 1..=max_n {
        let projs: Vec<KBodyProjector> = lift(
            (0..=n)
                .map(|k| KBodyProjector::new(n, k, Family::B))
                .collect(),
        )?;
        let x = lift(random_dense(n, &mut rng))?;
        let outs: Vec<DenseOperator<f64>> = lift(
            projs
                .iter()
                .map(|p| poly_to_dense(&p.project_dense(&x)?.output))
                .collect(),
        )?;
        for (k, p) in projs.iter().enumerate() {
            let pk = &outs[k];
            let again = lift(poly_to_dense(&lift(p.project_dense(pk))?.output))?;
            let adj = lift(poly_to_dense(&lift(p.project_dense(&x.adjoint()))?.output))?;
            let r = lift(p.project_dense(&x))?.report;
            let fails = [
                ("idempotence", again.max_abs_diff(pk)),
                ("adjoint", adj.max_abs_diff(&pk.adjoint())),
                ("contraction", (r.output_norm - r.input_norm).max(0.0)),
                (
                    "pythagoras",
                    r.pythagoras_defect / r.input_norm.powi(2).max(1.0),
                ),
            ];
            for (law, dev) in fails {
                checks += 1;
                if dev > 1e-10 {
                    return Err(format!("{law} violated at n={n} k={k}: {dev:e}"));
                }
            }
            for (j, pj) in outs.iter().enumerate().take(k + 1) {
                checks += 1;
                let nested = lift(poly_to_dense(&lift(projs[j].project_dense(pk))?.output))?;
                let dev = nested.max_abs_diff(pj);
                if dev > 1e-10 {
                    return Err(format!("nesting pi{j} pi{k} != pi{j} at n={n}: {dev:e}"));
                }
            }
        }
    }
    Ok((checks, format!("n<={max_n}")))
}

fn free_fermion(n: usize, count: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf7ee);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let t = random_hermitian_matrix(n, &mut rng);
        let expect: f64 = eigenvalues_square(n, &t)
            .into_iter()
            .filter(|e| *e < 0.0)
            .sum();
        let ints = lift(TwoBodyIntegrals::free(n, t))?;
        let e0 = lift(ground_energy(&lift(build_hamiltonian(&ints))?))?;
        worst = worst.max((e0 - expect).abs());
    }
    if worst > 1e-9 {
        return Err(format!("free-fermion ground energy off by {worst:e}"));
    }
    Ok((count as u64, format!("n={n}, max deviation {worst:e}")))
}

fn bound_gate(random_count: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb0b0);
    let mut cases: Vec<(String, TwoBodyIntegrals)> = Vec::new();
    for name in ["pair-n2", "random-n3"] {
        cases.push((name.into(), lift(builtin_instance(name))?));
    }
    for r in 0..random_count {
        cases.push((
            format!("random-{r}"),
            lift(random_repulsive_integrals(2, 2, &mut rng))?,
        ));
    }
    let mut certified = 0;
    let mut checks = 0;
    for (name, ints) in &cases {
        let n = ints.n();
        let specs = [
            SubsetSpec::Empty,
            SubsetSpec::Bk(1),
            SubsetSpec::Majorana(1),
            SubsetSpec::Full,
        ];
        for spec in specs.iter().take(if n <= 2 { 4 } else { 3 }) {
            let r = lift(bound_report(name, ints, spec))?;
            checks += 1;
            if r.certificate {
                certified += 1;
                if r.e0_truncated > r.e0_full + BOUND_TOL {
                    return Err(format!(
                        "{name}/{}: certified but E0(H_A) = {} > E0(H) = {}",
                        r.subset, r.e0_truncated, r.e0_full
                    ));
                }
            }
        }
    }
    Ok((
        checks,
        format!("{certified} of {checks} instances certified"),
    ))
}

/// Run every suite at the given level.
pub fn run_verify(level: Level, seed: u64, fault: Fault) -> Vec<SuiteResult> {
    let full = level == Level::Full;
    let sign = fault.sign_fn();
    vec![
        run("trace-general-vs-dense", || {
            trace_general(if full { 4 } else { 3 }, sign)
        }),
        run("trace-disjoint-vs-dense", || {
            trace_disjoint(if full { 4 } else { 3 })
        }),
        run("gram-B-exact", || gram_b_exact(if full { 5 } else { 3 })),
        run("gram-B-dense", || {
            gram_dense(if full { 3 } else { 2 }, Family::B)
        }),
        run("gram-BR-dense", || {
            gram_dense(if full { 3 } else { 2 }, Family::BReal)
        }),
        run("gram-M-dense", || {
            gram_dense(if full { 3 } else { 2 }, Family::Majorana)
        }),
        run("dimension-counts", || dimensions(8)),
        run("majorana-relations", || {
            majorana_relations(3, if full { 6 } else { 4 })
        }),
        run("basis-intersection", || {
            intersection(if full { 4 } else { 3 })
        }),
        run("pi1-identity", || {
            pi1_identity(
                if full { &[2, 3, 4] } else { &[2, 3] },
                if full { 50 } else { 10 },
                seed,
            )
        }),
        run("number-operator-trace", number_trace),
        run("projection-laws", || {
            projection_laws(if full { 4 } else { 3 }, seed)
        }),
        run("free-fermion-spectrum", || {
            free_fermion(4, if full { 10 } else { 3 }, seed)
        }),
        run("bound-soundness-gate", || {
            bound_gate(if full { 10 } else { 3 }, seed)
        }),
    ]
}
