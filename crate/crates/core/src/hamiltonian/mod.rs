//! Two-body Hamiltonians with their ground energies, plus the basis-truncated
//! Hamiltonian used to explore ground-energy lower bounds.

mod fcidump;

use num_complex::Complex;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{build_element, enumerate_basis, parse_id, BasisElement, Family};
use crate::dense::{min_eigenvalue, min_eigenvalue_square, poly_to_dense, DenseOperator};
use crate::error::{FockError, Result};
use crate::fock::{check_orbital_count, OperatorPoly, OrbitalSet};
use crate::random::random_hermitian_matrix;
use crate::trace::hs_inner_poly;
use crate::{C64, MAX_DENSE_ORBITALS};

pub use fcidump::{parse_fcidump, read_fcidump};

/// Symmetry tolerance on integrals.
pub const INTEGRAL_TOL: f64 = 1e-10;
/// Certificate threshold on `min eig(H − H_𝒜)` and slack on the energy ordering.
pub const BOUND_TOL: f64 = 1e-9;

/// One-body matrix `t` and two-body matrix `V` on the doubled index space,
/// plus a scalar core energy.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoBodyIntegrals {
    n: usize,
    t: Vec<C64>,
    v: Vec<C64>,
    core: f64,
}

impl TwoBodyIntegrals {
    /// `t` is `n×n` row-major; `v[(i n + j) n² + (k n + l)] = V_{ij;kl}` (0-based).
    pub fn new(n: usize, t: Vec<C64>, v: Vec<C64>, core: f64) -> Result<Self> {
        check_orbital_count(n, MAX_DENSE_ORBITALS)?;
        if t.len() != n * n {
            return Err(FockError::DimensionMismatch {
                expected: n * n,
                found: t.len(),
            });
        }
        if v.len() != n.pow(4) {
            return Err(FockError::DimensionMismatch {
                expected: n.pow(4),
                found: v.len(),
            });
        }
        let ints = TwoBodyIntegrals { n, t, v, core };
        ints.validate()?;
        Ok(ints)
    }

    pub fn free(n: usize, t: Vec<C64>) -> Result<Self> {
        Self::new(n, t, vec![Complex::new(0.0, 0.0); n.pow(4)], 0.0)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let d = (self.t[i * n + j] - self.t[j * n + i].conj()).norm();
                if d > INTEGRAL_TOL {
                    return Err(FockError::Symmetry(format!(
                        "t not Hermitian at ({}, {}): deviation {d:e}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for (i, j, k, l) in quadruples(n) {
            let x = self.v_at(i, j, k, l);
            let herm = (x - self.v_at(k, l, i, j).conj()).norm();
            if herm > INTEGRAL_TOL {
                return Err(FockError::Symmetry(format!(
                    "V not Hermitian at ({},{};{},{}): deviation {herm:e}",
                    i + 1,
                    j + 1,
                    k + 1,
                    l + 1
                )));
            }
            let swap = (x - self.v_at(j, i, l, k)).norm();
            if swap > INTEGRAL_TOL {
                return Err(FockError::Symmetry(format!(
                    "V_{{ij;kl}} != V_{{ji;lk}} at ({},{};{},{}): deviation {swap:e}",
                    i + 1,
                    j + 1,
                    k + 1,
                    l + 1
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn core(&self) -> f64 {
        self.core
    }

    pub fn t(&self) -> &[C64] {
        &self.t
    }

    pub fn v(&self) -> &[C64] {
        &self.v
    }

    /// `t_{ij}`, 0-based.
    pub fn t_at(&self, i: usize, j: usize) -> C64 {
        self.t[i * self.n + j]
    }

    /// `V_{ij;kl}`, 0-based.
    pub fn v_at(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        let n = self.n;
        self.v[(i * n + j) * n * n + (k * n + l)]
    }

    /// Smallest eigenvalue of `V` as an `n²×n²` matrix.
    pub fn v_min_eigenvalue(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        min_eigenvalue_square(self.n * self.n, &self.v)
    }

    /// `V ⪰ 0` within `1e−10`.
    pub fn is_repulsive(&self) -> bool {
        self.v_min_eigenvalue() >= -INTEGRAL_TOL
    }

    pub fn has_two_body(&self) -> bool {
        self.v.iter().any(|x| x.norm() > 0.0)
    }
}

fn quadruples(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n.pow(4)).map(move |x| (x / n.pow(3), x / (n * n) % n, x / n % n, x % n))
}

fn creation_pair(n: usize, i: usize, j: usize) -> Result<OperatorPoly<f64>> {
    let one = Complex::new(1.0, 0.0);
    let e = OrbitalSet::EMPTY;
    let a = OperatorPoly::monomial(n, OrbitalSet::singleton(i + 1), e, one)?;
    let b = OperatorPoly::monomial(n, OrbitalSet::singleton(j + 1), e, one)?;
    a.product(&b)
}

/// `c_l c_k` as a polynomial (0-based indices); zero when `l = k`.
fn annihilation_pair(n: usize, l: usize, k: usize) -> Result<OperatorPoly<f64>> {
    let one = Complex::new(1.0, 0.0);
    let e = OrbitalSet::EMPTY;
    let a = OperatorPoly::monomial(n, e, OrbitalSet::singleton(l + 1), one)?;
    let b = OperatorPoly::monomial(n, e, OrbitalSet::singleton(k + 1), one)?;
    a.product(&b)
}

fn one_body_poly(ints: &TwoBodyIntegrals) -> Result<OperatorPoly<f64>> {
    let n = ints.n;
    let mut p = OperatorPoly::zero(n)?;
    p.add_term(
        OrbitalSet::EMPTY,
        OrbitalSet::EMPTY,
        Complex::new(ints.core, 0.0),
    );
    for i in 0..n {
        for j in 0..n {
            p.add_term(
                OrbitalSet::singleton(i + 1),
                OrbitalSet::singleton(j + 1),
                ints.t_at(i, j),
            );
        }
    }
    Ok(p)
}

/// `½ Σ_{ijkl} V_{ij;kl} c*_i c*_j R(l,k)`, with per-`i` partial sums merged in order.
fn quartic_poly(ints: &TwoBodyIntegrals, right: &[OperatorPoly<f64>]) -> Result<OperatorPoly<f64>> {
    let n = ints.n;
    let partials: Vec<OperatorPoly<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = OperatorPoly::zero(n)?;
            for j in 0..n {
                if i == j {
                    continue;
                }
                let left = creation_pair(n, i, j)?;
                for k in 0..n {
                    for l in 0..n {
                        let v = ints.v_at(i, j, k, l);
                        let r = &right[l * n + k];
                        if v.norm() == 0.0 || r.is_empty() {
                            continue;
                        }
                        acc = &acc + &left.product(r)?.scale(v * 0.5);
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = OperatorPoly::zero(n)?;
    for p in &partials {
        total = &total + p;
    }
    Ok(total)
}

fn annihilation_pairs(n: usize) -> Result<Vec<OperatorPoly<f64>>> {
    (0..n * n)
        .map(|x| annihilation_pair(n, x / n, x % n))
        .collect()
}

/// `H = Σ t_{ij} c*_i c_j + ½ Σ V_{ij;kl} c*_i c*_j c_l c_k` (plus core energy).
pub fn build_hamiltonian_poly(ints: &TwoBodyIntegrals) -> Result<OperatorPoly<f64>> {
    let q = quartic_poly(ints, &annihilation_pairs(ints.n)?)?;
    Ok(&one_body_poly(ints)? + &q)
}

pub fn build_hamiltonian(ints: &TwoBodyIntegrals) -> Result<DenseOperator<f64>> {
    poly_to_dense(&build_hamiltonian_poly(ints)?)
}

/// Orthonormal elements of a single family.
fn check_subset(subset: &[BasisElement], n: usize) -> Result<()> {
    if let Some(first) = subset.first() {
        for e in subset {
            if e.n != n {
                return Err(FockError::DimensionMismatch {
                    expected: n,
                    found: e.n,
                });
            }
            if e.family() != first.family() {
                return Err(FockError::UnknownId(format!(
                    "subset mixes families {} and {}",
                    first.family(),
                    e.family()
                )));
            }
        }
    }
    Ok(())
}

/// `P_𝒜[X] = Σ_{θ∈𝒜} ⟨θ, X⟩ θ`.
pub fn subset_projection(
    subset: &[OperatorPoly<f64>],
    x: &OperatorPoly<f64>,
) -> Result<OperatorPoly<f64>> {
    let coeffs: Vec<C64> = subset
        .par_iter()
        .map(|t| hs_inner_poly(t, x))
        .collect::<Result<_>>()?;
    let mut out = OperatorPoly::zero(x.n())?;
    for (t, c) in subset.iter().zip(coeffs) {
        if c.norm() == 0.0 {
            continue;
        }
        for (a, b, v) in t.terms() {
            out.add_term(a, b, v * c);
        }
    }
    Ok(out)
}

/// `H_𝒜`: every `c_l c_k` in the quartic term replaced by `P_𝒜[c_l c_k]`,
/// then Hermitized as `(X + X*)/2`.
pub fn build_truncated_hamiltonian_poly(
    ints: &TwoBodyIntegrals,
    subset: &[BasisElement],
) -> Result<OperatorPoly<f64>> {
    let n = ints.n;
    check_subset(subset, n)?;
    if !ints.is_repulsive() {
        return Err(FockError::NotRepulsive {
            min_eig: ints.v_min_eigenvalue(),
        });
    }
    let thetas: Vec<OperatorPoly<f64>> = subset.iter().map(|e| e.to_poly::<f64>()).collect();
    let projected: Vec<OperatorPoly<f64>> = annihilation_pairs(n)?
        .iter()
        .map(|x| {
            if x.is_empty() {
                Ok(x.clone())
            } else {
                subset_projection(&thetas, x)
            }
        })
        .collect::<Result<_>>()?;
    let h = &one_body_poly(ints)? + &quartic_poly(ints, &projected)?;
    Ok((&h + &h.adjoint()).scale(Complex::new(0.5, 0.0)))
}

pub fn build_truncated_hamiltonian(
    ints: &TwoBodyIntegrals,
    subset: &[BasisElement],
) -> Result<DenseOperator<f64>> {
    poly_to_dense(&build_truncated_hamiltonian_poly(ints, subset)?)
}

/// Bottom of the spectrum.
pub fn ground_energy(h: &DenseOperator<f64>) -> Result<f64> {
    min_eigenvalue(h)
}

/// Ways to name a truncation subset `𝒜`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetSpec {
    /// All of `𝔅`.
    Full,
    /// `𝒜 = ∅`.
    Empty,
    /// `𝔅_k`.
    Bk(usize),
    /// `𝔅̃_k`.
    Majorana(usize),
    /// Explicit identifiers.
    Ids(Vec<String>),
}

impl SubsetSpec {
    /// `full`, `none`, `Bk:<k>`, `M:<k>`; anything else is an error.
    pub fn parse_named(s: &str) -> Result<Self> {
        let bad = || FockError::UnknownId(format!("unknown subset `{s}`"));
        match s {
            "full" => Ok(SubsetSpec::Full),
            "none" => Ok(SubsetSpec::Empty),
            _ => {
                let (tag, k) = s.split_once(':').ok_or_else(bad)?;
                let k: usize = k.parse().map_err(|_| bad())?;
                match tag {
                    "Bk" => Ok(SubsetSpec::Bk(k)),
                    "M" => Ok(SubsetSpec::Majorana(k)),
                    _ => Err(bad()),
                }
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            SubsetSpec::Full => "full".into(),
            SubsetSpec::Empty => "none".into(),
            SubsetSpec::Bk(k) => format!("Bk:{k}"),
            SubsetSpec::Majorana(k) => format!("M:{k}"),
            SubsetSpec::Ids(ids) => format!("ids({})", ids.len()),
        }
    }

    pub fn resolve(&self, n: usize) -> Result<Vec<BasisElement>> {
        match self {
            SubsetSpec::Full => enumerate_basis(Family::B, n, None),
            SubsetSpec::Empty => Ok(Vec::new()),
            SubsetSpec::Bk(k) => enumerate_basis(Family::B, n, Some(*k)),
            SubsetSpec::Majorana(k) => enumerate_basis(Family::Majorana, n, Some(*k)),
            SubsetSpec::Ids(ids) => {
                let mut seen = std::collections::HashSet::new();
                ids.iter()
                    .map(|s| {
                        let ix = parse_id(s, n)?;
                        if !seen.insert(ix) {
                            return Err(FockError::UnknownId(format!("duplicate id `{s}`")));
                        }
                        build_element(n, ix)
                    })
                    .collect()
            }
        }
    }
}

/// Per-instance comparison of `E₀(H)` and `E₀(H_𝒜)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub instance: String,
    pub n: usize,
    pub subset: String,
    pub e0_full: f64,
    pub e0_truncated: f64,
    /// `min eig(H − H_𝒜)`.
    pub gap_matrix_min_eig: f64,
    /// `gap_matrix_min_eig ≥ −1e−9`.
    pub certificate: bool,
    /// `E₀(H_𝒜) ≤ E₀(H) + 1e−9`.
    pub bound_holds: bool,
    pub v_min_eig: f64,
    pub basis_subset_ids: Vec<String>,
}

pub fn bound_report(
    instance: &str,
    ints: &TwoBodyIntegrals,
    spec: &SubsetSpec,
) -> Result<BoundReport> {
    let subset = spec.resolve(ints.n)?;
    let h = build_hamiltonian(ints)?;
    let ha = build_truncated_hamiltonian(ints, &subset)?;
    let e0_full = ground_energy(&h)?;
    let e0_truncated = ground_energy(&ha)?;
    let gap = min_eigenvalue(&(&h - &ha).hermitian_part())?;
    Ok(BoundReport {
        instance: instance.to_string(),
        n: ints.n,
        subset: spec.label(),
        e0_full,
        e0_truncated,
        gap_matrix_min_eig: gap,
        certificate: gap >= -BOUND_TOL,
        bound_holds: e0_truncated <= e0_full + BOUND_TOL,
        v_min_eig: ints.v_min_eigenvalue(),
        basis_subset_ids: subset.iter().map(|e| e.id()).collect(),
    })
}

/// Random Hermitian `t` and `V = Σ_r w_r w_r*` with each `w_r` even or odd
/// under the pair swap `(ij) ↦ (ji)`, so `V ⪰ 0` and `V_{ij;kl} = V_{ji;lk}`.
pub fn random_repulsive_integrals<R: Rng + ?Sized>(
    n: usize,
    rank: usize,
    rng: &mut R,
) -> Result<TwoBodyIntegrals> {
    let t = random_hermitian_matrix(n, rng);
    let m = n * n;
    let mut v = vec![Complex::new(0.0, 0.0); m * m];
    for r in 0..rank {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let raw: Vec<C64> = (0..m)
            .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let w: Vec<C64> = (0..m)
            .map(|x| (raw[x] + raw[(x % n) * n + x / n] * sign) * 0.5)
            .collect();
        for x in 0..m {
            for y in 0..m {
                v[x * m + y] += w[x] * w[y].conj();
            }
        }
    }
    // Exact Hermiticity against accumulated rounding.
    for x in 0..m {
        for y in x..m {
            let h = (v[x * m + y] + v[y * m + x].conj()) * 0.5;
            v[x * m + y] = h;
            v[y * m + x] = h.conj();
        }
    }
    TwoBodyIntegrals::new(n, t, v, 0.0)
}

/// Names accepted by [`builtin_instance`].
pub const BUILTIN_INSTANCES: &[&str] = &["pair-n2", "hubbard-n4", "free-n4", "random-n3"];

/// Fixed model problems.
pub fn builtin_instance(name: &str) -> Result<TwoBodyIntegrals> {
    let c = |x: f64| Complex::new(x, 0.0);
    match name {
        // Two orbitals, hopping 1, on-pair repulsion U = 2.
        "pair-n2" => {
            let n = 2;
            let t = vec![c(0.0), c(-1.0), c(-1.0), c(0.5)];
            let mut v = vec![c(0.0); 16];
            v[4 + 1] = c(2.0); // V_{12;12}
            v[(2) * 4 + 2] = c(2.0); // V_{21;21}
            TwoBodyIntegrals::new(n, t, v, 0.0)
        }
        // Two spatial sites × two spins, orbitals (1↑, 1↓, 2↑, 2↓); on-site U = 4.
        "hubbard-n4" => {
            let n = 4;
            let mut t = vec![c(0.0); 16];
            for (a, b) in [(0, 2), (1, 3)] {
                t[a * n + b] = c(-1.0);
                t[b * n + a] = c(-1.0);
            }
            let mut v = vec![c(0.0); n.pow(4)];
            for (up, down) in [(0, 1), (2, 3)] {
                for (i, j) in [(up, down), (down, up)] {
                    v[(i * n + j) * n * n + (i * n + j)] = c(4.0);
                }
            }
            TwoBodyIntegrals::new(n, t, v, 0.0)
        }
        "free-n4" => {
            let n = 4;
            let mut t = vec![c(0.0); 16];
            for i in 0..n {
                t[i * n + i] = c(i as f64 - 1.5);
                if i + 1 < n {
                    t[i * n + i + 1] = c(-0.7);
                    t[(i + 1) * n + i] = c(-0.7);
                }
            }
            TwoBodyIntegrals::free(n, t)
        }
        "random-n3" => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20_240_601);
            random_repulsive_integrals(3, 3, &mut rng)
        }
        other => Err(FockError::UnknownId(format!(
            "unknown instance `{other}` (known: {})",
            BUILTIN_INSTANCES.join(", ")
        ))),
    }
}
