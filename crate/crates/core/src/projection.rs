//! Orthogonal projection onto k-body operator spaces, one-particle reduced
//! density matrices and second quantization of one-body matrices.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{check_k, enumerate_basis, BasisElement, Family};
use crate::dense::{
    hs_inner_monomial_dense, min_eigenvalue_square, monomial_expectation, number_operator_dense,
    poly_to_dense, DenseOperator, DensityMatrix,
};
use crate::error::{FockError, Result};
use crate::fock::{check_orbital_count, number_operator, OperatorPoly, OrbitalSet};
use crate::trace::{hs_inner_poly, TripleForm};
use crate::{C64, MAX_DENSE_ORBITALS, MAX_ORBITALS};

/// Tolerance for `[ρ, N̂] = 0`.
pub const NUMBER_PRESERVING_TOL: f64 = 1e-10;

/// `π_k` realized through a fixed orthonormal basis of `O_k`.
#[derive(Clone, Debug)]
pub struct KBodyProjector {
    n: usize,
    k: usize,
    family: Family,
    basis: Vec<BasisElement>,
    polys: Vec<OperatorPoly<f64>>,
    triples: Vec<TripleForm<f64>>,
}

/// Norm bookkeeping for one projection.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionReport {
    pub n: usize,
    pub k: usize,
    pub family: String,
    pub input_norm: f64,
    pub output_norm: f64,
    pub residual_norm: f64,
    /// `|output² + residual² − input²|`.
    pub pythagoras_defect: f64,
}

#[derive(Clone, Debug)]
pub struct Projection {
    pub report: ProjectionReport,
    /// `⟨b, X⟩` in basis order.
    pub coefficients: Vec<C64>,
    pub output: OperatorPoly<f64>,
}

impl KBodyProjector {
    pub fn new(n: usize, k: usize, family: Family) -> Result<Self> {
        check_orbital_count(n, MAX_ORBITALS)?;
        check_k(n, k)?;
        let basis = enumerate_basis(family, n, Some(k))?;
        let polys: Vec<OperatorPoly<f64>> = basis.iter().map(|e| e.to_poly::<f64>()).collect();
        let triples = polys.iter().map(TripleForm::new).collect();
        Ok(KBodyProjector {
            n,
            k,
            family,
            basis,
            polys,
            triples,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == self.n {
            Ok(())
        } else {
            Err(FockError::DimensionMismatch {
                expected: self.n,
                found: n,
            })
        }
    }

    /// `⟨b, X⟩` for every basis element, by the combinatorial inner product.
    pub fn coefficients_poly(&self, x: &OperatorPoly<f64>) -> Result<Vec<C64>> {
        self.check_n(x.n())?;
        let x = TripleForm::new(x);
        self.triples.par_iter().map(|b| b.inner(&x)).collect()
    }

    /// `⟨b, X⟩` for every basis element, by dense traces.
    pub fn coefficients_dense(&self, x: &DenseOperator<f64>) -> Result<Vec<C64>> {
        self.check_n(x.n())?;
        self.polys
            .par_iter()
            .map(|b| {
                b.terms()
                    .try_fold(Complex::new(0.0, 0.0), |acc, (a, bb, c)| {
                        Ok(acc + c.conj() * hs_inner_monomial_dense(a, bb, x)?)
                    })
            })
            .collect()
    }

    /// `Σ_b coeff_b · b`, summed in basis order.
    pub fn synthesize(&self, coefficients: &[C64]) -> Result<OperatorPoly<f64>> {
        if coefficients.len() != self.polys.len() {
            return Err(FockError::DimensionMismatch {
                expected: self.polys.len(),
                found: coefficients.len(),
            });
        }
        let mut out = OperatorPoly::zero(self.n)?;
        for (b, c) in self.polys.iter().zip(coefficients) {
            if *c == Complex::new(0.0, 0.0) {
                continue;
            }
            for (a, bb, v) in b.terms() {
                out.add_term(a, bb, v * *c);
            }
        }
        Ok(out)
    }

    fn report(&self, input_norm: f64, output_norm: f64, residual_norm: f64) -> ProjectionReport {
        ProjectionReport {
            n: self.n,
            k: self.k,
            family: self.family.tag().to_string(),
            input_norm,
            output_norm,
            residual_norm,
            pythagoras_defect: (output_norm.powi(2) + residual_norm.powi(2) - input_norm.powi(2))
                .abs(),
        }
    }

    pub fn project_poly(&self, x: &OperatorPoly<f64>) -> Result<Projection> {
        let coefficients = self.coefficients_poly(x)?;
        let output = self.synthesize(&coefficients)?;
        let residual = x - &output;
        let input_norm = hs_inner_poly(x, x)?.re.max(0.0).sqrt();
        let output_norm = coefficients
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        let residual_norm = hs_inner_poly(&residual, &residual)?.re.max(0.0).sqrt();
        Ok(Projection {
            report: self.report(input_norm, output_norm, residual_norm),
            coefficients,
            output,
        })
    }

    pub fn project_dense(&self, x: &DenseOperator<f64>) -> Result<Projection> {
        check_orbital_count(x.n(), MAX_DENSE_ORBITALS)?;
        let coefficients = self.coefficients_dense(x)?;
        let output = self.synthesize(&coefficients)?;
        let residual = x - &poly_to_dense(&output)?;
        let output_norm = coefficients
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        Ok(Projection {
            report: self.report(x.hs_norm(), output_norm, residual.hs_norm()),
            coefficients,
            output,
        })
    }
}

/// Dense `π_k(X)` in one call.
pub fn project_kbody_dense(
    x: &DenseOperator<f64>,
    k: usize,
    family: Family,
) -> Result<DenseOperator<f64>> {
    let p = KBodyProjector::new(x.n(), k, family)?.project_dense(x)?;
    poly_to_dense(&p.output)
}

/// Polynomial `π_k(X)` in one call.
pub fn project_kbody_poly(
    x: &OperatorPoly<f64>,
    k: usize,
    family: Family,
) -> Result<OperatorPoly<f64>> {
    Ok(KBodyProjector::new(x.n(), k, family)?
        .project_poly(x)?
        .output)
}

/// An `n×n` complex matrix on the one-particle space, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct OneBodyMatrix {
    n: usize,
    entries: Vec<C64>,
}

impl OneBodyMatrix {
    pub fn zeros(n: usize) -> Self {
        OneBodyMatrix {
            n,
            entries: vec![Complex::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn from_row_major(n: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(FockError::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(OneBodyMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Entry `(i, j)`, 1-based.
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.entries[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn trace(&self) -> C64 {
        (1..=self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 1..=self.n {
            for j in 1..=self.n {
                m = m.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        m
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue_square(self.n, &self.entries)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        let neg: Vec<C64> = self.entries.iter().map(|v| -v).collect();
        -min_eigenvalue_square(self.n, &neg)
    }
}

/// `γ_{ij} = tr(ρ c*_i c_j)`.
pub fn one_rdm(rho: &DensityMatrix) -> Result<OneBodyMatrix> {
    let n = rho.n();
    let mut g = OneBodyMatrix::zeros(n);
    for i in 1..=n {
        for j in 1..=n {
            let v =
                monomial_expectation(rho.op(), OrbitalSet::singleton(i), OrbitalSet::singleton(j))?;
            g.set(i, j, v);
        }
    }
    Ok(g)
}

/// `dΓ(γ) = Σ_{i,j} γ_{ji} c*_i c_j`.
pub fn second_quantize(gamma: &OneBodyMatrix) -> Result<OperatorPoly<f64>> {
    let n = gamma.n();
    let mut p = OperatorPoly::zero(n)?;
    for i in 1..=n {
        for j in 1..=n {
            p.add_term(
                OrbitalSet::singleton(i),
                OrbitalSet::singleton(j),
                gamma.get(j, i),
            );
        }
    }
    Ok(p)
}

/// `max |[ρ, N̂]|`.
pub fn number_commutator_deviation(x: &DenseOperator<f64>) -> Result<f64> {
    let num = number_operator_dense::<f64>(x.n())?;
    Ok(x.commutator(&num)?
        .max_abs_diff(&DenseOperator::zeros(x.n())?))
}

/// `2⁻ⁿ [((n+1) − 2 tr γ) 𝟙 − 2N̂ + 4 dΓ(γ)]` for a number-preserving `ρ`.
pub fn pi1_identity_rhs(rho: &DensityMatrix) -> Result<DenseOperator<f64>> {
    let deviation = number_commutator_deviation(rho.op())?;
    if deviation > NUMBER_PRESERVING_TOL {
        return Err(FockError::NotNumberPreserving { deviation });
    }
    let n = rho.n();
    let gamma = one_rdm(rho)?;
    let id = DenseOperator::<f64>::identity(n)?;
    let num = number_operator_dense::<f64>(n)?;
    let dg = poly_to_dense(&second_quantize(&gamma)?)?;
    let c0 = Complex::new(n as f64 + 1.0, 0.0) - gamma.trace() * 2.0;
    let sum =
        &(&id.scale(c0) - &num.scale(Complex::new(2.0, 0.0))) + &dg.scale(Complex::new(4.0, 0.0));
    Ok(sum.scale(Complex::new(1.0 / (1u64 << n) as f64, 0.0)))
}

/// `tr N̂ = ⟨𝟙, N̂⟩` by the closed-form inner product, exact for `n ≤ 16`.
pub fn number_operator_trace(n: usize) -> Result<i64> {
    Ok(hs_inner_poly(
        &OperatorPoly::<i64>::identity(n)?,
        &number_operator::<i64>(n)?,
    )?
    .re)
}
