//! Seeded random operators for randomized checks.

use num_complex::Complex;
use rand::Rng;

use crate::dense::{DenseOperator, DensityMatrix};
use crate::error::Result;
use crate::fock::{OperatorPoly, OrbitalSet};

fn unit_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex<f64> {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Entries uniform in the unit square of `ℂ`.
pub fn random_dense<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DenseOperator<f64>> {
    let mut m = DenseOperator::zeros(n)?;
    for r in 0..m.dim() {
        for c in 0..m.dim() {
            m.set(r, c, unit_complex(rng));
        }
    }
    Ok(m)
}

/// `(X + X*)/2` of a [`random_dense`] operator.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DenseOperator<f64>> {
    Ok(random_dense(n, rng)?.hermitian_part())
}

/// Up to `terms` random canonical monomials with unit-square coefficients.
pub fn random_poly<R: Rng + ?Sized>(
    n: usize,
    terms: usize,
    rng: &mut R,
) -> Result<OperatorPoly<f64>> {
    let mut p = OperatorPoly::zero(n)?;
    let top = 1u32 << n;
    for _ in 0..terms {
        let a = OrbitalSet::from_bits(rng.random_range(0..top));
        let b = OrbitalSet::from_bits(rng.random_range(0..top));
        p.add_term(a, b, unit_complex(rng));
    }
    Ok(p)
}

/// Row-major Hermitian `n×n` matrix.
pub fn random_hermitian_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex<f64>> {
    let mut t = vec![Complex::new(0.0, 0.0); n * n];
    for i in 0..n {
        t[i * n + i] = Complex::new(rng.random_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = unit_complex(rng);
            t[i * n + j] = z;
            t[j * n + i] = z.conj();
        }
    }
    t
}

/// Block-diagonal density matrix: an independent `G G*` block on each
/// particle-number sector, then a single global trace normalization.
pub fn random_number_preserving_density<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let mut op = DenseOperator::<f64>::zeros(n)?;
    for p in 0..=n as u32 {
        let sector: Vec<usize> = OrbitalSet::all(n)
            .filter(|s| s.len() == p)
            .map(|s| s.bits() as usize)
            .collect();
        let m = sector.len();
        let g: Vec<Complex<f64>> = (0..m * m).map(|_| unit_complex(rng)).collect();
        for (x, &r) in sector.iter().enumerate() {
            for (y, &c) in sector.iter().enumerate() {
                let v = (0..m).fold(Complex::new(0.0, 0.0), |acc, z| {
                    acc + g[x * m + z] * g[y * m + z].conj()
                });
                op.set(r, c, v);
            }
        }
    }
    let tr = op.trace().re;
    let op = op.scale(Complex::new(1.0 / tr, 0.0)).hermitian_part();
    DensityMatrix::new(op)
}
