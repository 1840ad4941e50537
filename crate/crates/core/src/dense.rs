//! Brute-force `2ⁿ×2ⁿ` matrix realization of Fock-space operators.
//!
//! Rows and columns are indexed by the bitmask value of the Slater index, so
//! `∅` is index 0. Monomial matrices are assembled by composing the
//! elementary wedge action `φ_S ↦ φ_i ∧ φ_S` orbital by orbital; nothing here
//! goes through the multi-sign calculus in [`crate::fock`], which keeps this
//! module usable as an independent check of it.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{FockError, Result};
use crate::fock::{check_orbital_count, FockVector, OperatorPoly, OrbitalSet};
use crate::scalar::{abs_f64, cast_complex, conj, Scalar};
use crate::MAX_DENSE_ORBITALS;

/// Hermiticity threshold for eigenvalue routines.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Tolerances certifying a density matrix.
pub const DENSITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<T> {
    n: usize,
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> DenseOperator<T> {
    pub fn zeros(n: usize) -> Result<Self> {
        check_orbital_count(n, MAX_DENSE_ORBITALS)?;
        let dim = 1 << n;
        Ok(DenseOperator {
            n,
            dim,
            data: vec![Complex::zero(); dim * dim],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..m.dim {
            m.data[i * m.dim + i] = Complex::one();
        }
        Ok(m)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for r in 0..m.dim {
            for c in 0..m.dim {
                m.data[r * m.dim + c] = f(r, c);
            }
        }
        Ok(m)
    }

    /// Row-major entries of length `4ⁿ`.
    pub fn from_row_major(n: usize, data: Vec<Complex<T>>) -> Result<Self> {
        check_orbital_count(n, MAX_DENSE_ORBITALS)?;
        let dim = 1 << n;
        if data.len() != dim * dim {
            return Err(FockError::DimensionMismatch {
                expected: n,
                found: (data.len() as f64).log2() as usize / 2,
            });
        }
        Ok(DenseOperator { n, dim, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex<T>) {
        self.data[r * self.dim + c] = v;
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(FockError::DimensionMismatch {
                expected: self.n,
                found: other.n,
            })
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let d = self.dim;
        let mut out = vec![Complex::zero(); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a.is_zero() {
                    continue;
                }
                let row = &other.data[k * d..(k + 1) * d];
                let dst = &mut out[r * d..(r + 1) * d];
                for (o, b) in dst.iter_mut().zip(row) {
                    *o = *o + a * *b;
                }
            }
        }
        Ok(DenseOperator {
            n: self.n,
            dim: d,
            data: out,
        })
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = self.clone();
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = conj(self.data[r * d + c]);
            }
        }
        out
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        DenseOperator {
            n: self.n,
            dim: self.dim,
            data: self.data.iter().map(|v| *v * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self.get(i, i))
    }

    /// `⟨X, Y⟩ = tr(X* Y) = Σ conj(X_rc) Y_rc`.
    pub fn hs_inner(&self, other: &Self) -> Result<Complex<T>> {
        self.check_same(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(Complex::zero(), |acc, (x, y)| acc + conj(*x) * *y))
    }

    pub fn hs_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|v| {
                let a = abs_f64(*v);
                a * a
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| abs_f64(*x - *y))
            .fold(0.0, f64::max)
    }

    /// `max |X − X*|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let d = self.dim;
        let mut m: f64 = 0.0;
        for r in 0..d {
            for c in r..d {
                m = m.max(abs_f64(self.get(r, c) - conj(self.get(c, r))));
            }
        }
        m
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.matmul(other)? - &other.matmul(self)?)
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.matmul(other)? + &other.matmul(self)?)
    }

    pub fn cast<U: Scalar>(&self) -> DenseOperator<U> {
        DenseOperator {
            n: self.n,
            dim: self.dim,
            data: self.data.iter().map(|v| cast_complex(*v)).collect(),
        }
    }

    /// `X v`; the result is dense.
    pub fn apply(&self, v: &FockVector<T>) -> Result<FockVector<T>> {
        if v.n() != self.n {
            return Err(FockError::DimensionMismatch {
                expected: self.n,
                found: v.n(),
            });
        }
        let x = v.to_dense_vec();
        let d = self.dim;
        let y = (0..d)
            .map(|r| (0..d).fold(Complex::zero(), |acc, c| acc + self.data[r * d + c] * x[c]))
            .collect();
        FockVector::from_dense(self.n, y)
    }

    /// `(X + X*) / 2` for float scalars.
    pub fn hermitian_part(&self) -> Self
    where
        T: num_traits::Float,
    {
        let half = Complex::new(T::from(0.5).unwrap(), T::zero());
        (self + &self.adjoint()).scale(half)
    }
}

impl<T: Scalar> Add for &DenseOperator<T> {
    type Output = DenseOperator<T>;
    /// Panics on mismatched `n`.
    fn add(self, rhs: Self) -> DenseOperator<T> {
        assert_eq!(self.n, rhs.n, "orbital count mismatch");
        DenseOperator {
            n: self.n,
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &DenseOperator<T> {
    type Output = DenseOperator<T>;
    /// Panics on mismatched `n`.
    fn sub(self, rhs: Self) -> DenseOperator<T> {
        assert_eq!(self.n, rhs.n, "orbital count mismatch");
        DenseOperator {
            n: self.n,
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &DenseOperator<T> {
    type Output = DenseOperator<T>;
    /// Panics on mismatched `n`.
    fn mul(self, rhs: Self) -> DenseOperator<T> {
        self.matmul(rhs).expect("orbital count mismatch")
    }
}

/// Image of every Slater column under an operator mapping basis vectors to
/// signed basis vectors (or zero).
#[derive(Clone, Debug)]
struct SignedMap(Vec<Option<(u32, i32)>>);

impl SignedMap {
    fn identity(n: usize) -> Self {
        SignedMap((0..1u32 << n).map(|s| Some((s, 1))).collect())
    }

    /// `φ_S ↦ φ_i ∧ φ_S`: moving `φ_i` to its sorted slot passes every
    /// occupied orbital below it.
    fn wedge(pos: u32, n: usize) -> Self {
        SignedMap(
            (0..1u32 << n)
                .map(|s| {
                    if s & (1 << pos) != 0 {
                        None
                    } else {
                        let below = (s & ((1 << pos) - 1)).count_ones();
                        Some((s | (1 << pos), if below.is_multiple_of(2) { 1 } else { -1 }))
                    }
                })
                .collect(),
        )
    }

    /// `outer ∘ self`.
    fn then(&self, outer: &SignedMap) -> Self {
        SignedMap(
            self.0
                .iter()
                .map(|img| img.and_then(|(r, s)| outer.0[r as usize].map(|(r2, s2)| (r2, s * s2))))
                .collect(),
        )
    }

    /// Adjoint of an injective signed map (a partial inverse).
    fn adjoint(&self) -> Self {
        let mut out = vec![None; self.0.len()];
        for (c, img) in self.0.iter().enumerate() {
            if let Some((r, s)) = img {
                out[*r as usize] = Some((c as u32, *s));
            }
        }
        SignedMap(out)
    }

    /// `c*_A = c*_{a₁} ⋯ c*_{a_k}`: the rightmost factor acts first.
    fn creation_string(a: OrbitalSet, n: usize) -> Self {
        let positions: Vec<u32> = a.positions().collect();
        positions
            .iter()
            .rev()
            .fold(SignedMap::identity(n), |m, &p| {
                m.then(&SignedMap::wedge(p, n))
            })
    }

    /// `c*_A c_B` with `c_B = (c*_B)*`.
    fn monomial(a: OrbitalSet, b: OrbitalSet, n: usize) -> Self {
        Self::creation_string(b, n)
            .adjoint()
            .then(&Self::creation_string(a, n))
    }

    fn to_dense<T: Scalar>(&self, n: usize) -> DenseOperator<T> {
        let mut m = DenseOperator::zeros(n).expect("n validated by caller");
        for (c, img) in self.0.iter().enumerate() {
            if let Some((r, s)) = img {
                m.set(
                    *r as usize,
                    c,
                    Complex::new(T::from_i64(*s as i64), T::zero()),
                );
            }
        }
        m
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(FockError::OrbitalIndex { index: i, n })
    } else {
        Ok(())
    }
}

/// Matrix of `c*_i` in the Slater basis; entries in `{−1, 0, +1}`.
pub fn creation_matrix<T: Scalar>(i: usize, n: usize) -> Result<DenseOperator<T>> {
    check_orbital_count(n, MAX_DENSE_ORBITALS)?;
    check_index(i, n)?;
    Ok(SignedMap::wedge(i as u32 - 1, n).to_dense(n))
}

/// Matrix of `c_i`.
pub fn annihilation_matrix<T: Scalar>(i: usize, n: usize) -> Result<DenseOperator<T>> {
    check_orbital_count(n, MAX_DENSE_ORBITALS)?;
    check_index(i, n)?;
    Ok(SignedMap::wedge(i as u32 - 1, n).adjoint().to_dense(n))
}

/// Matrix of `c*_A c_B` for arbitrary (possibly overlapping) `A`, `B`.
pub fn monomial_matrix<T: Scalar>(
    a: OrbitalSet,
    b: OrbitalSet,
    n: usize,
) -> Result<DenseOperator<T>> {
    check_orbital_count(n, MAX_DENSE_ORBITALS)?;
    a.check_fits(n)?;
    b.check_fits(n)?;
    Ok(SignedMap::monomial(a, b, n).to_dense(n))
}

/// `Σ x_{A,B} (matrix of c*_A)(matrix of c_B)`; exact for integer scalars.
pub fn poly_to_dense<T: Scalar>(p: &OperatorPoly<T>) -> Result<DenseOperator<T>> {
    let n = p.n();
    let mut m = DenseOperator::zeros(n)?;
    for (a, b, coeff) in p.terms() {
        let map = SignedMap::monomial(a, b, n);
        for (c, img) in map.0.iter().enumerate() {
            if let Some((r, s)) = img {
                let v = m.get(*r as usize, c);
                m.set(*r as usize, c, if *s > 0 { v + coeff } else { v - coeff });
            }
        }
    }
    Ok(m)
}

/// The unique canonical expansion `X = Σ x_{A,B} c*_A c_B`.
///
/// `c*_A c_B = |φ_A⟩⟨φ_B| + Σ_{∅≠N ⊆ ∁(A∪B)} ±|φ_{A∪N}⟩⟨φ_{B∪N}|`, so the
/// change of basis from dyads is unitriangular when dyads are ordered by
/// `|A|`. Peeling levels in increasing `|A|` reads off each coefficient
/// from the residual; only sign flips occur, so integer input stays exact.
pub fn dense_to_poly<T: Scalar>(x: &DenseOperator<T>) -> Result<OperatorPoly<T>> {
    let n = x.n;
    let d = x.dim;
    let mut residual = x.data.clone();
    let mut out = OperatorPoly::zero(n)?;
    for level in 0..=n as u32 {
        for a in (0..d as u32).filter(|a| a.count_ones() == level) {
            for b in 0..d as u32 {
                let r = residual[a as usize * d + b as usize];
                if r.is_zero() {
                    continue;
                }
                let (sa, sb) = (OrbitalSet::from_bits(a), OrbitalSet::from_bits(b));
                out.add_term(sa, sb, r);
                let map = SignedMap::monomial(sa, sb, n);
                for (c, img) in map.0.iter().enumerate() {
                    if let Some((row, s)) = img {
                        let slot = &mut residual[*row as usize * d + c];
                        *slot = if *s > 0 { *slot - r } else { *slot + r };
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `tr(X c*_A c_B)`, read off the entries of `X` hit by the monomial.
pub fn monomial_expectation<T: Scalar>(
    x: &DenseOperator<T>,
    a: OrbitalSet,
    b: OrbitalSet,
) -> Result<Complex<T>> {
    a.check_fits(x.n)?;
    b.check_fits(x.n)?;
    let map = SignedMap::monomial(a, b, x.n);
    Ok(map
        .0
        .iter()
        .enumerate()
        .fold(Complex::zero(), |acc, (c, img)| match img {
            Some((r, s)) => {
                let v = x.get(c, *r as usize);
                if *s > 0 {
                    acc + v
                } else {
                    acc - v
                }
            }
            None => acc,
        }))
}

/// `⟨c*_A c_B, X⟩ = tr((c*_A c_B)* X) = tr(X c*_B c_A)`.
pub fn hs_inner_monomial_dense<T: Scalar>(
    a: OrbitalSet,
    b: OrbitalSet,
    x: &DenseOperator<T>,
) -> Result<Complex<T>> {
    monomial_expectation(x, b, a)
}

/// `tr(X* Y)`.
pub fn hs_inner_dense<T: Scalar>(x: &DenseOperator<T>, y: &DenseOperator<T>) -> Result<Complex<T>> {
    x.hs_inner(y)
}

fn to_nalgebra<T: Scalar>(x: &DenseOperator<T>) -> DMatrix<Complex<f64>> {
    let data: Vec<Complex<f64>> = x.data.iter().map(|v| cast_complex(*v)).collect();
    DMatrix::from_row_slice(x.dim, x.dim, &data)
}

/// Ascending eigenvalues of a Hermitian operator.
pub fn eigenvalues<T: Scalar>(x: &DenseOperator<T>) -> Result<Vec<f64>> {
    let deviation = x.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(FockError::NotHermitian { deviation });
    }
    let eig = nalgebra::SymmetricEigen::new(to_nalgebra(x));
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Smallest eigenvalue of a Hermitian operator.
pub fn min_eigenvalue<T: Scalar>(x: &DenseOperator<T>) -> Result<f64> {
    Ok(eigenvalues(x)?[0])
}

/// Ascending eigenvalues of the Hermitian part of an `m×m` row-major matrix.
pub fn eigenvalues_square(m: usize, data: &[Complex<f64>]) -> Vec<f64> {
    let mat = DMatrix::from_row_slice(m, m, data);
    let h = (&mat + mat.adjoint()) * Complex::new(0.5, 0.0);
    let mut v: Vec<f64> = nalgebra::SymmetricEigen::new(h)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Smallest eigenvalue of the Hermitian part of an `m×m` row-major matrix.
pub fn min_eigenvalue_square(m: usize, data: &[Complex<f64>]) -> f64 {
    eigenvalues_square(m, data)
        .first()
        .copied()
        .unwrap_or(f64::INFINITY)
}

/// `N̂` as a diagonal matrix with entry `|I|` at index `I`.
pub fn number_operator_dense<T: Scalar>(n: usize) -> Result<DenseOperator<T>> {
    let mut m = DenseOperator::zeros(n)?;
    for i in 0..m.dim {
        m.set(
            i,
            i,
            Complex::new(T::from_i64(i.count_ones() as i64), T::zero()),
        );
    }
    Ok(m)
}

/// A positive, trace-one operator on Fock space.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: DenseOperator<f64>,
}

impl DensityMatrix {
    /// Certify Hermiticity, unit trace and `eigenvalues ≥ −1e−12`.
    pub fn new(op: DenseOperator<f64>) -> Result<Self> {
        let deviation = op.hermitian_deviation();
        if deviation > DENSITY_TOL {
            return Err(FockError::NotDensity(format!(
                "not Hermitian (max |X - X*| = {deviation:e})"
            )));
        }
        let tr = op.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(FockError::NotDensity(format!("trace {tr} != 1")));
        }
        let min = min_eigenvalue(&op)?;
        if min < -DENSITY_TOL {
            return Err(FockError::NotDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(DensityMatrix { op })
    }

    /// `|φ_A⟩⟨φ_A|`.
    pub fn pure_slater(n: usize, a: OrbitalSet) -> Result<Self> {
        a.check_fits(n)?;
        let mut op = DenseOperator::zeros(n)?;
        op.set(a.bits() as usize, a.bits() as usize, Complex::one());
        Ok(DensityMatrix { op })
    }

    /// `2⁻ⁿ 𝟙`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        let id = DenseOperator::<f64>::identity(n)?;
        Ok(DensityMatrix {
            op: id.scale(Complex::new(1.0 / (1u64 << n) as f64, 0.0)),
        })
    }

    pub fn op(&self) -> &DenseOperator<f64> {
        &self.op
    }

    pub fn n(&self) -> usize {
        self.op.n
    }

    pub fn into_inner(self) -> DenseOperator<f64> {
        self.op
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::number_operator;

    fn set(ix: &[usize]) -> OrbitalSet {
        OrbitalSet::from_indices(ix, 8).unwrap()
    }

    #[test]
    fn single_mode_creation() {
        let c: DenseOperator<i64> = creation_matrix(1, 1).unwrap();
        assert_eq!(c.get(0, 0), Complex::zero());
        assert_eq!(c.get(1, 0), Complex::new(1, 0));
        assert_eq!(c.get(0, 1), Complex::zero());
        assert_eq!(c.get(1, 1), Complex::zero());
        assert!(creation_matrix::<i64>(2, 1).is_err());
        assert!(creation_matrix::<i64>(0, 1).is_err());
    }

    #[test]
    fn car_exact_integers() {
        for n in 1..=4 {
            let id = DenseOperator::<i64>::identity(n).unwrap();
            let zero = DenseOperator::<i64>::zeros(n).unwrap();
            for i in 1..=n {
                let ci: DenseOperator<i64> = annihilation_matrix(i, n).unwrap();
                let cdi: DenseOperator<i64> = creation_matrix(i, n).unwrap();
                assert_eq!(&cdi * &cdi, zero);
                assert_eq!(ci, cdi.adjoint());
                // Ω is column 0, φ_i is row 2^{i-1}.
                assert_eq!(cdi.get(1 << (i - 1), 0), Complex::new(1, 0));
                for j in 1..=n {
                    let cj: DenseOperator<i64> = annihilation_matrix(j, n).unwrap();
                    let cdj: DenseOperator<i64> = creation_matrix(j, n).unwrap();
                    let expect = if i == j { id.clone() } else { zero.clone() };
                    assert_eq!(ci.anticommutator(&cdj).unwrap(), expect);
                    assert_eq!(ci.anticommutator(&cj).unwrap(), zero);
                }
            }
        }
    }

    #[test]
    fn monomial_is_product_of_elementary_matrices() {
        // c*_{13} c_{2}: c*_1 c*_3 c_2 as an explicit matrix product.
        let n = 3;
        let m: DenseOperator<i64> = monomial_matrix(set(&[1, 3]), set(&[2]), n).unwrap();
        let p = &(&creation_matrix::<i64>(1, n).unwrap() * &creation_matrix(3, n).unwrap())
            * &annihilation_matrix(2, n).unwrap();
        assert_eq!(m, p);
        // c_{12} = c_2 c_1.
        let m: DenseOperator<i64> = monomial_matrix(OrbitalSet::EMPTY, set(&[1, 2]), n).unwrap();
        let p = &annihilation_matrix::<i64>(2, n).unwrap() * &annihilation_matrix(1, n).unwrap();
        assert_eq!(m, p);
    }

    #[test]
    fn poly_to_dense_examples() {
        for n in 1..=4 {
            let id = poly_to_dense(&OperatorPoly::<i64>::identity(n).unwrap()).unwrap();
            assert_eq!(id, DenseOperator::identity(n).unwrap());
            let num = poly_to_dense(&number_operator::<i64>(n).unwrap()).unwrap();
            assert_eq!(num, number_operator_dense(n).unwrap());
        }
    }

    #[test]
    fn hs_inner_examples() {
        for n in 1..=4 {
            let id = DenseOperator::<i64>::identity(n).unwrap();
            let num = number_operator_dense::<i64>(n).unwrap();
            assert_eq!(id.hs_inner(&id).unwrap(), Complex::new(1 << n, 0));
            assert_eq!(
                id.hs_inner(&num).unwrap(),
                Complex::new((n as i64) << (n - 1), 0)
            );
        }
        let a =
            DenseOperator::<i64>::from_fn(2, |r, c| Complex::new(r as i64, c as i64 - 1)).unwrap();
        let b = DenseOperator::<i64>::from_fn(2, |r, c| Complex::new((r * c) as i64, 2)).unwrap();
        assert_eq!(a.hs_inner(&b).unwrap(), conj(b.hs_inner(&a).unwrap()));
    }

    #[test]
    fn dense_to_poly_examples() {
        let n = 2;
        let id = DenseOperator::<i64>::identity(n).unwrap();
        let p = dense_to_poly(&id).unwrap();
        assert_eq!(p, OperatorPoly::identity(n).unwrap());

        // Vacuum projector: Σ_S (−1)^{|S|} c*_S c_S.
        let mut vac = DenseOperator::<i64>::zeros(n).unwrap();
        vac.set(0, 0, Complex::one());
        let p = dense_to_poly(&vac).unwrap();
        assert_eq!(p.len(), 4);
        for s in OrbitalSet::all(n) {
            let expect = if s.len() % 2 == 0 { 1 } else { -1 };
            assert_eq!(p.coeff(s, s), Complex::new(expect, 0));
        }
        assert_eq!(poly_to_dense(&p).unwrap(), vac);

        let m: DenseOperator<i64> = monomial_matrix(set(&[1]), set(&[2]), n).unwrap();
        let p = dense_to_poly(&m).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(set(&[1]), set(&[2])), Complex::one());
    }

    #[test]
    fn eigenvalue_examples() {
        for n in 1..=4 {
            let num = number_operator_dense::<f64>(n).unwrap();
            assert!(min_eigenvalue(&num).unwrap().abs() < 1e-9);
            let neg = num.scale(Complex::new(-1.0, 0.0));
            assert!((min_eigenvalue(&neg).unwrap() + n as f64).abs() < 1e-9);
            let id = DenseOperator::<f64>::identity(n).unwrap();
            assert!((min_eigenvalue(&id).unwrap() - 1.0).abs() < 1e-9);
        }
        let c: DenseOperator<f64> = creation_matrix(1, 2).unwrap();
        assert!(matches!(
            min_eigenvalue(&c),
            Err(FockError::NotHermitian { .. })
        ));
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::maximally_mixed(3).is_ok());
        assert!(DensityMatrix::pure_slater(2, set(&[1])).is_ok());
        let id = DenseOperator::<f64>::identity(2).unwrap();
        assert!(DensityMatrix::new(id).is_err());
        let mut bad = DenseOperator::<f64>::zeros(1).unwrap();
        bad.set(0, 0, Complex::new(2.0, 0.0));
        bad.set(1, 1, Complex::new(-1.0, 0.0));
        assert!(DensityMatrix::new(bad).is_err());
    }

    #[test]
    fn monomial_expectation_matches_trace_of_product() {
        let n = 3;
        let x = DenseOperator::<i64>::from_fn(n, |r, c| {
            Complex::new((r * 7 + c) as i64 % 5 - 2, (r + 3 * c) as i64 % 3 - 1)
        })
        .unwrap();
        for a in OrbitalSet::all(n) {
            for b in OrbitalSet::all(n) {
                let m: DenseOperator<i64> = monomial_matrix(a, b, n).unwrap();
                assert_eq!(
                    monomial_expectation(&x, a, b).unwrap(),
                    x.matmul(&m).unwrap().trace()
                );
                assert_eq!(
                    hs_inner_monomial_dense(a, b, &x).unwrap(),
                    m.hs_inner(&x).unwrap()
                );
            }
        }
    }

    #[test]
    fn size_cap() {
        assert!(DenseOperator::<f64>::zeros(9).is_err());
        assert!(poly_to_dense(&OperatorPoly::<i64>::identity(9).unwrap()).is_err());
    }
}
