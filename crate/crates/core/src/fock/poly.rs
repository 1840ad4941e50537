use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::monomial::CanonicalMonomial;
use super::set::{check_orbital_count, OrbitalSet};
use super::sign::insertion_sign;
use crate::error::{FockError, Result};
use crate::scalar::{abs_f64, cast_complex, conj, signed, Scalar};
use crate::MAX_ORBITALS;

type Key = (OrbitalSet, OrbitalSet);

/// A linear combination `Σ x_{A,B} c*_A c_B` in canonical normal-ordered form.
///
/// At most one coefficient per `(A, B)` key and no zero coefficients. Terms
/// iterate in ascending `(A, B)` bitmask order.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorPoly<T> {
    n: usize,
    terms: BTreeMap<Key, Complex<T>>,
}

fn parity(p: u32) -> i32 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl<T: Scalar> OperatorPoly<T> {
    pub fn zero(n: usize) -> Result<Self> {
        check_orbital_count(n, MAX_ORBITALS)?;
        Ok(OperatorPoly {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::monomial(n, OrbitalSet::EMPTY, OrbitalSet::EMPTY, Complex::one())
    }

    pub fn monomial(n: usize, a: OrbitalSet, b: OrbitalSet, coeff: Complex<T>) -> Result<Self> {
        let mut p = Self::zero(n)?;
        a.check_fits(n)?;
        b.check_fits(n)?;
        p.add_term(a, b, coeff);
        Ok(p)
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (OrbitalSet, OrbitalSet, Complex<T>)>,
    {
        let mut p = Self::zero(n)?;
        for (a, b, c) in terms {
            a.check_fits(n)?;
            b.check_fits(n)?;
            p.add_term(a, b, c);
        }
        Ok(p)
    }

    pub fn from_monomials<I>(n: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = CanonicalMonomial<T>>,
    {
        Self::from_terms(
            n,
            monomials
                .into_iter()
                .map(|m| (m.creators, m.annihilators, m.coeff)),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (OrbitalSet, OrbitalSet, Complex<T>)> + '_ {
        self.terms.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn coeff(&self, a: OrbitalSet, b: OrbitalSet) -> Complex<T> {
        self.terms
            .get(&(a, b))
            .copied()
            .unwrap_or_else(Complex::zero)
    }

    /// Accumulate `c · c*_A c_B`, pruning the key if it cancels.
    pub fn add_term(&mut self, a: OrbitalSet, b: OrbitalSet, c: Complex<T>) {
        debug_assert!(a.fits(self.n) && b.fits(self.n));
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(Complex::zero);
        *slot = *slot + c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    /// `(c*_A c_B)* = c*_B c_A`: swap keys, conjugate coefficients.
    pub fn adjoint(&self) -> Self {
        OperatorPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), &c)| ((b, a), conj(c)))
                .collect(),
        }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = OperatorPoly {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (a, b, c) in self.terms() {
            out.add_term(a, b, c * s);
        }
        out
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(Complex<T>) -> Complex<U>) -> OperatorPoly<U> {
        let mut out = OperatorPoly {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (a, b, c) in self.terms() {
            out.add_term(a, b, f(c));
        }
        out
    }

    pub fn cast<U: Scalar>(&self) -> OperatorPoly<U> {
        self.map_coeffs(cast_complex)
    }

    /// `c*_i · self` for the orbital at bit position `pos`.
    pub fn left_mul_creation(&self, pos: u32) -> Self {
        let bit = OrbitalSet::from_bits(1 << pos);
        let mut out = OperatorPoly {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (c, d, q) in self.terms() {
            if c.contains_bit(pos) {
                continue;
            }
            out.add_term(c | bit, d, signed(q, insertion_sign(pos, c)));
        }
        out
    }

    /// `c_i · self` for the orbital at bit position `pos`.
    ///
    /// `c_i c*_C = 𝟙(i ∈ C)(−1)^{|{c<i}|} c*_{C∖i} + (−1)^{|C|} c*_C c_i` and
    /// `c_i c_D = 𝟙(i ∉ D)(−1)^{|{d>i}|} c_{D∪i}`.
    pub fn left_mul_annihilation(&self, pos: u32) -> Self {
        let bit = OrbitalSet::from_bits(1 << pos);
        let mut out = OperatorPoly {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (c, d, q) in self.terms() {
            if c.contains_bit(pos) {
                out.add_term(c - bit, d, signed(q, parity(c.count_below(pos))));
            }
            if !d.contains_bit(pos) {
                let s = parity(c.len()) * parity(d.count_above(pos));
                out.add_term(c, d | bit, signed(q, s));
            }
        }
        out
    }

    /// `c*_A c_B · self`.
    pub fn left_mul_monomial(&self, a: OrbitalSet, b: OrbitalSet) -> Self {
        let mut r = self.clone();
        for p in b.positions() {
            r = r.left_mul_annihilation(p);
        }
        let pa: Vec<u32> = a.positions().collect();
        for &p in pa.iter().rev() {
            r = r.left_mul_creation(p);
        }
        r
    }

    /// Normal-ordered product `self · other`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = OperatorPoly {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (a, b, c) in self.terms() {
            let r = other.left_mul_monomial(a, b);
            for (x, y, v) in r.terms() {
                out.add_term(x, y, c * v);
            }
        }
        Ok(out)
    }

    /// `{self, other} = self·other + other·self`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.product(other)? + &other.product(self)?)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.product(other)? - &other.product(self)?)
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(FockError::DimensionMismatch {
                expected: self.n,
                found: other.n,
            })
        }
    }

    /// `max |x_{A,B} − y_{A,B}|` over the union of keys.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        let mut m: f64 = 0.0;
        for (a, b, c) in self.terms() {
            m = m.max(abs_f64(c - other.coeff(a, b)));
        }
        for (a, b, c) in other.terms() {
            if !self.terms.contains_key(&(a, b)) {
                m = m.max(abs_f64(c));
            }
        }
        m
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Largest `|A| + |B|` over all terms, `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms().map(|(a, b, _)| a.len() + b.len()).max()
    }

    /// Membership in `O_k`: every term has even `|A| + |B| ≤ 2k`.
    pub fn is_kbody(&self, k: usize) -> bool {
        self.terms().all(|(a, b, _)| {
            let d = a.len() + b.len();
            d % 2 == 0 && d as usize <= 2 * k
        })
    }
}

impl<T: Scalar> Add for &OperatorPoly<T> {
    type Output = OperatorPoly<T>;
    /// Panics if the orbital counts differ.
    fn add(self, rhs: Self) -> OperatorPoly<T> {
        assert_eq!(self.n, rhs.n, "orbital count mismatch");
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(a, b, c);
        }
        out
    }
}

impl<T: Scalar> Sub for &OperatorPoly<T> {
    type Output = OperatorPoly<T>;
    /// Panics if the orbital counts differ.
    fn sub(self, rhs: Self) -> OperatorPoly<T> {
        assert_eq!(self.n, rhs.n, "orbital count mismatch");
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(a, b, -c);
        }
        out
    }
}

impl<T: Scalar> Neg for &OperatorPoly<T> {
    type Output = OperatorPoly<T>;
    fn neg(self) -> OperatorPoly<T> {
        self.map_coeffs(|c| -c)
    }
}

impl<T: Scalar> Mul for &OperatorPoly<T> {
    type Output = OperatorPoly<T>;
    /// Panics if the orbital counts differ; see [`OperatorPoly::product`].
    fn mul(self, rhs: Self) -> OperatorPoly<T> {
        self.product(rhs).expect("orbital count mismatch")
    }
}

/// `N̂ = Σᵢ c*ᵢ cᵢ`.
pub fn number_operator<T: Scalar>(n: usize) -> Result<OperatorPoly<T>> {
    OperatorPoly::from_terms(
        n,
        (1..=n).map(|i| {
            let s = OrbitalSet::singleton(i);
            (s, s, Complex::one())
        }),
    )
}
