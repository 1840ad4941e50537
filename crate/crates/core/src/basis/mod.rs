//! Orthonormal operator bases: the occupation-polynomial family `𝔅` with its
//! k-body truncations, its self-adjoint real form `𝔅ᴿ`, and the Majorana
//! product family `𝔅̃`.
//!
//! Elements are stored as a Gaussian-integer polynomial times an exact
//! normalization `2^{−h/2}`; floating values appear only on conversion.

mod families;
mod majorana;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::dense::{poly_to_dense, DenseOperator};
use crate::error::{FockError, Result};
use crate::fock::{check_orbital_count, OperatorPoly, OrbitalSet};
use crate::scalar::Real;
use crate::MAX_ORBITALS;

pub use families::{
    b_indices, bk_indices, breal_indices, build_bk, build_element, element_b, enumerate_basis,
    enumerate_basis_b, enumerate_basis_bk, enumerate_basis_breal,
};
pub use majorana::{
    basis_intersection_check, build_majorana, build_majorana_product, enumerate_basis_majorana,
    expected_intersection_ids, majorana_adjoint_sign, majorana_gram_algebraic, majorana_indices,
    majorana_mul, majorana_trace_algebraic, MajoranaSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    B,
    BReal,
    Majorana,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::B => "B",
            Family::BReal => "BR",
            Family::Majorana => "M",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = FockError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" => Ok(Family::B),
            "BR" => Ok(Family::BReal),
            "M" => Ok(Family::Majorana),
            other => Err(FockError::UnknownId(format!("unknown family `{other}`"))),
        }
    }
}

/// Sign of the antisymmetric partner in a real basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    /// `b_K (c_{I,J} + c_{J,I})`.
    Plus,
    /// `−i b_K (c_{I,J} − c_{J,I})`.
    Minus,
}

impl Parity {
    fn symbol(self) -> char {
        match self {
            Parity::Plus => '+',
            Parity::Minus => '-',
        }
    }
}

/// Index data identifying a basis element within its family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    /// `b_K c_{I,J}` with `K, I, J` pairwise disjoint.
    B {
        k: OrbitalSet,
        i: OrbitalSet,
        j: OrbitalSet,
    },
    /// `parity = None` is the element `b_K` (then `I = J = ∅`); otherwise `I < J`.
    BReal {
        k: OrbitalSet,
        i: OrbitalSet,
        j: OrbitalSet,
        parity: Option<Parity>,
    },
    /// `a_J`, `J ⊆ {1..2n}`.
    Majorana { j: MajoranaSet },
}

impl BasisIndex {
    pub fn family(&self) -> Family {
        match self {
            BasisIndex::B { .. } => Family::B,
            BasisIndex::BReal { .. } => Family::BReal,
            BasisIndex::Majorana { .. } => Family::Majorana,
        }
    }

    /// Particle degree `l`: the element is an `l`-particle operator.
    pub fn degree(&self) -> Option<usize> {
        let twice = match self {
            BasisIndex::B { k, i, j } | BasisIndex::BReal { k, i, j, .. } => {
                (i.len() + j.len() + 2 * k.len()) as usize
            }
            BasisIndex::Majorana { j } => j.len(),
        };
        (twice % 2 == 0).then_some(twice / 2)
    }

    /// Membership in the `k`-body truncation.
    pub fn in_kbody(&self, k: usize) -> bool {
        self.degree().is_some_and(|l| l <= k)
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    /// Largest orbital / Majorana index referenced, for range checks.
    fn check_fits(&self, n: usize) -> Result<()> {
        match self {
            BasisIndex::B { k, i, j } | BasisIndex::BReal { k, i, j, .. } => {
                for s in [k, i, j] {
                    s.check_fits(n)?;
                }
                Ok(())
            }
            BasisIndex::Majorana { j } => j.check_fits(n),
        }
    }

    /// Structural validity for orbital count `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        check_orbital_count(n, MAX_ORBITALS)?;
        self.check_fits(n)?;
        match *self {
            BasisIndex::B { k, i, j } => disjoint3(k, i, j),
            BasisIndex::BReal { k, i, j, parity } => {
                disjoint3(k, i, j)?;
                match parity {
                    None if !(i.is_empty() && j.is_empty()) => Err(FockError::UnknownId(format!(
                        "real occupation element requires I = J = ∅, got I={i} J={j}"
                    ))),
                    Some(_) if i.bits() >= j.bits() => Err(FockError::UnknownId(format!(
                        "real element requires I < J, got I={i} J={j}"
                    ))),
                    _ => Ok(()),
                }
            }
            BasisIndex::Majorana { .. } => Ok(()),
        }
    }
}

fn disjoint3(k: OrbitalSet, i: OrbitalSet, j: OrbitalSet) -> Result<()> {
    if k.is_disjoint(i) && k.is_disjoint(j) && i.is_disjoint(j) {
        Ok(())
    } else {
        Err(FockError::Overlap(format!("K={k} I={i} J={j}")))
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::B { k, i, j } => write!(f, "B:K={k};I={i};J={j}"),
            BasisIndex::BReal {
                k,
                i,
                j,
                parity: None,
            } => write!(f, "BR:K={k};I={i};J={j}"),
            BasisIndex::BReal {
                k,
                i,
                j,
                parity: Some(p),
            } => write!(f, "BR:{}:K={k};I={i};J={j}", p.symbol()),
            BasisIndex::Majorana { j } => write!(f, "M:J={j}"),
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| FockError::UnknownId(format!("expected bracketed list, got `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let v = inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| FockError::UnknownId(format!("bad index `{t}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FockError::UnknownId(format!(
            "indices must be strictly increasing in `{s}`"
        )));
    }
    Ok(v)
}

fn parse_field<'a>(part: Option<&'a str>, key: &str, whole: &str) -> Result<&'a str> {
    part.and_then(|p| p.strip_prefix(key))
        .and_then(|p| p.strip_prefix('='))
        .ok_or_else(|| FockError::UnknownId(format!("missing `{key}=` in `{whole}`")))
}

/// Parse an identifier (`B:K=[2];I=[1];J=[3]`, `BR:+:K=[];I=[1];J=[2]`,
/// `M:J=[1,4]`) and validate it for orbital count `n`.
pub fn parse_id(s: &str, n: usize) -> Result<BasisIndex> {
    let s = s.trim();
    let (tag, rest) = s
        .split_once(':')
        .ok_or_else(|| FockError::UnknownId(format!("missing family tag in `{s}`")))?;
    let family: Family = tag.parse()?;
    let orbitals = |v: Vec<usize>| OrbitalSet::from_indices(&v, n);
    let kij = |body: &str| -> Result<(OrbitalSet, OrbitalSet, OrbitalSet)> {
        let mut parts = body.split(';');
        let k = orbitals(parse_list(parse_field(parts.next(), "K", s)?)?)?;
        let i = orbitals(parse_list(parse_field(parts.next(), "I", s)?)?)?;
        let j = orbitals(parse_list(parse_field(parts.next(), "J", s)?)?)?;
        if parts.next().is_some() {
            return Err(FockError::UnknownId(format!("trailing fields in `{s}`")));
        }
        Ok((k, i, j))
    };
    let index = match family {
        Family::B => {
            let (k, i, j) = kij(rest)?;
            BasisIndex::B { k, i, j }
        }
        Family::BReal => {
            let (parity, body) = match rest.split_once(':') {
                Some(("+", b)) => (Some(Parity::Plus), b),
                Some(("-", b)) => (Some(Parity::Minus), b),
                Some((p, _)) => {
                    return Err(FockError::UnknownId(format!("bad parity `{p}` in `{s}`")))
                }
                None => (None, rest),
            };
            let (k, i, j) = kij(body)?;
            BasisIndex::BReal { k, i, j, parity }
        }
        Family::Majorana => {
            let list = parse_list(parse_field(Some(rest), "J", s)?)?;
            BasisIndex::Majorana {
                j: MajoranaSet::from_indices(&list, n)?,
            }
        }
    };
    index.validate(n)?;
    Ok(index)
}

/// Exact normalization factor `2^{−half_exponent/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Normalization {
    pub half_exponent: u32,
}

impl Normalization {
    pub fn new(half_exponent: u32) -> Self {
        Normalization { half_exponent }
    }

    pub fn value<T: Real>(self) -> T {
        T::from(2.0f64.powf(-(self.half_exponent as f64) / 2.0)).expect("finite")
    }

    /// `1 / factor²`, the squared HS norm the raw polynomial must carry.
    pub fn inverse_square(self) -> u64 {
        1u64 << self.half_exponent
    }
}

/// A normalized basis element: `normalization · raw`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement {
    pub n: usize,
    pub index: BasisIndex,
    pub normalization: Normalization,
    /// Un-normalized polynomial with Gaussian-integer coefficients.
    pub raw: OperatorPoly<i64>,
}

impl BasisElement {
    pub fn family(&self) -> Family {
        self.index.family()
    }

    pub fn id(&self) -> String {
        self.index.id()
    }

    pub fn to_poly<T: Real>(&self) -> OperatorPoly<T> {
        let s = self.normalization.value::<T>();
        self.raw
            .map_coeffs(|c| Complex::new(T::from(c.re).unwrap() * s, T::from(c.im).unwrap() * s))
    }

    pub fn to_dense<T: Real>(&self) -> Result<DenseOperator<T>> {
        poly_to_dense(&self.to_poly::<T>())
    }

    /// Exact equality of the normalized operators.
    pub fn value_eq(&self, other: &BasisElement) -> bool {
        if self.n != other.n {
            return false;
        }
        let (h1, h2) = (
            self.normalization.half_exponent,
            other.normalization.half_exponent,
        );
        if (h1 + h2) % 2 == 1 {
            // Ratio 2^{odd/2} is irrational; nonzero integer polys cannot match.
            return self.raw.is_empty() && other.raw.is_empty();
        }
        let (lo, hi, shift) = if h1 <= h2 {
            (&self.raw, &other.raw, (h2 - h1) / 2)
        } else {
            (&other.raw, &self.raw, (h1 - h2) / 2)
        };
        // lo · 2^{-lo_h/2} = hi · 2^{-hi_h/2}  ⇔  lo · 2^{shift} = hi.
        let f = Complex::new(1i64 << shift, 0);
        lo.len() == hi.len() && lo.scale(f) == *hi
    }
}

/// The k-body operator space `O_k` over `n` orbitals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KBodySpace {
    pub n: usize,
    pub k: usize,
    pub dim: u64,
}

impl KBodySpace {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        Ok(KBodySpace {
            n,
            k,
            dim: dim_kbody(n, k)?,
        })
    }
}

fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn check_k(n: usize, k: usize) -> Result<()> {
    if k > n {
        Err(FockError::InvalidK { k, n })
    } else {
        Ok(())
    }
}

/// `Σ_{l=0}^{k} C(2n, 2l)`, cross-checked against `Σ_l Σ_i C(n,i) C(n,2l−i)`.
pub fn dim_kbody(n: usize, k: usize) -> Result<u64> {
    check_orbital_count(n, MAX_ORBITALS)?;
    check_k(n, k)?;
    let (n, k) = (n as u64, k as u64);
    let direct: u64 = (0..=k).map(|l| binomial(2 * n, 2 * l)).sum();
    let split: u64 = (0..=k)
        .map(|l| {
            (0..=2 * l)
                .map(|i| binomial(n, i) * binomial(n, 2 * l - i))
                .sum::<u64>()
        })
        .sum();
    assert_eq!(direct, split, "binomial convolution mismatch");
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_kbody(3, 0).unwrap(), 1);
        assert_eq!(dim_kbody(3, 1).unwrap(), 16);
        assert_eq!(dim_kbody(4, 2).unwrap(), 99);
        assert!(dim_kbody(3, 4).is_err());
        for n in 1..=16 {
            // Even-index binomials of 2n sum to 2^{2n-1}.
            assert_eq!(dim_kbody(n, n).unwrap(), 1u64 << (2 * n - 1));
        }
    }

    #[test]
    fn ids_round_trip() {
        for s in [
            "B:K=[2];I=[1];J=[3]",
            "BR:+:K=[];I=[1];J=[2]",
            "BR:-:K=[3];I=[];J=[1,2]",
            "BR:K=[1,2];I=[];J=[]",
            "M:J=[1,4,5,6]",
            "M:J=[]",
        ] {
            assert_eq!(parse_id(s, 3).unwrap().id(), s);
        }
        for bad in [
            "B:K=[1];I=[1];J=[]",
            "BR:+:K=[];I=[2];J=[1]",
            "BR:K=[];I=[1];J=[]",
            "M:J=[7]",
            "X:J=[]",
            "B:K=[2,1];I=[];J=[]",
            "B:K=[];I=[]",
        ] {
            assert!(parse_id(bad, 3).is_err(), "{bad}");
        }
    }
}
