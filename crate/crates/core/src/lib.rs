//! Orthonormal bases of the Hilbert-Schmidt space of operators on a finite
//! fermion Fock space, closed-form trace formulas for normal-ordered
//! monomials, and orthogonal projections onto k-body operator spaces.
//!
//! Everything combinatorial (signs, inner products, basis construction) is
//! exact integer arithmetic on bitmask-encoded orbital subsets. The
//! [`dense`] module realizes every operator as an explicit `2ⁿ×2ⁿ` matrix and
//! serves as the brute-force oracle the combinatorial routes are checked
//! against.
//!
//! Coefficient types are generic over the real scalar `T` (see [`Scalar`]);
//! operators carry `Complex<T>` coefficients. `i64` gives the exact
//! Gaussian-integer path, `f64` the floating path. The aliases below name the
//! two instantiations used throughout.

pub mod basis;
pub mod dense;
pub mod error;
pub mod fock;
pub mod hamiltonian;
pub mod projection;
pub mod random;
pub mod scalar;
pub mod trace;
pub mod verify;

pub use num_complex::Complex;

pub use basis::{BasisElement, BasisIndex, Family, KBodySpace, Normalization, Parity};
pub use dense::{DenseOperator, DensityMatrix};
pub use error::{FockError, Result};
pub use fock::{CanonicalMonomial, FockVector, OperatorPoly, OrbitalSet};
pub use scalar::{Real, Scalar};

/// Complex double.
pub type C64 = Complex<f64>;
/// Floating-point operator polynomial.
pub type Poly = OperatorPoly<f64>;
/// Operator polynomial with Gaussian-integer coefficients.
pub type ExactPoly = OperatorPoly<i64>;
/// Floating-point dense operator.
pub type Dense = DenseOperator<f64>;
/// Dense operator with Gaussian-integer entries.
pub type ExactDense = DenseOperator<i64>;
/// Single-precision dense operator.
pub type Dense32 = DenseOperator<f32>;

/// Largest orbital count supported by the combinatorial path.
pub const MAX_ORBITALS: usize = 16;
/// Largest orbital count for which dense `2ⁿ×2ⁿ` realizations are built.
pub const MAX_DENSE_ORBITALS: usize = 8;
