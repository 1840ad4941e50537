//! Orbital subsets, Slater basis vectors, sign calculus and the action of
//! normal-ordered monomials `c*_A c_B` on Fock vectors.
//!
//! Orbitals are 1-based at every public boundary (`from_indices`,
//! `indices`, `Display`) and 0-based bit positions internally.

mod monomial;
mod poly;
mod set;
mod sign;
mod vector;

pub use monomial::{apply_monomial, canonical_to_triple, monomial_to_canonical, CanonicalMonomial};
pub use poly::{number_operator, OperatorPoly};
pub use set::{check_orbital_count, OrbitalSet, Submasks};
pub use sign::{apply_annihilation, apply_creation, insertion_sign, multi_sign};
pub use vector::{FockVector, Storage};
