use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("orbital count {n} outside supported range 1..={max}")]
    OrbitalCount { n: usize, max: usize },
    #[error("orbital index {index} outside 1..={n}")]
    OrbitalIndex { index: usize, n: usize },
    #[error("set {set} does not fit in {n} orbitals")]
    SetOutOfRange { set: String, n: usize },
    #[error("orbital sets must be pairwise disjoint: {0}")]
    Overlap(String),
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("k = {k} outside 0..={n}")]
    InvalidK { k: usize, n: usize },
    #[error("Majorana index {j} outside 1..={max}")]
    MajoranaIndex { j: usize, max: usize },
    #[error("operator is not Hermitian (max |X - X*| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("not a density matrix: {0}")]
    NotDensity(String),
    #[error(
        "density matrix does not commute with the number operator (max |[rho, N]| = {deviation:e})"
    )]
    NotNumberPreserving { deviation: f64 },
    #[error("two-body integrals violate symmetry: {0}")]
    Symmetry(String),
    #[error("two-body potential is not positive semidefinite (min eigenvalue {min_eig:e})")]
    NotRepulsive { min_eig: f64 },
    #[error("unknown basis element id `{0}`")]
    UnknownId(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = FockError> = std::result::Result<T, E>;
