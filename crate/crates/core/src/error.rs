use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("objects live over different groups")]
    GroupMismatch,
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("the group has no subgroup of index two")]
    NoIndexTwoSubgroup,
    #[error("sublattice is not stable under the group action")]
    NotStable,
    #[error("sublattice is not saturated; the quotient would have torsion")]
    NotSaturated,
    #[error("cohomological degree {0} is not supported (expected 0, 1 or 2)")]
    DegreeOutOfRange(u32),
    #[error("module is not finite")]
    NotFinite,
    #[error("enumeration needs {candidates} candidates, above the limit of {limit}")]
    EnumerationTooLarge { candidates: u128, limit: u128 },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} ramifies in the splitting field")]
    Ramified(u64),
    #[error("L(s, chi) has a pole at s = 1 for the trivial character")]
    Pole,
    #[error("real classification needs a splitting group of order at most 2, got {0}")]
    SplittingTooLarge(usize),
    #[error("incompatible splitting data: {0}")]
    IncompatibleSplitting(String),
    #[error("torus was not built as a restriction of scalars")]
    NotResTorus,
    #[error("operation needs an arithmetic (cyclotomic) splitting datum")]
    NoArithmeticDatum,
    #[error("quadrature grid too coarse: estimated relative error {0:e}")]
    GridTooCoarse(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Coarse classification used by front-ends to map errors onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The request was malformed.
    Invalid,
    /// Well-formed, but outside what the library computes.
    Unsupported,
    /// A bug: some invariant that must hold for valid input did not.
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Ramified(_)
            | Error::Pole
            | Error::SplittingTooLarge(_)
            | Error::NoArithmeticDatum
            | Error::EnumerationTooLarge { .. }
            | Error::NotResTorus
            | Error::NotFinite => ErrorKind::Unsupported,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Invalid,
        }
    }
}
