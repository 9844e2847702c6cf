use thiserror::Error;

/// Errors for operations whose preconditions depend on caller-supplied data.
///
/// Violations of internal invariants (inexact division, singular Gram
/// matrices, mismatched cross-checks) are bugs, not recoverable conditions,
/// and panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("fundamental coefficients must be nonnegative, got {0}")]
    NegativeCoefficient(i64),
    #[error("weights lie in different cosets of the root lattice")]
    CosetMismatch,
    #[error("weight is not in the weight lattice")]
    NotInWeightLattice,
    #[error("polynomial is not invariant under the Weyl group")]
    NotWInvariant,
    #[error("support contains a weight outside the weight lattice")]
    HalfWeightSupport,
    #[error("k must be a positive integer, got {0}")]
    InvalidK(i64),
}
