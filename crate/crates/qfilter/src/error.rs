//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction and synthesis operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A matrix or state dimension outside the supported set {1, 2, 4, 8},
    /// or a Kronecker product that would exceed 8×8.
    #[error("unsupported dimension: {0}")]
    Dimension(String),

    /// A matrix entry or amplitude is NaN or infinite.
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    /// A state vector that must be normalized is not.
    #[error("state not normalized: |norm - 1| = {0:.3e}")]
    NotNormalized(f64),

    /// Subsystem labels do not match between an operation and its operands.
    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    /// A matrix expected to be unitary is not, within tolerance.
    #[error("matrix not unitary: residual {0:.3e}")]
    NotUnitary(f64),

    /// An angle parameter lies outside its documented range.
    #[error("angle out of range: {0}")]
    AngleRange(String),

    /// The two measurement operators do not satisfy the completeness
    /// relation M0†M0 + M1†M1 = I.
    #[error("POVM completeness violated: residual {0:.3e}")]
    IncompletePovm(f64),

    /// Inner-product magnitudes of source and target vector pairs differ, so
    /// no unitary can connect them.
    #[error("no connecting unitary: |<s0|s1>| = {source_overlap:.6} vs |<t0|t1>| = {target_overlap:.6}")]
    InfeasibleConnection {
        source_overlap: f64,
        target_overlap: f64,
    },

    /// Conversion requested against the majorization direction.
    #[error("not convertible (phi ≻ psi violated): {0}")]
    NotConvertible(String),

    /// Dilution requested against the majorization direction, or from a
    /// product state.
    #[error("not dilutable: {0}")]
    NotDilutable(String),

    /// The product-state constraint residual exceeds the acceptance
    /// tolerance, so the success amplitude is undefined at this frame.
    #[error("constraint not satisfied: residual {0:.3e}")]
    ConstraintNotSatisfied(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
