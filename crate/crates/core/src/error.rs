use alloc::vec::Vec;

use crate::poly::MultiPoly;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("generator {index} is not invertible over the rationals")]
    NonInvertibleGenerator { index: usize },

    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureExceedsCap { cap: usize },

    #[error("phase polynomial has terms that are not linear in xi")]
    NotXiLinear,

    /// `difference` is `obj - act(element, obj)`, one polynomial per component.
    #[error("object is not invariant under group element {element}")]
    NotInvariant {
        element: usize,
        difference: Vec<MultiPoly>,
    },

    #[error("no solution in degree {degree}: generating set does not span the target")]
    NoSolution { degree: u32 },

    #[error(
        "degree {degree}: computed dimension {found} disagrees with Molien coefficient {expected}"
    )]
    DimensionMismatchWithMolien {
        degree: u32,
        expected: usize,
        found: usize,
    },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("invariant generators belong to a different group")]
    GroupMismatch,

    #[error("integration parameters must be positive and finite")]
    InvalidIntegration,

    #[error("state became non-finite at t = {time}")]
    NonFiniteState { time: f64 },

    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::VariableCountMismatch { .. } => "VariableCountMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NonInvertibleGenerator { .. } => "NonInvertibleGenerator",
            Error::ClosureExceedsCap { .. } => "ClosureExceedsCap",
            Error::NotXiLinear => "NotXiLinear",
            Error::NotInvariant { .. } => "NotInvariant",
            Error::NoSolution { .. } => "NoSolution",
            Error::DimensionMismatchWithMolien { .. } => "DimensionMismatchWithMolien",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::GroupMismatch => "GroupMismatch",
            Error::InvalidIntegration => "InvalidIntegration",
            Error::NonFiniteState { .. } => "NonFiniteState",
            Error::Internal(_) => "Internal",
        }
    }
}
