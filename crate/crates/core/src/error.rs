use thiserror::Error;

use crate::quiver::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid quiver: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Validation(Vec<Diagnostic>),
    #[error("instance too large: {what} = {size} exceeds bound {bound}")]
    TooLarge { what: &'static str, size: u64, bound: u64 },
    #[error("non-generic loading: {0}")]
    NonGeneric(String),
    #[error("loadings carry different dimension vectors")]
    WeightMismatch,
    #[error("permutation incompatible with labels")]
    LabelMismatch,
    #[error("non-adjacent strands")]
    NonAdjacent,
    #[error("strand index {index} out of range for {len} strands")]
    StrandOutOfRange { index: usize, len: usize },
    #[error("not in algebra span: {0}")]
    NotInSpan(String),
    #[error("not a weight-zero loop")]
    NotWeightZeroLoop,
    #[error("edge polynomial not divisible by (u-v)")]
    NotDivisible,
    #[error("edge polynomial quotient is not symmetric")]
    NotSymmetric,
    #[error("degenerate interpolation: {0}")]
    DegenerateInterpolation(String),
    #[error("loading not found in chamber set")]
    NotInChamberSet,
    #[error("no Crawley-Boevey vertex")]
    NoCbVertex,
    #[error("Crawley-Boevey vertex multiplicity is {0}, expected 1")]
    CbMultiplicity(u32),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(u32, u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
