use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("angles {0} do not form a spherical triangle (angle sum must exceed π)")]
    NotSpherical(String),

    #[error("tiling did not close within a budget of {budget} tiles")]
    NonClosing { budget: usize },

    #[error("case {case_id} admits no constant-curvature tiling")]
    NoTiling { case_id: u32 },

    #[error("unsupported case {case_id}: {reason}")]
    UnsupportedCase { case_id: u32, reason: String },

    #[error("non-generic configuration: {0}")]
    NonGeneric(String),

    #[error("growth fit undefined: {0}")]
    UndefinedFit(String),
}
