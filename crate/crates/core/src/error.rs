use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The measured state has (numerically) no weight on the projector
    /// support, so the outcome cannot occur.
    #[error("outcome cannot occur: q = {q:e} on the projector support")]
    OutcomeImpossible { q: f64 },
    #[error("efficiency is undefined for rank == dim (d = {dim}): I(m) = 1 - F(m) = 0")]
    UndefinedEfficiency { dim: usize },
    #[error("hyperspherical quadrature supports dim <= {max}, got {dim}")]
    UnsupportedDimension { dim: usize, max: usize },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// Checks `1 <= rank <= dim`.
pub(crate) fn check_rank(dim: usize, rank: usize) -> Result<()> {
    if dim == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    if rank == 0 || rank > dim {
        return Err(invalid(format!("rank must lie in 1..={dim}, got {rank}")));
    }
    Ok(())
}
