use thiserror::Error;

/// Failures shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("jet order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("pole: numerator vanishes to order {num}, denominator to order {den}")]
    Pole { num: usize, den: usize },
    #[error("not available: {0}")]
    NotAvailable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no sign change of c2 on [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
