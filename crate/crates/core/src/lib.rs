//! Power-type bivariate means and their sharp comparison exponents.
//!
//! For a symmetric mean `M` and real `p`, the power-type mean is
//! `M_p(a, b) = M(a^p, b^p)^(1/p)` with `M_0 = sqrt(ab)`. The crate covers
//! ten base means (arithmetic, geometric, Heronian, logarithmic, identric,
//! both Seiffert means, Neuman-Sándor, power-exponential and
//! exponential-geometric) and provides:
//!
//! - [`means`]: accurate evaluation of `M_p`, endpoint limits and the
//!   rescaling identity `M_{pt}(a, b)^t = M_p(a^t, b^t)`;
//! - [`jet`] and [`series`]: truncated Taylor arithmetic and the diagonal
//!   expansions of every mean in `t = x - 1`;
//! - [`sharp`]: the `(x - 1)^2` coefficient of a difference of means as a
//!   function of `p`, its root (the sharp exponent) and sharpness scans;
//! - [`verify`]: inequality chains, monotonicity in `p`, and the auxiliary
//!   functions used to establish the sharp bounds;
//! - [`cli`]: the `powmean` command-line front end.

pub mod cli;
pub mod error;
pub mod grid;
pub mod jet;
pub mod kind;
pub mod means;
pub mod series;
pub mod sharp;
pub mod verify;

pub use error::{Error, Result};
pub use jet::{Elementary, Jet};
pub use kind::{MeanKind, PowerTypeSpec};
pub use means::{
    diagonal_weights, endpoint_limit, mean_eval, power_type_eval, rescaling_identity_residual,
    DiagonalWeights, MeanValue,
};
pub use series::{mean_series, power_type_series};
