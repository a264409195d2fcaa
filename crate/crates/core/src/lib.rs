// `!(x > 0.0)` guards reject NaN alongside bad values; series coefficients keep full published precision.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::needless_range_loop)]

pub mod bls;
pub mod cli;
pub mod datakit;
pub mod error;
pub mod estimation;
pub mod generators;
pub mod montecarlo;
pub mod optim;
pub mod quad;
pub mod specfun;
pub mod stats;

pub use error::{Error, Result};
