//! Brauer-Manin analysis of the affine cubic surfaces `f(u1) + f(u2) + f(u3) = n`
//! for a monic integer cubic `f`.

pub mod algebra;
pub mod bundle;
pub mod casebook;
pub mod cli;
pub mod error;
pub mod local;
pub(crate) mod serde_util;
pub mod surface;

pub use error::{Error, Result};
