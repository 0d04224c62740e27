//! Hypergeometric triangular inversion: exact matrix identities, generating
//! functions, a queueing integral-equation solver and the Laguerre limit.

pub mod cli;
pub mod dd;
pub mod error;
pub mod exact;
pub mod laguerre;
pub mod matrix;
pub mod quadrature;
pub mod queue;
pub mod scalar;
pub mod series;
pub mod special;

pub use error::{Error, Result};
