//! Exact debordering of border Waring rank decompositions.

pub mod algebra;
pub mod cli;
pub mod decomposition;
pub mod deborder;
pub mod diagonalize;
pub mod oracle;
pub mod error;

pub use error::{Error, Lemma, Result};
