pub mod cli;
pub mod dot;
pub mod dsf;
pub mod error;
pub mod gds;
pub mod polyrat;
pub mod realization;
pub mod sparsity;
pub mod structure;

pub use error::{Error, Result};
