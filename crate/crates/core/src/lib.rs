pub mod arith;
pub mod cli;
pub mod error;
pub mod rings;
pub mod truncation;
pub mod witt;
pub mod ktheory;
pub mod lattice;
pub mod zrank;

pub use error::{Error, Result};
