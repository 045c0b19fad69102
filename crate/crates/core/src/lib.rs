pub mod algebra;
pub mod bitset;
pub mod cohomology;
pub mod crosscheck;
pub mod descent;
pub mod document;
pub mod error;
pub mod exec;
pub mod factorization;
pub mod partition;

pub use error::{Error, Result};
