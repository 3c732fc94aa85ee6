//! Classical finite and affine Weyl groups in window notation, with the
//! distance cost on transpositions and exact minimum-cost factorization.

pub mod conjectures;
pub mod cost;
pub mod error;
pub mod factorization;
pub mod groups;
pub mod oracle;
pub mod statistics;
pub mod transpositions;

pub use cost::Cost;
pub use error::{Error, Result};
pub use groups::{Element, Family, GroupDescriptor};
pub use transpositions::Transposition;
