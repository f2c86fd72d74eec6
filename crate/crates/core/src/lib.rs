//! Weighted topological quantum field theories of covers: exact arithmetic,
//! symmetric-group characters, Hurwitz numbers, a cobordism tensor engine,
//! and the equivariant theory of the resolved conifold's local curve.

#[macro_use]
mod macros;

pub mod error;
pub mod exactalg;
pub mod partitions;
pub mod symchar;
pub mod hurwitz;
pub mod tqftcore;
pub mod theoryu;
pub mod cli;

pub use error::{Error, Result};
