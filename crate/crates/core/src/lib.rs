//! Exact computations for quiver Hecke (KLR) algebras and the quantum
//! shuffle model of Lusztig's algebra `f`: PBW, canonical and dual
//! canonical bases, characters and graded decomposition numbers in
//! finite ADE type.

pub mod cli;
pub mod error;
pub mod fshuffle;
pub mod linalg;
pub mod nilhecke;
pub mod pbwcanon;
pub mod qhalg;
pub mod qring;
pub mod repchar;
pub mod rootdata;

pub use error::{Error, Result};
