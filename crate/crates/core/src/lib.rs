//! Quasi-cyclic McEliece and Niederreiter cryptosystems over GF(2^l).

pub mod autgroup;
pub mod circulant;
pub mod cli;
pub mod codes;
pub mod combin;
pub mod cryptanalysis;
pub mod crypto;
pub mod error;
pub mod field;
pub mod linalg;
pub mod qcgen;

pub use error::{Error, Result};
