//! Exact-arithmetic workbench for positive monoids: atoms, factorizations,
//! length sets, atomicity classification and machine-checkable witnesses.

pub mod classifier;
pub mod error;
pub mod factor;
pub mod gallery;
pub mod instance;
pub mod models;
pub mod ordered;
pub mod primes;
pub mod witness;

pub use error::{Error, Result};
