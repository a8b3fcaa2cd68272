//! Exact counts of visible points on level curves `f(x, y) = a (mod p)`.

pub mod arith;
pub mod cli;
pub mod counting;
pub mod error;
pub mod experiments;
pub mod ffpoly;
pub mod report;

pub use error::{Error, Result};
