//! Finiteness certificates for non-ruled residually transcendental
//! extensions of a discrete valuation to hyperelliptic function fields
//! `F = E(X)[sqrt(f(X))]`, computed over `F_p((s))` and its tame towers.

pub mod error;
pub mod ffield;
pub mod localfield;
pub mod cli;
pub mod newton;
pub mod ratfunc;
pub mod reduction;
pub mod respoly;

pub use error::{Error, Result};
