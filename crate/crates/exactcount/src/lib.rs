//! Exact counting of perfect matchings, hafnians, permanents and exact
//! set covers.
//!
//! The heart of the crate is a pair of hafnian engines for symmetric
//! matrices with zero diagonal, generic over a commutative [`ring::Ring`]:
//!
//! - [`hafnian::hafnian_labelring`] multiplies squeeze factors in a ring
//!   of nilpotent labels; it stores 2^n coefficients but performs the
//!   fewest ring operations.
//! - [`hafnian::hafnian_polyspace`] replays the squeeze once per label
//!   subset over truncated polynomials and combines the results by
//!   inclusion-exclusion; it keeps only O(n^2) polynomials live at any
//!   moment.
//!
//! Everything else reduces to a hafnian or checks one. Perfect-matching
//! counts are hafnians of adjacency matrices ([`matching`]), permanents
//! embed as hafnians of doubled matrices ([`permanent`]), and 0/1
//! permanents can be re-encoded as exact-cover counting instances whose
//! counts modulo a few prime powers pin the permanent exactly
//! ([`setcover`]).
//!
//! The `examples/` directory tours each capability; the `exactcount`
//! binary exposes the same operations on files.

pub mod cli;
pub mod crt;
pub mod error;
pub mod hafnian;
pub mod label_ring;
pub mod matching;
pub mod matrix;
pub mod permanent;
pub mod poly;
pub mod ring;
pub mod setcover;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
