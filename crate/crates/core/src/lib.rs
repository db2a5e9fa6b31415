//! Exact arithmetic for Somos-4/5 sequences, elliptic divisibility sequences
//! and the divisibility phenomena they exhibit.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactring`]: integers, rationals, residues, sparse (Laurent) polynomials
//!   and quadratic extensions behind one [`Ring`] trait.
//! - [`somos`]: the bidirectional Somos-k engine, invariants, symmetry,
//!   degenerate solutions and equivalence transforms.
//! - [`eds`]: elliptic divisibility sequences and companion EDS.
//! - [`divis`]: valuations, gap scans, the closure oracle and the polynomial
//!   divisibility checks.
//! - [`curves`]: cubic curves over prime fields and their quadratic
//!   extensions, chord-tangent addition and point orders.

pub mod curves;
pub mod divis;
pub mod eds;
pub mod error;
pub mod exactring;
pub mod serde_dec;
pub mod somos;

pub use error::{ArithError, Result};
pub use exactring::{LaurentElem, Monomial, QuadElem, Rat, ResidueInt, Ring, SparsePoly, Var};
