//! Exact computations for the symmetric tensor categories `Ver_{p^n}`.
//!
//! The crate is layered bottom-up:
//!
//! - [`charring`]: `SL_2` characters and Weyl expansions.
//! - [`tilting`]: tilting characters via Donkin's recursion, tensor product
//!   decompositions, invariant dimensions.
//! - [`digits`]: base-`p` digit combinatorics (descendants, Cartan matrices,
//!   blocks, Steinberg labels, `Ext^1`, Frobenius action).
//! - [`cyclo`]: exact arithmetic in `Z[q]`, `q = exp(pi i / p^n)`, for
//!   Frobenius-Perron dimensions.
//! - [`grring`]: the Grothendieck ring and its fusion rule.
//! - [`catalog`]: assembly of everything into a [`catalog::CategoryData`]
//!   record with a verification report.

pub mod catalog;
pub mod charring;
pub mod cyclo;
pub mod digits;
pub mod error;
pub mod grring;
pub mod matrix;
pub mod numeric;
pub mod params;
pub mod poly;
pub mod snf;
pub mod tilting;

pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use params::{Prime, ProjIndex, SimpleLabel, Ver};
