//! Numerical library for the Askey-Wilson function transform.
//!
//! Layers, bottom up:
//!
//! - [`qseries`]: q-shifted factorials, theta functions, and basic
//!   hypergeometric series with certified truncation error, plus a
//!   wide-precision reference path ([`qseries::wide`]).
//! - [`awcore`]: parameter management and duality, the Askey-Wilson
//!   polynomial and function, the second-order q-difference operator, the
//!   asymptotically free solutions, and c-functions.
//! - [`measure`]: the one-parameter family of measures of unbounded support:
//!   unit-circle density, discrete residue weights, and normalization
//!   constants.
//! - [`transform`]: the function transform, its dual, the q-Wronskian, and
//!   verification operations producing machine-readable reports.
//! - [`suites`]: named verification suites driving the operations above.

pub mod awcore;
pub mod error;
pub mod measure;
pub mod qseries;
pub mod suites;
pub mod transform;

pub use awcore::AWParams;
pub use error::{AwError, Result};
pub use qseries::{QBase, SeriesValue};
