//! Exact character theory for finite groups of points of solvable groups
//! over finite fields.
//!
//! The numeric core is generic over the coefficient scalar; the aliases
//! below fix the exact choice used by every pipeline.

#![allow(clippy::needless_range_loop)]

pub mod chartab;
pub mod cli;
pub mod exactnum;
pub mod ffield;
pub mod groupkit;
pub mod linalg;
pub mod lpacket;
pub mod metricmod;
pub mod report;
pub mod sheafdict;
pub mod shintani;

/// Exact cyclotomic number with rational coefficients.
pub type Cyclo = exactnum::Cyclotomic<exactnum::Rational>;
/// Floating cyclotomic number, for rendering and quick experiments.
pub type CycloF64 = exactnum::Cyclotomic<f64>;
pub use exactnum::Rational;
