//! Exact symbolic verification for left-symmetric algebroids over flat charts.
//!
//! Coefficients are rational functions with exact rational arithmetic; every
//! identity is checked by exact cancellation, never numerically.

pub mod algebroid;
pub mod arith;
pub mod certificate;
pub mod checks;
pub mod cli;
pub mod document;
pub mod error;
pub mod expr;
pub mod tensors;

pub use algebroid::{pair, Algebroid, Chart, CoSection, Cochain, Section};
pub use arith::{MultiPoly, RatFunc, Rational};
pub use certificate::{Certificate, Residual};
pub use error::{Error, Result};
pub use tensors::{BundleMap, Matrix, SymTensorCo, SymTensorContra, TriTensor};
