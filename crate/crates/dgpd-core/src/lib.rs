//! Finite double groupoids and their convolution algebras.
//!
//! Everything here works on fully materialized composition tables at desk
//! scale (tens of squares, not thousands). Structures are validated by
//! exhaustive scans that report concrete witnesses, never by construction-time
//! trust. Arithmetic is exact rational wherever the inputs are rational;
//! complex `f64` enters only through transcendental phases.
//!
//! The crate is `no_std` + `alloc`. IO, file formats, and the CLI live in the
//! companion `dgpd` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod compact;
pub mod convolution;
pub mod double;
pub mod fixtures;
pub mod fourier;
pub mod group;
pub mod groupoid;
pub mod haar;
pub mod nctorus;
pub mod report;
pub mod scalar;
pub mod singular;

pub use groupoid::{ArrowId, FiniteCategoryTable, FiniteGroupoidTable, ObjectId};
pub use report::ValidationReport;
pub use scalar::Scalar;
