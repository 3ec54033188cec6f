//! Fundamental groups and Chern invariants of Galois covers of surfaces that
//! degenerate to unions of planes.
//!
//! The pipeline reads a planar degeneration complex, builds a presentation of
//! `G̃`, enumerates it, extracts the kernel of the plane-transposition map
//! `G̃ → Sₙ` and identifies its structure. A second route evaluates the
//! presentation in `Sₙ ⋉ Z^{n−1}` and quotients a lattice.

pub mod analysis;
pub mod complex;
pub mod coxquot;
pub mod datasets;
pub mod enumeration;
pub mod invariants;
pub mod kernel;
pub mod permgroup;
pub mod presentation;

pub use analysis::{analyze, analyze_complex, emit_report, AnalysisError, AnalysisOptions, AnalysisReport, ReportFormat, Route, Stage};
pub use complex::{DegenerationComplex, VertexClass};
pub use enumeration::{enumerate, CosetTable, EnumerationError, DEFAULT_MAX_COSETS};
pub use kernel::StructureVerdict;
pub use permgroup::Permutation;
pub use presentation::{GroupPresentation, Word};
