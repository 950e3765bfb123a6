//! Invariant subspaces, real forms, block detection and synthetic instances.

mod detect;
mod linear;
mod real_form;
mod scan;
mod synth;

pub use detect::{detect, BlockSummary, DetectionKind, DetectionResult};
pub use real_form::{real_structure_solve, RealStructure};
pub use scan::{invariant_subspace_scan, InvariantSubspace, SchurType, SubspaceScan, SCAN_RESTARTS};
pub use synth::{rho_fixture, synthesize, Synthesis, SynthesisRecipe, TargetKind, SYNTHESIS_TOL};
