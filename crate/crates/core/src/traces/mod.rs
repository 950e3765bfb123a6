//! Trace realness over word balls, the realness criteria for `Sp(n,1)`, and
//! certificates for the associated equation systems.

mod criteria;
mod realness;
mod torus;
mod words;

pub use criteria::{
    c_element_trace_imaginary_parts, criterion_i, criterion_ii, eqnsys_certificate, eqnsys_residual, gram_residual,
    lambda_column, sp1_su11_membership, EqnsysResidual, GramResidual, Sp1Su11,
};
pub use realness::{
    conjugated_trace_scan, im_trace_consistency, realness_report, realness_report_capped, word_tolerance,
    RealnessReport, Verdict, DEFAULT_WORD_CAP, DEFAULT_WORD_LENGTH,
};
pub use torus::{odd_power_sums_check, odd_power_sums_vanish, pairs_off, OddPowerSums};
pub use words::{ball_size, word_ball, Letter, Word, WordBall};
