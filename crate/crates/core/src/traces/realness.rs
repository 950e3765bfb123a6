//! Realness of traces over word balls and over sampled conjugates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::words::{word_ball, Word};
use crate::algebra::{embed_mat_c2r, linalg, CMatrix, Field, Matrix};
use crate::error::{Error, Result};
use crate::groups::{sample_element, GeneratorSet, GroupSpec};

/// Word-ball default radius.
pub const DEFAULT_WORD_LENGTH: usize = 6;
/// Word-ball default cap.
pub const DEFAULT_WORD_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Real,
    NonReal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealnessReport {
    /// Largest imaginary-part norm of a trace in the ball.
    pub max_im: f64,
    /// Largest ratio `|Im tr w| / tol_w`; the verdict is real iff `≤ 1`.
    pub max_ratio: f64,
    /// Word attaining `max_ratio`.
    pub offender: Option<Word>,
    pub words_checked: usize,
    /// Set when the cap stopped the scan before the full ball.
    pub truncated: bool,
    pub verdict: Verdict,
    pub tol: f64,
    pub max_len: usize,
}

/// Tolerance for one word: `tol · |w| · Π max(1, ‖letter‖_F)`.
pub fn word_tolerance(tol: f64, word: &Word, norms: &[f64]) -> f64 {
    let bound: f64 = word.letters().iter().map(|l| norms[l.index].max(1.0)).product();
    tol * word.len().max(1) as f64 * bound
}

/// Scans every reduced word of length `≤ max_len` (at most `cap` words).
pub fn realness_report_capped<T: Field>(
    gens: &GeneratorSet<T>,
    max_len: usize,
    tol: f64,
    cap: usize,
) -> RealnessReport {
    let norms: Vec<f64> = gens.gens().iter().map(Matrix::frobenius_norm).collect();
    let mut report = RealnessReport {
        max_im: 0.0,
        max_ratio: 0.0,
        offender: None,
        words_checked: 0,
        truncated: false,
        verdict: Verdict::Real,
        tol,
        max_len,
    };
    let mut ball = word_ball(gens, max_len);
    for (w, m) in ball.by_ref().take(cap) {
        let im = m.trace().expect("square").im_norm();
        let ratio = im / word_tolerance(tol, &w, &norms);
        report.words_checked += 1;
        report.max_im = report.max_im.max(im);
        if ratio > report.max_ratio || report.offender.is_none() {
            report.max_ratio = ratio.max(report.max_ratio);
            report.offender = Some(w);
        }
    }
    report.truncated = ball.next().is_some();
    report.verdict = if report.max_ratio <= 1.0 {
        Verdict::Real
    } else {
        Verdict::NonReal
    };
    report
}

pub fn realness_report<T: Field>(gens: &GeneratorSet<T>, max_len: usize, tol: f64) -> RealnessReport {
    realness_report_capped(gens, max_len, tol, DEFAULT_WORD_CAP)
}

/// `(Im tr g, Σ_k b_kk)` with `b_kk` read from the real `2×2` blocks of `g`.
pub fn im_trace_consistency(g: &CMatrix) -> Result<(f64, f64)> {
    let t = g.trace()?;
    let r = embed_mat_c2r(g);
    let b: f64 = (0..g.rows()).map(|k| r[(2 * k + 1, 2 * k)]).sum();
    Ok((t.im, b))
}

/// `max_A |Im tr(g A g⁻¹)|` over `samples` draws of `A ∈ I ⊕ subgroup`
/// (identity block first).
pub fn conjugated_trace_scan<T: Field>(g: &Matrix<T>, subgroup: &GroupSpec, samples: usize, seed: u64) -> Result<f64> {
    if !g.is_square() {
        return Err(Error::NotSquare(g.rows(), g.cols()));
    }
    let k = subgroup.size();
    if k > g.rows() {
        return Err(Error::mismatch("conjugated_trace_scan", g.shape(), (k, k)));
    }
    let ginv = linalg::inverse(g)?;
    let pad = Matrix::<T>::identity(g.rows() - k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a: Matrix<T> = pad.direct_sum(&sample_element(subgroup, &mut rng)?);
        let t = (&(g * &a) * &ginv).trace()?;
        worst = worst.max(t.im_norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{HMatrix, Quaternion};
    use crate::groups::{random_element, special_element, SpecialElement};
    use num_complex::Complex64;

    #[test]
    fn real_block_is_real() {
        let spec = GroupSpec::su(3, 1);
        let blk = GroupSpec::so(2, 1);
        let gens: Vec<CMatrix> = (0..2)
            .map(|s| CMatrix::identity(1).direct_sum(&random_element(&blk, s).unwrap()))
            .collect();
        let set = GeneratorSet::new(spec, gens, None, 1e-9).unwrap();
        let r = realness_report(&set, 4, 1e-9);
        assert_eq!(r.verdict, Verdict::Real);
        assert!(r.max_im < 1e-12);
        assert!(!r.truncated);
    }

    #[test]
    fn diag_i_j_is_not_real() {
        let g = HMatrix::from_diag(&[Quaternion::I, Quaternion::J]);
        let set = GeneratorSet::new(GroupSpec::sp(1, 1), vec![g], None, 1e-9).unwrap();
        let r = realness_report(&set, 3, 1e-9);
        assert_eq!(r.verdict, Verdict::NonReal);
        assert_eq!(r.offender.unwrap().to_string(), "g1");
        assert!((r.max_im - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn truncation_flag() {
        let spec = GroupSpec::su(1, 1);
        let set = GeneratorSet::new(spec, vec![CMatrix::identity(2), CMatrix::identity(2)], None, 1e-9).unwrap();
        let r = realness_report_capped(&set, 3, 1e-9, 10);
        assert!(r.truncated);
        assert_eq!(r.words_checked, 10);
    }

    #[test]
    fn im_trace_pairs() {
        let d = special_element(SpecialElement::D(2));
        assert_eq!(im_trace_consistency(&d).unwrap(), (1.0, 1.0));
        let real = CMatrix::from_fn(3, 3, |i, j| Complex64::new((i + 2 * j) as f64, 0.0));
        assert_eq!(im_trace_consistency(&real).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn identity_scan_is_zero() {
        let g = HMatrix::identity(2);
        assert!(conjugated_trace_scan(&g, &GroupSpec::su11(), 50, 1).unwrap() < 1e-12);
    }
}
