//! Locating the invariant totally geodesic block and a conjugator into block
//! form.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::linear::{combination, commutant, expand, hyperbolic_gram_schmidt, positives_first, restrict};
use super::real_form::block_real_form;
use super::scan::{invariant_subspace_scan, InvariantSubspace, SchurType, SubspaceScan};
use crate::algebra::{embed, linalg, CMatrix, Field, FieldKind, Matrix};
use crate::error::Result;
use crate::groups::{form_inverse, group_membership, GeneratorSet};
use crate::traces::{realness_report, RealnessReport, Verdict};

#[derive(Clone, Debug, PartialEq)]
pub struct BlockSummary {
    pub dim: usize,
    pub positive: usize,
    pub negative: usize,
    pub schur_type: SchurType,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DetectionKind {
    /// Conjugate into `S(U(n−m)⊕O(m,1))` or `Sp(n−m)⊕O(m,1)`.
    RealForm(usize),
    /// Conjugate into `SU(n−1)⊕SU(1,1)` or `Sp(n−1)⊕SU(1,1)`.
    ComplexLine,
    /// Invariant subspaces were found but none is a usable negative block.
    Reducible(Vec<BlockSummary>),
    None,
}

impl fmt::Display for DetectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetectionKind::RealForm(m) => write!(f, "real_form({m})"),
            DetectionKind::ComplexLine => write!(f, "complex_line"),
            DetectionKind::Reducible(blocks) => {
                let dims: Vec<String> = blocks.iter().map(|b| b.dim.to_string()).collect();
                write!(f, "reducible({})", dims.join("+"))
            }
            DetectionKind::None => write!(f, "none"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectionResult<T> {
    pub kind: DetectionKind,
    /// Ambient element `C`; `C⁻¹ γ C` is block diagonal with the compact
    /// block first. The identity unless a block form is claimed.
    pub conjugator: Matrix<T>,
    /// Largest block-pattern defect of a conjugated generator, relative to
    /// `max(1, ‖γ‖_F)`. Zero when no block form is claimed.
    pub residual: f64,
    /// Ambient membership residual of the conjugator.
    pub conjugator_residual: f64,
    /// One entry per invariant subspace, in scan order.
    pub schur_types: Vec<SchurType>,
    pub blocks: Vec<BlockSummary>,
    pub realness: RealnessReport,
    pub warnings: Vec<String>,
    pub diagnostics: Vec<String>,
}

fn summary<T>(s: &InvariantSubspace<T>) -> BlockSummary {
    BlockSummary {
        dim: s.dim,
        positive: s.positive,
        negative: s.negative,
        schur_type: s.schur_type,
    }
}

fn complex_signs(eps: &[f64], k: usize) -> Vec<f64> {
    eps.iter().flat_map(|&e| std::iter::repeat_n(e, k)).collect()
}

/// Noncompact block inside the negative subspace, as ambient vectors with
/// signs (positive first), together with the claimed kind.
fn noncompact_block<T: Field>(
    gens: &[Matrix<T>],
    eps: &[f64],
    sub: &InvariantSubspace<T>,
    diagnostics: &mut Vec<String>,
) -> Option<(DetectionKind, Vec<Vec<T>>, Vec<f64>)> {
    let d = sub.dim;
    if d < 2 {
        diagnostics.push(format!("negative subspace has dimension {d}"));
        return None;
    }
    let restricted: Vec<Matrix<T>> = gens.iter().map(|g| restrict(g, &sub.basis, &sub.signs, eps)).collect();
    // Complex vectors spanning the block in the subspace's complex model, the
    // matching form, and the complex model of the restricted generators.
    let (model_basis, model_signs, model_gens): (Vec<Vec<Complex64>>, Vec<f64>, Vec<CMatrix>) = match T::KIND {
        FieldKind::Complex => (
            (0..d)
                .map(|i| {
                    (0..d)
                        .map(|r| Complex64::new(if r == i { 1.0 } else { 0.0 }, 0.0))
                        .collect()
                })
                .collect(),
            sub.signs.clone(),
            restricted.iter().map(embed::to_complex_matrix).collect(),
        ),
        FieldKind::Quaternion => {
            let w = complex_structure(&restricted, &sub.signs, diagnostics)?;
            let ceps = complex_signs(&sub.signs, 2);
            let on = positives_first(hyperbolic_gram_schmidt(&ceps, w, d)?);
            let (basis, signs): (Vec<_>, Vec<_>) = on.into_iter().unzip();
            let cg: Vec<CMatrix> = restricted
                .iter()
                .map(|c| restrict(&embed::to_complex_matrix(c), &basis, &signs, &ceps))
                .collect();
            (basis, signs, cg)
        }
    };
    let lift = |v: &[Complex64]| -> Vec<T> {
        let model = expand(&model_basis, v);
        expand(&sub.basis, &embed::from_complex_vec::<T>(&model))
    };
    if d == 2 {
        let vecs = (0..2)
            .map(|j| lift(&[0, 1].map(|i| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))))
            .collect();
        return Some((DetectionKind::ComplexLine, vecs, model_signs));
    }
    let Some((_, t, signs)) = block_real_form(&model_gens, &model_signs) else {
        diagnostics.push(format!("no real form on the {d}-dimensional negative block"));
        return None;
    };
    let vecs = (0..d).map(|j| lift(&t.col(j))).collect();
    Some((DetectionKind::RealForm(d - 1), vecs, signs))
}

/// For a quaternionic block, the `+i` eigenspace of a form-skew complex
/// structure in the quaternionic commutant.
fn complex_structure<T: Field>(
    restricted: &[Matrix<T>],
    signs: &[f64],
    diagnostics: &mut Vec<String>,
) -> Option<Vec<Vec<Complex64>>> {
    let d = signs.len();
    let comm = commutant(restricted);
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
    let coeffs: Vec<f64> = (0..comm.len()).map(|_| rng.sample(StandardNormal)).collect();
    let x = combination(&comm, &coeffs);
    let a = &x - &form_inverse(&x, signs);
    let scale = x.frobenius_norm().max(1e-300);
    if a.frobenius_norm() <= 1e-8 * scale {
        diagnostics.push("quaternionic commutant has no skew element".to_string());
        return None;
    }
    let a2 = &a * &a;
    let c = -a2.trace().ok()?.re() / d as f64;
    if c <= 0.0 || (&a2 + &Matrix::identity(d).scale_real(c)).frobenius_norm() > 1e-6 * c {
        diagnostics.push("skew commutant element is not a complex structure".to_string());
        return None;
    }
    let k = embed::to_complex_matrix(&a.scale_real(1.0 / c.sqrt()));
    let shifted = &k - &CMatrix::identity(2 * d).scale_left(Complex64::new(0.0, 1.0));
    let w = linalg::null_space(&shifted, 1e-7);
    if w.len() != d {
        diagnostics.push(format!("complex structure eigenspace has dimension {}", w.len()));
        return None;
    }
    Some(w)
}

fn block_defect<T: Field>(g: &Matrix<T>, c: &Matrix<T>, eps: &[f64], split: usize, kind: &DetectionKind) -> f64 {
    let conj = &(&form_inverse(c, eps) * g) * c;
    let n = g.rows();
    let scale = g.frobenius_norm().max(1.0);
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let x = conj[(i, j)];
            let off = (i < split) != (j < split);
            let v = if off {
                x.norm()
            } else if i >= split {
                match kind {
                    DetectionKind::RealForm(_) => x.im_norm(),
                    _ => x.jk_norm(),
                }
            } else {
                0.0
            };
            worst = worst.max(v);
        }
    }
    if matches!(kind, DetectionKind::ComplexLine) {
        let k = n - split;
        let blk = conj.block(split, split, k, k).map(|x| x.complex_part());
        if let Ok(d) = linalg::complex_det(&blk) {
            worst = worst.max((d - Complex64::new(1.0, 0.0)).norm());
        }
    }
    worst / scale
}

/// Runs the scan, then looks for a real form or a complex line on the
/// smallest negative invariant subspace.
pub fn detect<T: Field>(gens: &GeneratorSet<T>, max_len: usize, tol: f64) -> Result<DetectionResult<T>> {
    let eps = gens.group().signs();
    let n = gens.size();
    let realness = realness_report(gens, max_len, tol);
    let mut warnings = Vec::new();
    if realness.verdict == Verdict::NonReal {
        let w = realness
            .offender
            .as_ref()
            .map(|w| w.render(gens.labels()))
            .unwrap_or_default();
        warnings.push(format!(
            "traces are not real (worst word {w}, |Im tr| = {:e})",
            realness.max_im
        ));
    }
    let scan: SubspaceScan<T> = invariant_subspace_scan(gens, max_len, tol)?;
    let mut diagnostics = vec![format!("scan used {} restart(s)", scan.restarts)];
    if !scan.split {
        diagnostics.push("no invariant splitting could be verified".to_string());
    }
    let blocks: Vec<BlockSummary> = scan.subspaces.iter().map(summary).collect();
    let schur_types = scan.subspaces.iter().map(|s| s.schur_type).collect();
    let mut result = DetectionResult {
        kind: DetectionKind::None,
        conjugator: Matrix::identity(n),
        residual: 0.0,
        conjugator_residual: 0.0,
        schur_types,
        blocks: blocks.clone(),
        realness,
        warnings,
        diagnostics,
    };
    let mut negatives: Vec<&InvariantSubspace<T>> = scan.subspaces.iter().filter(|s| s.is_negative()).collect();
    negatives.sort_by_key(|s| s.dim);
    let Some(sub) = negatives.first().copied() else {
        result.kind = DetectionKind::Reducible(blocks);
        return Ok(result);
    };
    for alt in &negatives[1..] {
        result
            .diagnostics
            .push(format!("alternative negative subspace of dimension {}", alt.dim));
    }
    let Some((kind, block, signs)) = noncompact_block(gens.gens(), &eps, sub, &mut result.diagnostics) else {
        return Ok(result);
    };
    let d = block.len();
    // Orthonormal complement, compact coordinates first.
    let candidates: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut e: Vec<T> = (0..n).map(|r| if r == i { T::one() } else { T::zero() }).collect();
            for (b, &s) in block.iter().zip(&signs) {
                let coef = crate::geometry::signed_inner(&eps, &e, b).scale(s);
                for (x, &y) in e.iter_mut().zip(b) {
                    *x = *x - y * coef;
                }
            }
            e
        })
        .collect();
    let Some(compl) = hyperbolic_gram_schmidt(&eps, candidates, n - d) else {
        result
            .diagnostics
            .push("complement of the block is degenerate".to_string());
        return Ok(result);
    };
    let mut cols: Vec<Vec<T>> = compl.iter().map(|(v, _)| v.clone()).collect();
    let mut all_signs: Vec<f64> = compl.iter().map(|(_, s)| *s).collect();
    cols.extend(block);
    all_signs.extend(signs);
    if all_signs != eps {
        result
            .diagnostics
            .push("block signature does not match the ambient form".to_string());
        return Ok(result);
    }
    let mut c = Matrix::from_columns(&cols)?;
    if T::KIND == FieldKind::Complex {
        let det = linalg::complex_det(&embed::to_complex_matrix(&c))?;
        if n > d {
            let fix = T::from_complex(det.inv() / det.inv().norm());
            for r in 0..n {
                c[(r, 0)] = c[(r, 0)] * fix;
            }
        } else {
            let fix = T::from_complex(det.inv().powf(1.0 / n as f64));
            c = c.scale_right(fix);
        }
    }
    result.residual = gens
        .gens()
        .iter()
        .map(|g| block_defect(g, &c, &eps, n - d, &kind))
        .fold(0.0, f64::max);
    result.conjugator_residual = group_membership(&c, gens.group(), f64::INFINITY)?.residual;
    result.conjugator = c;
    result.kind = kind;
    Ok(result)
}
