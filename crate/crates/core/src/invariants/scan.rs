//! Splitting a generator set into mutually orthogonal invariant subspaces.
//!
//! A random form-self-adjoint element `X + F X* F` of the commutant acts as a
//! scalar on each irreducible summand, so its eigenspaces are the summands.
//! Over `ℍ` the commutant is taken among quaternionic matrices, which keeps
//! every eigenspace quaternionic.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::linear::{
    antilinear_commutant, combination, commutant, expand, hyperbolic_gram_schmidt, positives_first, restrict,
};
use crate::algebra::{eigenvalues, embed, linalg, CMatrix, Field, FieldKind, Matrix};
use crate::error::Result;
use crate::groups::{form_inverse, GeneratorSet};
use crate::traces::word_ball;

/// Number of random commutant elements tried before giving up on a split.
pub const SCAN_RESTARTS: u64 = 8;

const SCAN_SEED: u64 = 0x5ca7_0001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchurType {
    Real,
    Complex,
    Quaternion,
}

impl SchurType {
    pub fn name(self) -> &'static str {
        match self {
            SchurType::Real => "real",
            SchurType::Complex => "complex",
            SchurType::Quaternion => "quaternion",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSubspace<T> {
    /// Orthonormal for the ambient form, positive vectors first.
    pub basis: Vec<Vec<T>>,
    pub signs: Vec<f64>,
    /// Dimension over the generators' scalars.
    pub dim: usize,
    pub positive: usize,
    pub negative: usize,
    pub schur_type: SchurType,
    /// `max ‖(I − P) w P‖ / max(1, ‖w‖)` over the checked words.
    pub residual: f64,
}

impl<T> InvariantSubspace<T> {
    pub fn is_negative(&self) -> bool {
        self.negative > 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceScan<T> {
    pub subspaces: Vec<InvariantSubspace<T>>,
    /// No proper invariant subspace survived.
    pub irreducible: bool,
    /// False when every restart hit coincident or defective spectra; the
    /// scan then reports the whole space as a single block.
    pub split: bool,
    pub restarts: u64,
}

fn complex_signs(eps: &[f64], k: usize) -> Vec<f64> {
    eps.iter().flat_map(|&e| std::iter::repeat_n(e, k)).collect()
}

/// Orthonormal basis of the complex model's invariant pieces, one per
/// cluster of eigenvalues of `h` (conjugate pairs merged).
fn eigen_pieces(h: &CMatrix) -> Option<Vec<Vec<Vec<Complex64>>>> {
    let vals = eigenvalues(h).ok()?;
    let scale = h.frobenius_norm().max(1e-300);
    let same = 1e-6 * scale;
    let mut keys: Vec<(f64, f64, usize)> = Vec::new();
    for v in &vals {
        match keys
            .iter_mut()
            .find(|k| (k.0 - v.re).abs() <= same && (k.1 - v.im.abs()).abs() <= same)
        {
            Some(k) => k.2 += 1,
            None => keys.push((v.re, v.im.abs(), 1)),
        }
    }
    keys.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    for (i, a) in keys.iter().enumerate() {
        for b in &keys[i + 1..] {
            if (a.0 - b.0).hypot(a.1 - b.1) < 1e-3 * scale {
                return None;
            }
        }
    }
    let n = h.rows();
    let mut pieces = Vec::with_capacity(keys.len());
    for &(re, im, count) in &keys {
        let shift = |l: Complex64| h - &CMatrix::identity(n).scale_left(l);
        let (p, thr) = if im > same {
            (
                &shift(Complex64::new(re, im)) * &shift(Complex64::new(re, -im)),
                1e-7 * scale * scale,
            )
        } else {
            (shift(Complex64::new(re, 0.0)), 1e-7 * scale)
        };
        let (sv, basis) = linalg::smallest_right_singular(&p, count);
        if sv.iter().any(|&v| v > thr) {
            return None;
        }
        pieces.push(basis);
    }
    Some(pieces)
}

fn invariance_residual(words: &[CMatrix], basis: &[Vec<Complex64>]) -> f64 {
    let b = CMatrix::from_columns(basis).expect("columns");
    let proj = &b * &b.conj_transpose();
    let comp = &CMatrix::identity(b.rows()) - &proj;
    words
        .iter()
        .map(|w| (&(&comp * w) * &b).frobenius_norm() / w.frobenius_norm().max(1.0))
        .fold(0.0, f64::max)
}

/// Type of the restricted action, read off the intertwiners relative to the
/// restricted form.
pub(crate) fn schur_type<T: Field>(restricted: &[Matrix<T>], signs: &[f64]) -> SchurType {
    match T::KIND {
        FieldKind::Quaternion => match commutant(restricted).len() {
            0 | 1 => SchurType::Quaternion,
            2 | 3 => SchurType::Complex,
            _ => SchurType::Real,
        },
        FieldKind::Complex => {
            let c: Vec<CMatrix> = restricted.iter().map(embed::to_complex_matrix).collect();
            let sols = antilinear_commutant(&c);
            let Some(s) = sols.first() else {
                return SchurType::Complex;
            };
            let k = s.rows() as f64;
            let lambda = (s * &s.conj()).trace().expect("square").re / k;
            let fsf = &form_inverse(s, signs) * s;
            let mu = fsf.trace().expect("square").re / k;
            if lambda > 0.0 && mu > 0.0 {
                SchurType::Real
            } else if lambda < 0.0 {
                SchurType::Quaternion
            } else {
                SchurType::Complex
            }
        }
    }
}

fn build_subspace<T: Field>(
    gens: &[Matrix<T>],
    eps: &[f64],
    words: &[CMatrix],
    piece: &[Vec<Complex64>],
    rng: &mut ChaCha8Rng,
) -> Option<InvariantSubspace<T>> {
    let dim = piece.len() / T::CDIM;
    let residual = invariance_residual(words, piece);
    let candidates: Vec<Vec<T>> = (0..dim + 2)
        .map(|_| {
            let coeffs: Vec<Complex64> = piece
                .iter()
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            embed::from_complex_vec(&expand(piece, &coeffs))
        })
        .collect();
    let basis = positives_first(hyperbolic_gram_schmidt(eps, candidates, dim)?);
    let (basis, signs): (Vec<Vec<T>>, Vec<f64>) = basis.into_iter().unzip();
    let restricted: Vec<Matrix<T>> = gens.iter().map(|g| restrict(g, &basis, &signs, eps)).collect();
    let negative = signs.iter().filter(|&&s| s < 0.0).count();
    Some(InvariantSubspace {
        schur_type: schur_type(&restricted, &signs),
        positive: dim - negative,
        negative,
        dim,
        basis,
        signs,
        residual,
    })
}

fn whole_space<T: Field>(gens: &[Matrix<T>], eps: &[f64]) -> InvariantSubspace<T> {
    let n = eps.len();
    let basis: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|r| if r == i { T::one() } else { T::zero() }).collect())
        .collect();
    let negative = eps.iter().filter(|&&s| s < 0.0).count();
    InvariantSubspace {
        schur_type: schur_type(gens, eps),
        dim: n,
        positive: n - negative,
        negative,
        basis,
        signs: eps.to_vec(),
        residual: 0.0,
    }
}

/// Splits the generated group's action into orthogonal invariant subspaces,
/// verifying invariance on every word of length `≤ min(max_len, 2)`.
pub fn invariant_subspace_scan<T: Field>(gens: &GeneratorSet<T>, max_len: usize, tol: f64) -> Result<SubspaceScan<T>> {
    let eps = gens.group().signs();
    let ceps = complex_signs(&eps, T::CDIM);
    let words: Vec<CMatrix> = word_ball(gens, max_len.clamp(1, 2))
        .map(|(_, m)| embed::to_complex_matrix(&m))
        .collect();
    let inv_tol = tol.max(1e-7);
    let comm = commutant(gens.gens());
    for restart in 0..SCAN_RESTARTS {
        let mut rng = ChaCha8Rng::seed_from_u64(SCAN_SEED + restart);
        let coeffs: Vec<f64> = (0..comm.len()).map(|_| rng.sample(StandardNormal)).collect();
        let x = combination(&comm, &coeffs);
        let h = &x + &form_inverse(&x, &eps);
        let hc = embed::to_complex_matrix(&h);
        let Some(pieces) = eigen_pieces(&hc) else {
            continue;
        };
        let mut out = Vec::with_capacity(pieces.len());
        for p in &pieces {
            if p.len() % T::CDIM != 0 {
                break;
            }
            // signature of the complex Gram matrix must be nondegenerate
            let g = CMatrix::from_fn(p.len(), p.len(), |i, j| {
                crate::geometry::signed_inner(&ceps, &p[j], &p[i])
            });
            let (vals, _) = linalg::hermitian_eigen(&g);
            if vals.iter().any(|v| v.abs() < 1e-8) {
                break;
            }
            match build_subspace(gens.gens(), &eps, &words, p, &mut rng) {
                Some(s) if s.residual <= inv_tol => out.push(s),
                _ => break,
            }
        }
        if out.len() == pieces.len() {
            return Ok(SubspaceScan {
                irreducible: out.len() == 1,
                subspaces: out,
                split: true,
                restarts: restart + 1,
            });
        }
    }
    Ok(SubspaceScan {
        subspaces: vec![whole_space(gens.gens(), &eps)],
        irreducible: true,
        split: false,
        restarts: SCAN_RESTARTS,
    })
}
