//! Real forms: antilinear intertwiners `γ S = S γ̄` and the conjugators they
//! induce.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::linear::{antilinear_commutant, combination, expand, positives_first, restrict};
use super::scan::invariant_subspace_scan;
use crate::algebra::{linalg, CMatrix, Matrix};
use crate::error::Result;
use crate::groups::{form_inverse, GeneratorSet};

const PHASES: [f64; 6] = [0.0, 0.9, 1.7, 2.6, 3.9, 5.1];

#[derive(Clone, Debug, PartialEq)]
pub struct RealStructure {
    /// `S` with `S S̄ = I` and `γ S = S γ̄` for every generator.
    pub s: CMatrix,
    /// Ambient element with `T⁻¹ γ T` real for every generator.
    pub conjugator: CMatrix,
    /// Largest imaginary entry of a conjugated generator, relative to its norm.
    pub residual: f64,
}

fn relative_im(gens: &[CMatrix], t: &CMatrix, signs: &[f64]) -> f64 {
    let tinv = form_inverse(t, signs);
    gens.iter()
        .map(|g| (&(&tinv * g) * t).max_im() / g.frobenius_norm().max(1.0))
        .fold(0.0, f64::max)
}

fn rephase_real(v: &[Complex64]) -> Vec<f64> {
    let big = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or_default();
    let phase = if big.norm() > 0.0 {
        big.conj() / big.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    v.iter().map(|z| (z * phase).re).collect()
}

/// Real form of one irreducible block: returns `(S, T, signs)` where the
/// columns of `T` are orthonormal for `diag(signs_in)` with the new signs
/// `signs` (positive first) and `T⁻¹ c T` is real.
pub(crate) fn block_real_form(gens: &[CMatrix], signs_in: &[f64]) -> Option<(CMatrix, CMatrix, Vec<f64>)> {
    let k = gens[0].rows();
    let sols = antilinear_commutant(gens);
    if sols.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ea1);
    let coeffs: Vec<f64> = (0..sols.len()).map(|_| rng.sample(StandardNormal)).collect();
    let s = combination(&sols, &coeffs);
    let ss = &s * &s.conj();
    let lambda = ss.trace().ok()?.re / k as f64;
    if lambda <= 0.0 || (&ss - &CMatrix::identity(k).scale_real(lambda)).frobenius_norm() > 1e-6 * lambda {
        return None;
    }
    let s = s.scale_real(1.0 / lambda.sqrt());
    let mu = (&form_inverse(&s, signs_in) * &s).trace().ok()?.re / k as f64;
    if (mu - 1.0).abs() > 1e-6 {
        return None;
    }
    let t0 = PHASES
        .iter()
        .map(|&a| &CMatrix::identity(k) + &s.scale_left(Complex64::from_polar(1.0, a)))
        .max_by(|a, b| {
            let sa = *linalg::singular_values(a).last().unwrap_or(&0.0);
            let sb = *linalg::singular_values(b).last().unwrap_or(&0.0);
            sa.total_cmp(&sb)
        })?;
    if *linalg::singular_values(&t0).last()? < 1e-8 {
        return None;
    }
    // Gram matrix of the real basis is real symmetric.
    let cols = t0.columns();
    let gram = CMatrix::from_fn(k, k, |i, j| {
        Complex64::new(crate::geometry::signed_inner(signs_in, &cols[j], &cols[i]).re, 0.0)
    });
    let (vals, vecs) = linalg::hermitian_eigen(&gram);
    if vals.iter().any(|v| v.abs() < 1e-10) {
        return None;
    }
    let mut out: Vec<(Vec<Complex64>, f64)> = (0..k)
        .map(|j| {
            let q = rephase_real(&vecs.col(j));
            let w: Vec<Complex64> = q
                .iter()
                .map(|&x| Complex64::new(x / vals[j].abs().sqrt(), 0.0))
                .collect();
            (expand(&cols, &w), vals[j].signum())
        })
        .collect();
    out = positives_first(out);
    let (tcols, signs): (Vec<_>, Vec<_>) = out.into_iter().unzip();
    let t = CMatrix::from_columns(&tcols).ok()?;
    // T⁻¹ uses the input form on the left and the new signs on the right.
    let tinv = Matrix::from_fn(k, k, |i, j| t[(j, i)].conj().scale(signs[i] * signs_in[j]));
    let worst = gens
        .iter()
        .map(|g| (&(&tinv * g) * &t).max_im() / g.frobenius_norm().max(1.0))
        .fold(0.0, f64::max);
    (worst <= 1e-7).then_some((s, t, signs))
}

/// Looks for `T` in the ambient group with `T⁻¹ γ T` real for every
/// generator. Absent when some irreducible summand has no real form
/// compatible with the form.
pub fn real_structure_solve(gens: &GeneratorSet<Complex64>, tol: f64) -> Result<Option<RealStructure>> {
    let eps = gens.group().signs();
    let n = gens.size();
    let real_tol = tol.max(1e-12);
    if gens
        .gens()
        .iter()
        .all(|g| g.max_im() <= real_tol * g.frobenius_norm().max(1.0))
    {
        return Ok(Some(RealStructure {
            s: CMatrix::identity(n),
            conjugator: CMatrix::identity(n),
            residual: relative_im(gens.gens(), &CMatrix::identity(n), &eps),
        }));
    }
    let scan = invariant_subspace_scan(gens, 1, tol)?;
    if !scan.split {
        return Ok(None);
    }
    let mut cols: Vec<(Vec<Complex64>, f64)> = Vec::with_capacity(n);
    for sub in &scan.subspaces {
        let c: Vec<CMatrix> = gens
            .gens()
            .iter()
            .map(|g| restrict(g, &sub.basis, &sub.signs, &eps))
            .collect();
        let Some((_, t, signs)) = block_real_form(&c, &sub.signs) else {
            return Ok(None);
        };
        for (j, s) in signs.into_iter().enumerate() {
            cols.push((expand(&sub.basis, &t.col(j)), s));
        }
    }
    let (cols, signs): (Vec<_>, Vec<_>) = positives_first(cols).into_iter().unzip();
    if signs != eps {
        return Ok(None);
    }
    let mut t = CMatrix::from_columns(&cols)?;
    let d = linalg::complex_det(&t)?;
    t = t.scale_left(d.inv().powf(1.0 / n as f64));
    let s = &t * &linalg::complex_inverse(&t.conj())?;
    let residual = relative_im(gens.gens(), &t, &eps);
    if residual > 1e-7 {
        return Ok(None);
    }
    Ok(Some(RealStructure {
        s,
        conjugator: t,
        residual,
    }))
}
