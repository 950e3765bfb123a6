//! Loxodromic / parabolic / elliptic classification through the complex
//! model, and a one-sided nonelementarity search.

use num_complex::Complex64;

use crate::algebra::{eigen_complex, eigenspace, embed, linalg, CMatrix, Field, Matrix};
use crate::error::Result;
use crate::groups::{require_membership, GeneratorSet, GroupSpec};
use crate::traces::{word_ball, Word};

/// Smallest spectral gap treated as genuinely off the unit circle. Parabolic
/// Jordan blocks spread their eigenvalues by about `ε^{1/3}` in floating
/// point, so the gap cannot follow a tighter `tol`.
pub const SPECTRAL_FLOOR: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsometryKind {
    Loxodromic,
    Parabolic,
    Elliptic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsometryClass<T> {
    pub kind: IsometryKind,
    /// Loxodromic: attracting then repelling null vectors. Parabolic: one
    /// null vector. Elliptic: one negative vector.
    pub fixed_points: Vec<Vec<T>>,
    /// Distance of the deciding quantity from its threshold.
    pub margin: f64,
    pub spectral_radius: f64,
}

fn complex_signs(eps: &[f64], k: usize) -> Vec<f64> {
    eps.iter().flat_map(|&e| std::iter::repeat_n(e, k)).collect()
}

fn gram(basis: &[Vec<Complex64>], eps: &[f64]) -> CMatrix {
    CMatrix::from_fn(basis.len(), basis.len(), |i, j| {
        crate::geometry::signed_inner(eps, &basis[j], &basis[i])
    })
}

fn combine(basis: &[Vec<Complex64>], coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = basis[0].len();
    (0..n)
        .map(|r| basis.iter().zip(coeffs).map(|(b, c)| b[r] * c).sum())
        .collect()
}

/// Classifies `g ∈ spec` by the spectrum of its complex model.
pub fn classify<T: Field>(g: &Matrix<T>, spec: &GroupSpec, tol: f64) -> Result<IsometryClass<T>> {
    require_membership(g, spec, tol.max(1e-9))?;
    let m = embed::to_complex_matrix(g);
    let eps = complex_signs(&spec.signs(), T::CDIM);
    let pairs = eigen_complex(&m)?;
    let thr = tol.max(SPECTRAL_FLOOR);
    let (imax, rmax) = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p.value.norm()))
        .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    if rmax > 1.0 + thr {
        let imin = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.value.norm().total_cmp(&b.1.value.norm()))
            .map(|(i, _)| i)
            .expect("nonempty");
        let attract = embed::from_complex_vec(&pairs[imax].vector);
        let repel = embed::from_complex_vec(&pairs[imin].vector);
        return Ok(IsometryClass {
            kind: IsometryKind::Loxodromic,
            fixed_points: vec![attract, repel],
            margin: rmax - 1.0 - thr,
            spectral_radius: rmax,
        });
    }

    // Unit-circle spectrum: look for a negative vector in some eigenspace.
    let scale = m.frobenius_norm().max(1.0);
    let gram_thr = tol.max(1e-9) * scale * scale;
    let mut seen: Vec<Complex64> = Vec::new();
    let mut best_null: Option<(f64, Vec<Complex64>)> = None;
    for p in &pairs {
        if seen.iter().any(|s| (s - p.value).norm() <= thr * scale) {
            continue;
        }
        let members: Vec<Complex64> = pairs
            .iter()
            .filter(|q| (q.value - p.value).norm() <= thr * scale)
            .map(|q| q.value)
            .collect();
        let centre = members.iter().sum::<Complex64>() / members.len() as f64;
        seen.push(p.value);
        let basis = eigenspace(&m, centre, 1e-7);
        if basis.is_empty() {
            continue;
        }
        let (vals, vecs) = linalg::hermitian_eigen(&gram(&basis, &eps));
        if vals[0] < -gram_thr {
            let v = combine(&basis, &vecs.col(0));
            return Ok(IsometryClass {
                kind: IsometryKind::Elliptic,
                fixed_points: vec![embed::from_complex_vec(&v)],
                margin: (-vals[0] - gram_thr).min(thr - (rmax - 1.0)),
                spectral_radius: rmax,
            });
        }
        let (k, v0) = vals
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .expect("nonempty");
        if best_null.as_ref().is_none_or(|(b, _)| v0.abs() < *b) {
            best_null = Some((v0.abs(), combine(&basis, &vecs.col(k))));
        }
    }
    let fixed_points = best_null
        .map(|(_, v)| vec![embed::from_complex_vec(&v)])
        .unwrap_or_default();
    Ok(IsometryClass {
        kind: IsometryKind::Parabolic,
        fixed_points,
        margin: thr - (rmax - 1.0),
        spectral_radius: rmax,
    })
}

/// Boundary point of a null vector in the affine chart `x_{n+1} = 1`.
fn boundary_coords<T: Field>(x: &[T]) -> Option<Vec<T>> {
    let last = *x.last()?;
    if last.norm() < 1e-12 * crate::algebra::vec_norm(x) {
        return None;
    }
    let inv = last.inv();
    Some(x[..x.len() - 1].iter().map(|&v| v * inv).collect())
}

fn chordal<T: Field>(a: &[T], b: &[T]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Elementarity {
    /// Two loxodromic words with disjoint fixed-point pairs.
    Nonelementary { first: Word, second: Word, separation: f64 },
    /// Nothing found in the scanned ball; never a claim of elementarity.
    Inconclusive,
}

/// Searches the word ball for two loxodromics with disjoint fixed points.
pub fn nonelementary_heuristic<T: Field>(gens: &GeneratorSet<T>, word_len: usize, tol: f64) -> Elementarity {
    let sep = tol.max(1e-6);
    let mut found: Vec<(Word, [Vec<T>; 2])> = Vec::new();
    for (w, m) in word_ball(gens, word_len).take(20_000) {
        let Ok(c) = classify(&m, gens.group(), tol.max(1e-8)) else {
            continue;
        };
        if c.kind != IsometryKind::Loxodromic {
            continue;
        }
        let (Some(a), Some(b)) = (boundary_coords(&c.fixed_points[0]), boundary_coords(&c.fixed_points[1])) else {
            continue;
        };
        for (w0, [a0, b0]) in &found {
            let d = [chordal(&a, a0), chordal(&a, b0), chordal(&b, a0), chordal(&b, b0)]
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            if d > sep {
                return Elementarity::Nonelementary {
                    first: w0.clone(),
                    second: w,
                    separation: d,
                };
            }
        }
        if found.len() < 64 {
            found.push((w, [a, b]));
        }
    }
    Elementarity::Inconclusive
}
