//! Real-coordinate linear algebra over `M_k(ℂ)` and `M_k(ℍ)`: commutants,
//! antilinear intertwiners, restriction to invariant subspaces and
//! Gram-Schmidt against an indefinite diagonal form.

use num_complex::Complex64;

use crate::algebra::{linalg, CMatrix, Field, Matrix, RMatrix};
use crate::geometry::signed_inner;

fn components<T: Field>(x: T) -> Vec<f64> {
    let v = x.to_cvec();
    v[..T::CDIM].iter().flat_map(|z| [z.re, z.im]).collect()
}

fn from_components<T: Field>(c: &[f64]) -> T {
    let z = Complex64::new(c[0], c[1]);
    let w = if T::CDIM == 2 {
        Complex64::new(c[2], c[3])
    } else {
        Complex64::new(0.0, 0.0)
    };
    T::from_cvec([z, w])
}

fn flatten<T: Field>(m: &Matrix<T>) -> Vec<f64> {
    m.data().iter().flat_map(|&x| components(x)).collect()
}

fn unflatten<T: Field>(v: &[f64], k: usize) -> Matrix<T> {
    let rd = 2 * T::CDIM;
    Matrix::from_fn(k, k, |i, j| from_components(&v[(i * k + j) * rd..(i * k + j + 1) * rd]))
}

fn unit_matrices<T: Field>(k: usize) -> Vec<Matrix<T>> {
    let rd = 2 * T::CDIM;
    (0..k * k * rd)
        .map(|a| {
            let mut v = vec![0.0; k * k * rd];
            v[a] = 1.0;
            unflatten(&v, k)
        })
        .collect()
}

// Null space of a real-linear map on M_k(T) given by its action.
fn real_kernel<T: Field>(k: usize, map: impl Fn(&Matrix<T>) -> Vec<f64>) -> Vec<Matrix<T>> {
    let basis = unit_matrices::<T>(k);
    let cols: Vec<Vec<f64>> = basis.iter().map(map).collect();
    let rows = cols.first().map_or(0, Vec::len);
    if rows == 0 {
        return basis;
    }
    let a = RMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i]);
    linalg::real_null_space(&a, linalg::RANK_RTOL)
        .into_iter()
        .map(|v| unflatten(&v, k))
        .collect()
}

/// Real basis of `{X : X g = g X for every g}`.
pub(crate) fn commutant<T: Field>(gens: &[Matrix<T>]) -> Vec<Matrix<T>> {
    let k = gens[0].rows();
    let scale: Vec<f64> = gens.iter().map(|g| g.frobenius_norm().max(1.0)).collect();
    real_kernel(k, |x| {
        gens.iter()
            .zip(&scale)
            .flat_map(|(g, s)| flatten(&(&(x * g) - &(g * x)).scale_real(1.0 / s)))
            .collect()
    })
}

/// Real basis of `{S : c S = S c̄ for every c}`.
pub(crate) fn antilinear_commutant(gens: &[CMatrix]) -> Vec<CMatrix> {
    let k = gens[0].rows();
    let bars: Vec<CMatrix> = gens.iter().map(CMatrix::conj).collect();
    let scale: Vec<f64> = gens.iter().map(|g| g.frobenius_norm().max(1.0)).collect();
    real_kernel(k, |s| {
        gens.iter()
            .zip(&bars)
            .zip(&scale)
            .flat_map(|((c, cb), sc)| flatten(&(&(c * s) - &(s * cb)).scale_real(1.0 / sc)))
            .collect()
    })
}

/// `Σ r_a X_a`.
pub(crate) fn combination<T: Field>(basis: &[Matrix<T>], coeffs: &[f64]) -> Matrix<T> {
    let k = basis[0].rows();
    basis
        .iter()
        .zip(coeffs)
        .fold(Matrix::zeros(k, k), |acc, (x, &r)| &acc + &x.scale_real(r))
}

/// `c_ij = s_i ⟨g b_j, b_i⟩` for an orthonormal basis `b` with signs `s`.
pub(crate) fn restrict<T: Field>(g: &Matrix<T>, basis: &[Vec<T>], signs: &[f64], eps: &[f64]) -> Matrix<T> {
    let images: Vec<Vec<T>> = basis.iter().map(|b| g.mul_vec(b).expect("size")).collect();
    Matrix::from_fn(basis.len(), basis.len(), |i, j| {
        signed_inner(eps, &images[j], &basis[i]).scale(signs[i])
    })
}

/// `Σ_i b_i y_i` (right scalars).
pub(crate) fn expand<T: Field>(basis: &[Vec<T>], y: &[T]) -> Vec<T> {
    let n = basis[0].len();
    (0..n)
        .map(|r| basis.iter().zip(y).fold(T::zero(), |acc, (b, &c)| acc + b[r] * c))
        .collect()
}

/// Orthonormalizes against `⟨z,w⟩ = Σ ε w̄ z`, pivoting on the candidate of
/// largest relative `|⟨x,x⟩|`. Returns `count` vectors with their signs, or
/// `None` when the candidates run out first.
pub(crate) fn hyperbolic_gram_schmidt<T: Field>(
    eps: &[f64],
    mut candidates: Vec<Vec<T>>,
    count: usize,
) -> Option<Vec<(Vec<T>, f64)>> {
    let mut out: Vec<(Vec<T>, f64)> = Vec::with_capacity(count);
    let scale: f64 = candidates
        .iter()
        .map(|c| c.iter().map(|x| x.norm_sqr()).sum::<f64>())
        .fold(0.0, f64::max);
    while out.len() < count {
        let (idx, q) = candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (i, signed_inner(eps, c, c).re()))
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))?;
        if q.abs() <= 1e-10 * scale {
            return None;
        }
        let x = candidates.swap_remove(idx);
        let s = q.signum();
        let x: Vec<T> = x.into_iter().map(|v| v.scale(1.0 / q.abs().sqrt())).collect();
        for c in candidates.iter_mut() {
            let coef = signed_inner(eps, c, &x).scale(s);
            for (ci, &xi) in c.iter_mut().zip(&x) {
                *ci = *ci - xi * coef;
            }
        }
        out.push((x, s));
    }
    Some(out)
}

/// Orders positive vectors before negative ones, keeping relative order.
pub(crate) fn positives_first<T: Clone>(v: Vec<(Vec<T>, f64)>) -> Vec<(Vec<T>, f64)> {
    let (mut pos, neg): (Vec<_>, Vec<_>) = v.into_iter().partition(|(_, s)| *s > 0.0);
    pos.extend(neg);
    pos
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{HMatrix, Quaternion};
    use crate::groups::{random_element, GroupSpec};

    #[test]
    fn commutant_of_generic_su21_is_scalars() {
        let a: CMatrix = random_element(&GroupSpec::su(2, 1), 1).unwrap();
        let b: CMatrix = random_element(&GroupSpec::su(2, 1), 2).unwrap();
        assert_eq!(commutant(&[a, b]).len(), 2);
    }

    #[test]
    fn quaternionic_commutant_of_real_matrices() {
        let a: CMatrix = random_element(&GroupSpec::so(2, 1), 1).unwrap();
        let b: CMatrix = random_element(&GroupSpec::so(2, 1), 2).unwrap();
        let lift = |m: &CMatrix| -> HMatrix { m.map(Quaternion::from) };
        // left multiplication by any quaternion scalar
        assert_eq!(commutant(&[lift(&a), lift(&b)]).len(), 4);
    }

    #[test]
    fn antilinear_commutant_types() {
        let a: CMatrix = random_element(&GroupSpec::su2(), 3).unwrap();
        let b: CMatrix = random_element(&GroupSpec::su2(), 4).unwrap();
        let s = antilinear_commutant(&[a, b]);
        assert_eq!(s.len(), 2);
        let ss = &s[0] * &s[0].conj();
        // quaternionic type: S S̄ is a negative multiple of I
        assert!(ss[(0, 0)].re < 0.0);
        assert!((ss[(0, 0)] - ss[(1, 1)]).norm() < 1e-10);
    }

    #[test]
    fn gram_schmidt_signature() {
        let eps = [1.0, 1.0, -1.0];
        let c = |a: f64, b: f64| Complex64::new(a, b);
        let cands = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)],
            vec![c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.3, 0.0), c(0.0, 0.0), c(0.1, 1.0)],
        ];
        let out = hyperbolic_gram_schmidt(&eps, cands, 3).unwrap();
        let signs: Vec<f64> = out.iter().map(|(_, s)| *s).collect();
        assert_eq!(signs.iter().filter(|&&s| s < 0.0).count(), 1);
        for (i, (x, s)) in out.iter().enumerate() {
            for (j, (y, _)) in out.iter().enumerate() {
                let v = signed_inner(&eps, x, y);
                let target = if i == j { *s } else { 0.0 };
                assert!((v - c(target, 0.0)).norm() < 1e-12);
            }
        }
    }
}
