//! Dense factorizations backed by `nalgebra`: SVD, null spaces, Hermitian
//! eigendecomposition, LU inverse and determinant.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{embed, CMatrix, Field, Matrix, RMatrix, Scalar};
use crate::error::{Error, Result};

/// Relative singular-value threshold used for every rank decision.
pub const RANK_RTOL: f64 = 1e-8;

fn to_na<T: Scalar + nalgebra::Scalar>(m: &Matrix<T>) -> DMatrix<T> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.data())
}

fn from_na<T: Scalar + nalgebra::Scalar>(m: &DMatrix<T>) -> Matrix<T> {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

pub fn complex_det(m: &CMatrix) -> Result<Complex64> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    Ok(to_na(m).determinant())
}

pub fn complex_inverse(m: &CMatrix) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    to_na(m).try_inverse().map(|x| from_na(&x)).ok_or(Error::Singular)
}

/// Numerical inverse over `ℂ` or `ℍ` (the latter through the complex model).
pub fn inverse<T: Field>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let c = embed::to_complex_matrix(m);
    Ok(embed::from_complex_matrix(&complex_inverse(&c)?))
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = to_na(m).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Largest singular value.
pub fn op_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

fn padded(m: &CMatrix) -> DMatrix<Complex64> {
    // thin SVD only returns min(rows, cols) right vectors
    let rows = m.rows().max(m.cols());
    let mut a = DMatrix::zeros(rows, m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            a[(i, j)] = m[(i, j)];
        }
    }
    a
}

/// Orthonormal basis of `{x : m x ≈ 0}`; singular values `≤ rtol · σ_max`
/// count as zero. Returned vectors are sorted by increasing singular value.
pub fn null_space(m: &CMatrix, rtol: f64) -> Vec<Vec<Complex64>> {
    let svd = padded(m).svd(false, true);
    let vt = svd.v_t.expect("requested V");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let mut idx: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] <= rtol * smax.max(f64::MIN_POSITIVE))
        .collect();
    idx.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    idx.into_iter()
        .map(|k| (0..m.cols()).map(|j| vt[(k, j)].conj()).collect())
        .collect()
}

/// The `count` right singular vectors with smallest singular values, with
/// those singular values.
pub fn smallest_right_singular(m: &CMatrix, count: usize) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let svd = padded(m).svd(false, true);
    let vt = svd.v_t.expect("requested V");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    idx.truncate(count);
    let sv = idx.iter().map(|&k| svd.singular_values[k]).collect();
    let vecs = idx
        .iter()
        .map(|&k| (0..m.cols()).map(|j| vt[(k, j)].conj()).collect())
        .collect();
    (sv, vecs)
}

/// Real null space, same conventions as [`null_space`].
pub fn real_null_space(m: &RMatrix, rtol: f64) -> Vec<Vec<f64>> {
    let rows = m.rows().max(m.cols());
    let mut a = DMatrix::<f64>::zeros(rows, m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            a[(i, j)] = m[(i, j)];
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let mut idx: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] <= rtol * smax.max(f64::MIN_POSITIVE))
        .collect();
    idx.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    idx.into_iter()
        .map(|k| (0..m.cols()).map(|j| vt[(k, j)]).collect())
        .collect()
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
/// Hermitian matrix. Only the lower triangle is trusted.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let sym = to_na(m);
    let herm = (&sym + sym.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = idx.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = CMatrix::from_fn(m.rows(), idx.len(), |i, j| eig.eigenvectors[(i, idx[j])]);
    (vals, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(2.0, 0.0), c(0.0, 2.0)]]).unwrap();
        let ns = null_space(&m, RANK_RTOL);
        assert_eq!(ns.len(), 1);
        let r = m.mul_vec(&ns[0]).unwrap();
        assert!(r.iter().all(|x| x.norm() < 1e-12));
    }

    #[test]
    fn wide_matrix_null_space() {
        let m = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]]).unwrap();
        assert_eq!(null_space(&m, RANK_RTOL).len(), 2);
    }

    #[test]
    fn det_and_inverse() {
        let m = CMatrix::from_rows(&[vec![c(2.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(3.0, 0.0)]]).unwrap();
        assert!((complex_det(&m).unwrap() - c(5.0, 0.0)).norm() < 1e-12);
        let inv = complex_inverse(&m).unwrap();
        let id = &m * &inv;
        assert!((&id - &CMatrix::identity(2)).max_abs() < 1e-12);
        assert_eq!(complex_inverse(&CMatrix::zeros(2, 2)), Err(Error::Singular));
    }

    #[test]
    fn hermitian_eigen_sorted() {
        let m = CMatrix::from_diag(&[c(3.0, 0.0), c(-1.0, 0.0), c(0.5, 0.0)]);
        let (vals, _) = hermitian_eigen(&m);
        assert_eq!(vals, vec![-1.0, 0.5, 3.0]);
    }
}
