//! Real and complex matrix models of `ℂ` and `ℍ`.
//!
//! * `z = a + ib ↦ [[a, −b], [b, a]]`
//! * `q = a + bi + cj + dk ↦` the 4×4 real matrix with first row `(a, b, c, d)`
//!   (the transpose of right multiplication, hence a ring homomorphism)
//! * `q = z + wj ↦ [[z, w], [−w̄, z̄]]`
//!
//! Each extends entrywise to square matrices by replacing every entry with its
//! block.

use num_complex::Complex64;

use super::{CMatrix, Field, HMatrix, Matrix, Quaternion, RMatrix, Scalar};

pub fn embed_c2r(z: Complex64) -> RMatrix {
    Matrix::from_rows(&[vec![z.re, -z.im], vec![z.im, z.re]]).expect("2x2")
}

pub fn embed_q2r(q: Quaternion) -> RMatrix {
    let Quaternion { a, b, c, d } = q;
    Matrix::from_rows(&[
        vec![a, b, c, d],
        vec![-b, a, -d, c],
        vec![-c, d, a, -b],
        vec![-d, -c, b, a],
    ])
    .expect("4x4")
}

pub fn embed_q2c(q: Quaternion) -> CMatrix {
    let [[z, w], [x, y]] = q2c_block(q);
    Matrix::from_rows(&[vec![z, w], vec![x, y]]).expect("2x2")
}

fn q2c_block(q: Quaternion) -> [[Complex64; 2]; 2] {
    let (z, w) = q.complex_pair();
    [[z, w], [-w.conj(), z.conj()]]
}

fn blockwise<T: Scalar, U: Scalar>(g: &Matrix<T>, k: usize, block: impl Fn(T) -> Matrix<U>) -> Matrix<U> {
    let mut out = Matrix::zeros(g.rows() * k, g.cols() * k);
    for r in 0..g.rows() {
        for s in 0..g.cols() {
            let b = block(g[(r, s)]);
            for i in 0..k {
                for j in 0..k {
                    out[(k * r + i, k * s + j)] = b[(i, j)];
                }
            }
        }
    }
    out
}

/// `CMatrix(N) → RMatrix(2N)`.
pub fn embed_mat_c2r(g: &CMatrix) -> RMatrix {
    blockwise(g, 2, embed_c2r)
}

/// `HMatrix(N) → RMatrix(4N)`.
pub fn embed_mat_q2r(g: &HMatrix) -> RMatrix {
    blockwise(g, 4, embed_q2r)
}

/// `HMatrix(N) → CMatrix(2N)`, interleaving the 2×2 blocks.
pub fn embed_mat_q2c(g: &HMatrix) -> CMatrix {
    blockwise(g, 2, embed_q2c)
}

/// Inverse of [`embed_mat_q2c`] on its image (reads the top row of each block).
pub fn unembed_mat_q2c(m: &CMatrix) -> HMatrix {
    debug_assert!(m.rows().is_multiple_of(2) && m.cols().is_multiple_of(2));
    Matrix::from_fn(m.rows() / 2, m.cols() / 2, |r, s| {
        Quaternion::from_complex_pair(m[(2 * r, 2 * s)], m[(2 * r, 2 * s + 1)])
    })
}

/// Complex model of a matrix over `ℂ` (identity) or `ℍ` ([`embed_mat_q2c`]).
pub fn to_complex_matrix<T: Field>(g: &Matrix<T>) -> CMatrix {
    let k = T::CDIM;
    let mut out = CMatrix::zeros(g.rows() * k, g.cols() * k);
    for r in 0..g.rows() {
        for s in 0..g.cols() {
            let x = g[(r, s)];
            if k == 1 {
                out[(r, s)] = x.complex_part();
            } else {
                let q = Quaternion::from_complex_pair(x.complex_part(), jk_part(x));
                let b = q2c_block(q);
                for i in 0..2 {
                    for j in 0..2 {
                        out[(2 * r + i, 2 * s + j)] = b[i][j];
                    }
                }
            }
        }
    }
    out
}

// `w` in `x = z + w j`, read through the vector identification.
fn jk_part<T: Field>(x: T) -> Complex64 {
    let v = x.to_cvec();
    -v[1].conj()
}

pub fn from_complex_matrix<T: Field>(m: &CMatrix) -> Matrix<T> {
    let k = T::CDIM;
    Matrix::from_fn(m.rows() / k, m.cols() / k, |r, s| {
        if k == 1 {
            T::from_complex(m[(r, s)])
        } else {
            // top row of the block is (z, w); the vector form of z + wj is (z, −w̄)
            T::from_cvec([m[(2 * r, 2 * s)], -m[(2 * r, 2 * s + 1)].conj()])
        }
    })
}

/// Vector over `ℂ`/`ℍ` as a complex vector (right `ℂ`-linear identification).
pub fn to_complex_vec<T: Field>(v: &[T]) -> Vec<Complex64> {
    v.iter()
        .flat_map(|x| {
            let c = x.to_cvec();
            c.into_iter().take(T::CDIM)
        })
        .collect()
}

pub fn from_complex_vec<T: Field>(v: &[Complex64]) -> Vec<T> {
    let k = T::CDIM;
    v.chunks(k)
        .map(|c| T::from_cvec([c[0], if k == 2 { c[1] } else { Complex64::new(0.0, 0.0) }]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn c2r_examples() {
        assert_eq!(embed_c2r(c(1.0, 0.0)), RMatrix::identity(2));
        let i = embed_c2r(c(0.0, 1.0));
        assert_eq!(i, Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap());
        assert_eq!(&i * &i, RMatrix::identity(2).scale_real(-1.0));
    }

    #[test]
    fn q2r_examples() {
        assert_eq!(embed_q2r(Quaternion::ONE), RMatrix::identity(4));
        assert_eq!(
            &embed_q2r(Quaternion::I) * &embed_q2r(Quaternion::J),
            embed_q2r(Quaternion::K)
        );
        let q = Quaternion::new(0.5, -2.0, 3.0, 7.0);
        assert_eq!(embed_q2r(q).trace().unwrap(), 4.0 * q.a);
    }

    #[test]
    fn q2c_examples() {
        let j = embed_q2c(Quaternion::J);
        assert_eq!(
            j,
            Matrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(-1.0, 0.0), c(0.0, 0.0)]]).unwrap()
        );
        let q = Quaternion::new(1.0, 2.0, -3.0, 0.5);
        let m = embed_q2c(q);
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        assert!((det - c(q.norm_sqr(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn q2c_matrix_roundtrip_and_vector_action() {
        let g = HMatrix::from_rows(&[
            vec![
                Quaternion::new(1.0, 2.0, 3.0, 4.0),
                Quaternion::new(-1.0, 0.5, 0.0, 2.0),
            ],
            vec![
                Quaternion::new(0.0, 1.0, -1.0, 0.0),
                Quaternion::new(2.0, 0.0, 0.0, -3.0),
            ],
        ])
        .unwrap();
        let m = embed_mat_q2c(&g);
        assert_eq!(unembed_mat_q2c(&m), g);
        assert_eq!(to_complex_matrix(&g), m);
        assert_eq!(from_complex_matrix::<Quaternion>(&m), g);

        let x = vec![
            Quaternion::new(0.3, -1.0, 2.0, 0.1),
            Quaternion::new(1.0, 1.0, 1.0, 1.0),
        ];
        let gx = g.mul_vec(&x).unwrap();
        let lhs = m.mul_vec(&to_complex_vec(&x)).unwrap();
        let rhs = to_complex_vec(&gx);
        for (a, b) in lhs.iter().zip(&rhs) {
            assert!((a - b).norm() < 1e-12);
        }
        assert_eq!(from_complex_vec::<Quaternion>(&to_complex_vec(&x)), x);
    }

    #[test]
    fn c2r_trace_and_imaginary_diagonal() {
        let g = CMatrix::from_rows(&[vec![c(1.0, 2.0), c(3.0, -1.0)], vec![c(0.5, 0.5), c(-2.0, 4.0)]]).unwrap();
        let r = embed_mat_c2r(&g);
        assert_eq!(r.trace().unwrap(), 2.0 * g.trace().unwrap().re);
        // b-entries sit at (2k+1, 2k) of each diagonal block
        let b_sum: f64 = (0..2).map(|k| r[(2 * k + 1, 2 * k)]).sum();
        assert_eq!(b_sum, g.trace().unwrap().im);
    }
}
