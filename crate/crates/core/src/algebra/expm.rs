use super::{Matrix, Scalar};

/// Matrix exponential by scaling and squaring of the Taylor series.
pub fn expm<T: Scalar>(x: &Matrix<T>) -> Matrix<T> {
    let n = x.rows();
    let norm = x.frobenius_norm();
    let mut s = 0;
    while norm / f64::from(1u32 << s.min(30)) > 0.5 && s < 60 {
        s += 1;
    }
    let a = x.scale_real(0.5f64.powi(s));
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=30 {
        term = (&term * &a).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.frobenius_norm() < 1e-18 * sum.frobenius_norm() {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}
