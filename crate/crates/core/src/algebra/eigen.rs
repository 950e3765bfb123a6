//! Eigenvalues of general complex matrices: Householder reduction to upper
//! Hessenberg form followed by single-shift complex QR with Wilkinson shifts.
//! Eigenvectors are recovered afterwards as (near-)null vectors of `M − λI`.

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use super::{linalg, CMatrix};
use crate::error::{Error, Result};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub value: Complex64,
    /// Unit vector; for a defective eigenvalue only the first vector of the
    /// cluster is a true eigenvector.
    pub vector: Vec<Complex64>,
    /// `‖M v − λ v‖`.
    pub residual: f64,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn hessenberg(m: &CMatrix) -> Vec<Vec<Complex64>> {
    let n = m.rows();
    let mut h: Vec<Vec<Complex64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for k in 0..n.saturating_sub(2) {
        let alpha2: f64 = (k + 1..n).map(|i| h[i][k].norm_sqr()).sum();
        let alpha = alpha2.sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = h[k + 1][k];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        // v = x + phase·α·e₁, reflector P = I − 2vv*/(v*v)
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[i][k]).collect();
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // rows: H ← P H
        for j in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(r, vr)| vr.conj() * h[k + 1 + r][j]).sum();
            let f = s * (2.0 / vnorm2);
            for (r, vr) in v.iter().enumerate() {
                h[k + 1 + r][j] -= vr * f;
            }
        }
        // columns: H ← H P
        for row in h.iter_mut() {
            let s: Complex64 = v.iter().enumerate().map(|(r, vr)| row[k + 1 + r] * vr).sum();
            let f = s * (2.0 / vnorm2);
            for (r, vr) in v.iter().enumerate() {
                row[k + 1 + r] -= f * vr.conj();
            }
        }
        for row in h.iter_mut().skip(k + 2) {
            row[k] = zero();
        }
    }
    h
}

// Eigenvalue of the trailing 2×2 block closer to its last diagonal entry.
fn wilkinson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr * 0.25 - det).sqrt();
    let l1 = tr * 0.5 + disc;
    let l2 = tr * 0.5 - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if r == 0.0 {
        return (1.0, zero());
    }
    if a.norm() == 0.0 {
        return (0.0, b.conj() / b.norm());
    }
    let c = a.norm() / r;
    let s = (a / a.norm()) * b.conj() / r;
    (c, s)
}

/// All eigenvalues of a square complex matrix (with multiplicity), in the
/// order they deflate.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if !m.is_finite() {
        return Err(Error::Numeric("non-finite matrix entry".into()));
    }
    let mut h = hessenberg(m);
    let mut out = vec![zero(); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut since_deflation = 0usize;
    let cap = MAX_SWEEPS_PER_EIGENVALUE * n;
    loop {
        if hi == 0 {
            out[0] = h[0][0];
            break;
        }
        // locate the active unreduced block [lo, hi]
        let mut lo = hi;
        while lo > 0 {
            let s = h[lo - 1][lo - 1].norm() + h[lo][lo].norm();
            let scale = if s == 0.0 { 1.0 } else { s };
            if h[lo][lo - 1].norm() <= f64::EPSILON * scale {
                h[lo][lo - 1] = zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out[hi] = h[hi][hi];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        iter += 1;
        since_deflation += 1;
        if iter > cap {
            return Err(Error::EigenNoConvergence { iterations: iter });
        }
        let mu = if since_deflation.is_multiple_of(11) {
            // exceptional shift to break cycles
            h[hi][hi] + Complex64::new(0.75 * h[hi][hi - 1].norm(), 0.25 * h[hi][hi - 1].norm())
        } else {
            wilkinson(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        for k in lo..=hi {
            h[k][k] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            for j in k..n {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = x * c + s * y;
                h[k + 1][j] = -s.conj() * x + y * c;
            }
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            let top = (k + 2).min(hi);
            for row in h.iter_mut().take(top + 1) {
                let x = row[k];
                let y = row[k + 1];
                row[k] = x * c + y * s.conj();
                row[k + 1] = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            h[k][k] += mu;
        }
    }
    Ok(out)
}

/// Orthonormal basis of the numerical eigenspace of `λ`: right singular
/// vectors of `M − λI` with singular value `≤ tol · max(1, ‖M‖)`.
pub fn eigenspace(m: &CMatrix, lambda: Complex64, tol: f64) -> Vec<Vec<Complex64>> {
    let n = m.rows();
    let shifted = CMatrix::from_fn(n, n, |i, j| if i == j { m[(i, j)] - lambda } else { m[(i, j)] });
    let scale = m.frobenius_norm().max(1.0);
    let (sv, vecs) = linalg::smallest_right_singular(&shifted, n);
    sv.into_iter()
        .zip(vecs)
        .filter(|(s, _)| *s <= tol * scale)
        .map(|(_, v)| v)
        .collect()
}

/// Eigenvalues paired with unit eigenvectors.
///
/// Eigenvalues within `1e-4 · max(1, ‖M‖)` of each other are treated as one
/// cluster, and the cluster receives orthonormal vectors spanning the best
/// approximate eigenspace.
pub fn eigen_complex(m: &CMatrix) -> Result<Vec<Eigenpair>> {
    let vals = eigenvalues(m)?;
    let n = vals.len();
    let scale = m.frobenius_norm().max(1.0);
    let cluster_tol = 1e-4 * scale;
    let mut assigned = vec![false; n];
    let mut out: Vec<Option<Eigenpair>> = vec![None; n];
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let members: Vec<usize> = (i..n)
            .filter(|&j| !assigned[j] && (vals[j] - vals[i]).norm() <= cluster_tol)
            .collect();
        let centre = members.iter().map(|&j| vals[j]).sum::<Complex64>() / members.len() as f64;
        let shifted = CMatrix::from_fn(n, n, |r, c| if r == c { m[(r, c)] - centre } else { m[(r, c)] });
        let (_, vecs) = linalg::smallest_right_singular(&shifted, members.len());
        for (slot, &j) in members.iter().enumerate() {
            assigned[j] = true;
            let v = vecs[slot].clone();
            let mv = m.mul_vec(&v)?;
            let residual = mv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - vals[j] * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            out[j] = Some(Eigenpair {
                value: vals[j],
                vector: v,
                residual,
            });
        }
    }
    Ok(out.into_iter().map(|p| p.expect("every eigenvalue assigned")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_by_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal() {
        let m = CMatrix::from_diag(&[c(2.0, 0.0), c(0.5, 0.0)]);
        let v = sorted_by_re(eigenvalues(&m).unwrap());
        assert!((v[0] - c(0.5, 0.0)).norm() < 1e-14);
        assert!((v[1] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rotation_phases() {
        let t = 0.9f64;
        let m = CMatrix::from_diag(&[c(t.cos(), t.sin()), c(t.cos(), -t.sin())]);
        let v = eigenvalues(&m).unwrap();
        assert!(v.iter().any(|z| (z - c(t.cos(), t.sin())).norm() < 1e-14));
        assert!(v.iter().any(|z| (z - c(t.cos(), -t.sin())).norm() < 1e-14));
    }

    #[test]
    fn hyperbolic_su11() {
        let t = 1.3f64;
        let m = CMatrix::from_rows(&[
            vec![c(t.cosh(), 0.0), c(t.sinh(), 0.0)],
            vec![c(t.sinh(), 0.0), c(t.cosh(), 0.0)],
        ])
        .unwrap();
        let v = sorted_by_re(eigenvalues(&m).unwrap());
        assert!((v[0].re - (-t).exp()).abs() < 1e-12);
        assert!((v[1].re - t.exp()).abs() < 1e-12);
        for p in eigen_complex(&m).unwrap() {
            assert!(p.residual < 1e-12);
        }
    }

    #[test]
    fn real_matrix_with_complex_pair() {
        // companion of x³ − 1
        let m = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let v = eigenvalues(&m).unwrap();
        for z in &v {
            assert!((z * z * z - c(1.0, 0.0)).norm() < 1e-12);
        }
        let prod: Complex64 = v.iter().product();
        assert!((prod - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn identity_has_full_eigenspace() {
        let m = CMatrix::identity(3);
        let pairs = eigen_complex(&m).unwrap();
        assert_eq!(pairs.len(), 3);
        assert_eq!(eigenspace(&m, c(1.0, 0.0), 1e-8).len(), 3);
    }

    #[test]
    fn jordan_block_has_one_eigenvector() {
        let m = CMatrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]).unwrap();
        assert_eq!(eigenspace(&m, c(1.0, 0.0), 1e-8).len(), 1);
    }

    #[test]
    fn random_backward_error() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=8 {
            let m = CMatrix::from_fn(n, n, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            for p in eigen_complex(&m).unwrap() {
                assert!(
                    p.residual <= 1e-10 * m.frobenius_norm(),
                    "n={n} residual {}",
                    p.residual
                );
            }
        }
    }
}
