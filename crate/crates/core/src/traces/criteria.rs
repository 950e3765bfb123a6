//! Obstructions to real traces inside `Sp(n,1)`.

use num_complex::Complex64;

use crate::algebra::{linalg, HMatrix, Quaternion, RMatrix};
use crate::error::{Error, Result};
use crate::geometry::signs;
use crate::groups::{form_inverse, group_membership, require_membership, GroupSpec};

fn sp_of(g: &HMatrix, tol: f64) -> Result<usize> {
    let n = g.rows().saturating_sub(1);
    if n == 0 || !g.is_square() {
        return Err(Error::NotSquare(g.rows(), g.cols()));
    }
    require_membership(g, &GroupSpec::sp(n, 1), tol)?;
    Ok(n)
}

// tr(g D g⁻¹) for a diagonal D, with g⁻¹ = F g* F.
fn conjugated_diagonal_trace(g: &HMatrix, diag: &[Quaternion]) -> Quaternion {
    let n = g.rows() - 1;
    let ginv = form_inverse(g, &signs(n, 1));
    let mut t = Quaternion::ZERO;
    for i in 0..=n {
        for (m, &d) in diag.iter().enumerate() {
            t += g[(i, m)] * d * ginv[(m, i)];
        }
    }
    t
}

/// `Im tr(g d_n g⁻¹)` for `g ∈ Sp(n,1)`; never zero.
pub fn criterion_i(g: &HMatrix, tol: f64) -> Result<Quaternion> {
    let n = sp_of(g, tol)?;
    let mut d = vec![Quaternion::ONE; n + 1];
    d[n] = Quaternion::I;
    Ok(conjugated_diagonal_trace(g, &d).imag())
}

/// `λ_m = Σ_{r≤n} a_{r,m} i ā_{r,m} − a_{n+1,m} i ā_{n+1,m}` (1-based `m`).
pub fn lambda_column(g: &HMatrix, m: usize) -> Result<Quaternion> {
    let size = g.rows();
    if m == 0 || m > size {
        return Err(Error::IndexOutOfRange { index: m, max: size });
    }
    let eps = signs(size - 1, 1);
    Ok((0..size).fold(Quaternion::ZERO, |acc, r| {
        let a = g[(r, m - 1)];
        acc + (a * Quaternion::I * a.conj()).scale(eps[r])
    }))
}

/// `(λ_{n−1}+λ_{n+1}, λ_n+λ_{n+1}, λ_{n−1}+λ_n)` for `g ∈ Sp(n,1)`, `n ≥ 2`.
pub fn criterion_ii(g: &HMatrix, tol: f64) -> Result<[Quaternion; 3]> {
    let n = sp_of(g, tol)?;
    if n < 2 {
        return Err(Error::Constraint("criterion II needs n >= 2".into()));
    }
    let l = |m| lambda_column(g, m);
    let (a, b, c) = (l(n - 1)?, l(n)?, l(n + 1)?);
    Ok([a + c, b + c, a + b])
}

/// `Im tr(g (I_{n−2} ⊕ c_k) g⁻¹)` for `k = 1, 2, 3`, computed directly.
pub fn c_element_trace_imaginary_parts(g: &HMatrix, tol: f64) -> Result<[Quaternion; 3]> {
    let n = sp_of(g, tol)?;
    if n < 2 {
        return Err(Error::Constraint("c-elements need n >= 2".into()));
    }
    let (one, i) = (Quaternion::ONE, Quaternion::I);
    let tails = [[one, i, -i], [i, one, -i], [i, -i, one]];
    Ok(tails.map(|tail| {
        let mut d = vec![one; n + 1];
        d[n - 2..].copy_from_slice(&tail);
        conjugated_diagonal_trace(g, &d).imag()
    }))
}

/// Residuals of `x₁ i x̄₁ + ⋯ + x_n i x̄_n − x_{n+1} i x̄_{n+1} = 0`,
/// `|x₁|² + ⋯ + |x_n|² − |x_{n+1}|² = −1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EqnsysResidual {
    /// Norm of the left side of the first equation.
    pub first: f64,
    /// `Σ|x_m|² − |x_{n+1}|² + 1`.
    pub second: f64,
    /// `2 Σ (t_{m,3}² + t_{m,4}²)` with `t_m = x̄_{n+1} x_m / |x_{n+1}|²`; a
    /// common solution would make this negative.
    pub certificate: Option<f64>,
}

pub fn eqnsys_residual(x: &[Quaternion]) -> Result<EqnsysResidual> {
    if x.len() < 2 {
        return Err(Error::Constraint("need at least two coordinates".into()));
    }
    let n = x.len() - 1;
    let eps = signs(n, 1);
    let lhs = x.iter().zip(&eps).fold(Quaternion::ZERO, |acc, (&q, &e)| {
        acc + (q * Quaternion::I * q.conj()).scale(e)
    });
    let second = x.iter().zip(&eps).map(|(q, e)| e * q.norm_sqr()).sum::<f64>() + 1.0;
    let last = x[n];
    let certificate = (last.norm_sqr() > 0.0).then(|| {
        x[..n]
            .iter()
            .map(|&xm| {
                let t = (last.conj() * xm).scale(1.0 / last.norm_sqr());
                t.c * t.c + t.d * t.d
            })
            .sum::<f64>()
            * 2.0
    });
    Ok(EqnsysResidual {
        first: lhs.norm(),
        second,
        certificate,
    })
}

/// Certificate variant that errors on a zero last coordinate.
pub fn eqnsys_certificate(x: &[Quaternion]) -> Result<f64> {
    eqnsys_residual(x)?.certificate.ok_or(Error::ZeroVector)
}

/// The four-vector system for `n = 2`: with `v_i = (x_i, y_i, z_i)` read from
/// the coordinates of `x, y, z`, it asks `⟨v_i, v_j⟩_{2,1} = δ_ij / 4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GramResidual {
    /// `max_ij |G_ij − δ_ij/4|`.
    pub residual: f64,
    /// Smallest singular value of `G`; it vanishes because four vectors in a
    /// 3-dimensional space are dependent.
    pub sigma_min: f64,
    /// `1/4 − σ_min(G)`: a lower bound for `‖G − I/4‖₂`, positive on every
    /// input.
    pub certificate: f64,
}

pub fn gram_residual(x: Quaternion, y: Quaternion, z: Quaternion) -> GramResidual {
    let (xa, ya, za) = (x.to_array(), y.to_array(), z.to_array());
    let g = RMatrix::from_fn(4, 4, |i, j| xa[i] * xa[j] + ya[i] * ya[j] - za[i] * za[j]);
    let mut residual = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let target = if i == j { 0.25 } else { 0.0 };
            residual = residual.max((g[(i, j)] - target).abs());
        }
    }
    let gc = g.map(|v| Complex64::new(v, 0.0));
    let sigma_min = linalg::singular_values(&gc).last().copied().unwrap_or(0.0);
    GramResidual {
        residual,
        sigma_min,
        certificate: 0.25 - sigma_min,
    }
}

/// Result of normalizing `g ∈ Sp(1,1)` by a unit quaternion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sp1Su11 {
    pub member: bool,
    /// `h` with `h·g` complex (and in `SU(1,1)` when `member`).
    pub normalizer: Quaternion,
    /// `max(j/k part of h·g, U(1,1) residual)` before the phase correction.
    pub residual: f64,
}

/// Tests `g ∈ Sp(1)·SU(1,1)` by normalizing the `(1,1)` entry to be real.
pub fn sp1_su11_membership(g: &HMatrix, tol: f64) -> Result<Sp1Su11> {
    if g.shape() != (2, 2) {
        return Err(Error::mismatch("sp1_su11_membership", g.shape(), (2, 2)));
    }
    require_membership(g, &GroupSpec::sp(1, 1), tol)?;
    let a = g[(0, 0)];
    let h = a.conj().scale(1.0 / a.norm());
    let hg = g.scale_left(h);
    let jk = hg.data().iter().map(|q| q.jk_norm()).fold(0.0, f64::max);
    let u = group_membership(&hg, &GroupSpec::u(1, 1), tol)?;
    let residual = jk.max(u.residual);
    if residual > tol * g.frobenius_norm().max(1.0) {
        return Ok(Sp1Su11 {
            member: false,
            normalizer: h,
            residual,
        });
    }
    let c = hg.map(|q| Complex64::new(q.a, q.b));
    let det = linalg::complex_det(&c)?;
    // e^{−iφ/2} h with det(h g) = e^{iφ}
    let phase = Complex64::from_polar(1.0, -det.arg() / 2.0);
    Ok(Sp1Su11 {
        member: true,
        normalizer: Quaternion::from(phase) * h,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{random_element, su11_element};

    fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion {
        Quaternion::new(a, b, c, d)
    }

    #[test]
    fn identity_witnesses() {
        for n in 1..4 {
            let g = HMatrix::identity(n + 1);
            assert_eq!(criterion_i(&g, 1e-12).unwrap(), Quaternion::I);
            assert_eq!(lambda_column(&g, 1).unwrap(), Quaternion::I);
            assert_eq!(lambda_column(&g, n + 1).unwrap(), -Quaternion::I);
        }
        let g = HMatrix::identity(3);
        assert_eq!(
            criterion_ii(&g, 1e-12).unwrap(),
            [Quaternion::ZERO, Quaternion::ZERO, Quaternion::I.scale(2.0)]
        );
        assert_eq!(lambda_column(&g, 4), Err(Error::IndexOutOfRange { index: 4, max: 3 }));
    }

    #[test]
    fn criterion_i_is_minus_last_lambda() {
        for seed in 0..20 {
            let g: HMatrix = random_element(&GroupSpec::sp(2, 1), seed).unwrap();
            let w = criterion_i(&g, 1e-9).unwrap();
            assert!((w + lambda_column(&g, 3).unwrap()).norm() < 1e-9 * g.frobenius_norm().powi(2));
            assert!(w.norm() >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn c_element_traces_against_lambdas() {
        // c1 → λ_n + λ_{n+1}, c2 → λ_{n−1} + λ_{n+1}, c3 → λ_{n−1} − λ_n
        for seed in 0..10 {
            let g: HMatrix = random_element(&GroupSpec::sp(3, 1), seed).unwrap();
            let [c1, c2, c3] = c_element_trace_imaginary_parts(&g, 1e-9).unwrap();
            let l = |m| lambda_column(&g, m).unwrap();
            let scale = g.frobenius_norm().powi(2);
            assert!((c1 - (l(3) + l(4))).norm() < 1e-9 * scale);
            assert!((c2 - (l(2) + l(4))).norm() < 1e-9 * scale);
            assert!((c3 - (l(2) - l(3))).norm() < 1e-9 * scale);
        }
        // the identity has real traces for every c_k, so the third condition is
        // λ_{n−1} − λ_n, not λ_{n−1} + λ_n
        let parts = c_element_trace_imaginary_parts(&HMatrix::identity(3), 1e-12).unwrap();
        assert!(parts.iter().all(|p| p.norm() == 0.0));
        assert_eq!(criterion_ii(&HMatrix::identity(3), 1e-12).unwrap()[2].norm(), 2.0);
    }

    #[test]
    fn real_conjugator_gives_i() {
        let h: HMatrix = random_element::<Complex64>(&GroupSpec::so(2, 1), 4)
            .unwrap()
            .map(Quaternion::from);
        let g = HMatrix::identity(1).direct_sum(&h);
        let w = criterion_i(&g, 1e-9).unwrap();
        assert!((w - Quaternion::I).norm() < 1e-12);
    }

    #[test]
    fn eqnsys_examples() {
        let r = eqnsys_residual(&[Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE]).unwrap();
        assert_eq!((r.first, r.second), (1.0, 0.0));
        let r = eqnsys_residual(&[Quaternion::ONE, Quaternion::ZERO, Quaternion::real(2f64.sqrt())]).unwrap();
        assert!(r.second.abs() < 1e-15);
        assert!((r.first - 1.0).abs() < 1e-15);
        assert_eq!(
            eqnsys_residual(&[Quaternion::J, Quaternion::ONE]).unwrap().certificate,
            Some(2.0)
        );
        assert_eq!(
            eqnsys_certificate(&[Quaternion::ONE, Quaternion::ZERO, Quaternion::ZERO]),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn gram_certificate() {
        let r = gram_residual(q(0.5, 0.0, 0.0, 0.0), q(0.0, 0.5, 0.0, 0.0), q(0.0, 0.0, 0.0, 0.0));
        assert!(r.sigma_min < 1e-15);
        assert!(r.residual >= 0.25 - 1e-15);
        assert!(r.certificate > 0.0);
    }

    #[test]
    fn sp1_su11_examples() {
        let t = 0.7f64;
        let u = su11_element(
            Complex64::new(t.cosh(), 0.3),
            Complex64::new(0.2, (t.cosh().powi(2) + 0.09 - 1.0 - 0.04).sqrt()),
            1e-9,
        )
        .unwrap()
        .map(Quaternion::from);
        let r = sp1_su11_membership(&u, 1e-9).unwrap();
        assert!(r.member);
        let ju = u.scale_left(Quaternion::J);
        let r = sp1_su11_membership(&ju, 1e-9).unwrap();
        assert!(r.member);
        let hg = ju.scale_left(r.normalizer).map(|x| Complex64::new(x.a, x.b));
        assert!(group_membership(&hg, &GroupSpec::su11(), 1e-9).unwrap().member);

        let s = 0.5f64.sqrt();
        let g = HMatrix::from_diag(&[q(s, s, 0.0, 0.0), q(0.0, 0.0, s, s)]);
        let r = sp1_su11_membership(&g, 1e-9).unwrap();
        assert!(!r.member);
        let hg = g.scale_left(r.normalizer);
        assert!((hg[(1, 1)] - Quaternion::J).norm() < 1e-15);
    }
}
