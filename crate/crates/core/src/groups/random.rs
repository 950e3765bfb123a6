//! Seeded sampling through the Lie algebra: `X = F·A` with `A`
//! anti-Hermitian satisfies `X* F + F X = 0`, so `exp(X)` preserves `F`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{Family, GroupSpec};
use crate::algebra::{expm, linalg, Field, FieldKind, Matrix, Quaternion, Scalar};
use crate::error::{Error, Result};

fn normal<R: Rng>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn from_quaternion<T: Field>(q: Quaternion) -> T {
    T::from_cvec(Field::to_cvec(q))
}

fn anti_hermitian<T: Field, R: Rng>(k: usize, kind: Family, rng: &mut R) -> Matrix<T> {
    let mut a = Matrix::<T>::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let x: T = match kind {
                Family::Sp => {
                    let q = if i == j {
                        Quaternion::new(0.0, normal(rng), normal(rng), normal(rng))
                    } else {
                        Quaternion::new(normal(rng), normal(rng), normal(rng), normal(rng)).scale(0.5f64.sqrt())
                    };
                    from_quaternion(q)
                }
                Family::SO | Family::O => {
                    if i == j {
                        T::zero()
                    } else {
                        T::from_real(normal(rng))
                    }
                }
                _ => {
                    if i == j {
                        T::from_complex(Complex64::new(0.0, normal(rng)))
                    } else {
                        T::from_complex(Complex64::new(normal(rng), normal(rng)).scale(0.5f64.sqrt()))
                    }
                }
            };
            a[(i, j)] = x;
            if i != j {
                a[(j, i)] = -x.conj();
            }
        }
    }
    a
}

fn lie_element<T: Field, R: Rng>(spec: &GroupSpec, rng: &mut R) -> Result<Matrix<T>> {
    match spec {
        GroupSpec::Classical { family, .. } => {
            let k = spec.size();
            if *family == Family::Identity {
                return Ok(Matrix::zeros(k, k));
            }
            if *family == Family::Sp && T::KIND != FieldKind::Quaternion {
                return Err(Error::FieldMismatch(format!("{spec} needs quaternion entries")));
            }
            let eps = spec.signs();
            let a = anti_hermitian::<T, R>(k, *family, rng);
            let mut x = Matrix::from_fn(k, k, |i, j| a[(i, j)].scale(eps[i]));
            if *family == Family::SU {
                let t = x.trace()?.scale(1.0 / k as f64);
                for i in 0..k {
                    x[(i, i)] = x[(i, i)] - t;
                }
            }
            Ok(x)
        }
        GroupSpec::Block { summands, .. } => {
            let mut x = Matrix::zeros(0, 0);
            for s in summands {
                x = x.direct_sum(&lie_element::<T, R>(s, rng)?);
            }
            Ok(x)
        }
    }
}

fn has_unitary_summand(spec: &GroupSpec) -> bool {
    match spec {
        GroupSpec::Classical { family, .. } => *family == Family::U,
        GroupSpec::Block { summands, .. } => summands.iter().any(has_unitary_summand),
    }
}

// Component-disconnected part: O(p,q) samples pick up a reflection of the
// first positive axis half the time.
fn reflections<T: Field, R: Rng>(g: &mut Matrix<T>, spec: &GroupSpec, offset: usize, allow: bool, rng: &mut R) {
    match spec {
        GroupSpec::Classical {
            family: Family::O, p, ..
        } if allow && *p > 0 => {
            if rng.random_bool(0.5) {
                for j in 0..g.cols() {
                    g[(offset, j)] = -g[(offset, j)];
                }
            }
        }
        GroupSpec::Classical { .. } => {}
        GroupSpec::Block { summands, special } => {
            let allow = allow && (!special || has_unitary_summand(spec));
            let mut off = offset;
            for s in summands {
                reflections(g, s, off, allow, rng);
                off += s.size();
            }
        }
    }
}

// Scales the first U summand so that the whole matrix has determinant 1.
fn fix_determinant<T: Field>(g: &mut Matrix<T>, spec: &GroupSpec) -> Result<()> {
    let GroupSpec::Block {
        summands,
        special: true,
    } = spec
    else {
        return Ok(());
    };
    let mut start = 0;
    let mut target = None;
    for s in summands {
        if has_unitary_summand(s) && matches!(s, GroupSpec::Classical { .. }) {
            target = Some((start, s.size()));
            break;
        }
        start += s.size();
    }
    let Some((start, k)) = target else {
        return Ok(());
    };
    let d = linalg::complex_det(&g.map(|x| x.complex_part()))?;
    let w = d.inv().powf(1.0 / k as f64);
    let w = T::from_complex(w);
    for i in start..start + k {
        for j in start..start + k {
            g[(i, j)] = w * g[(i, j)];
        }
    }
    Ok(())
}

/// Draws `exp(X)` with standard-normal Lie-algebra coordinates.
pub fn sample_element<T: Field, R: Rng>(spec: &GroupSpec, rng: &mut R) -> Result<Matrix<T>> {
    let x = lie_element::<T, R>(spec, rng)?;
    finish(spec, expm(&x), rng)
}

/// Like [`sample_element`] with the Lie-algebra element rescaled to
/// Frobenius norm at most `bound`.
pub fn sample_near_identity<T: Field, R: Rng>(spec: &GroupSpec, rng: &mut R, bound: f64) -> Result<Matrix<T>> {
    let x = lie_element::<T, R>(spec, rng)?;
    let nx = x.frobenius_norm();
    let x = if nx > bound { x.scale_real(bound / nx) } else { x };
    finish(spec, expm(&x), rng)
}

fn finish<T: Field, R: Rng>(spec: &GroupSpec, mut g: Matrix<T>, rng: &mut R) -> Result<Matrix<T>> {
    reflections(&mut g, spec, 0, true, rng);
    fix_determinant(&mut g, spec)?;
    Ok(g)
}

/// Deterministic sample for a given seed.
pub fn random_element<T: Field>(spec: &GroupSpec, seed: u64) -> Result<Matrix<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_element(spec, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CMatrix, HMatrix};
    use crate::groups::group_membership;

    #[test]
    fn samples_are_members() {
        let specs = [
            GroupSpec::su(2, 1),
            GroupSpec::u(3, 1),
            GroupSpec::so(2, 1),
            GroupSpec::o(3, 1),
            GroupSpec::su11(),
            GroupSpec::su2(),
            GroupSpec::block(vec![GroupSpec::u(1, 0), GroupSpec::o(2, 1)], true),
            GroupSpec::block(vec![GroupSpec::su2(), GroupSpec::su11()], false),
        ];
        for spec in &specs {
            for seed in 0..20 {
                let g: CMatrix = random_element(spec, seed).unwrap();
                let r = group_membership(&g, spec, 1e-10).unwrap();
                assert!(r.member, "{spec} seed {seed}: {r:?}");
            }
        }
        for spec in [
            GroupSpec::sp(2, 1),
            GroupSpec::sp1(),
            GroupSpec::block(vec![GroupSpec::sp1(), GroupSpec::su11()], false),
        ] {
            for seed in 0..20 {
                let g: HMatrix = random_element(&spec, seed).unwrap();
                assert!(group_membership(&g, &spec, 1e-10).unwrap().member, "{spec} seed {seed}");
            }
        }
    }

    #[test]
    fn so_samples_are_real() {
        let g: CMatrix = random_element(&GroupSpec::so(2, 1), 11).unwrap();
        assert_eq!(g.max_im(), 0.0);
    }

    #[test]
    fn deterministic() {
        let a: HMatrix = random_element(&GroupSpec::sp(2, 1), 42).unwrap();
        let b: HMatrix = random_element(&GroupSpec::sp(2, 1), 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sp_needs_quaternions() {
        assert!(random_element::<Complex64>(&GroupSpec::sp(1, 1), 0).is_err());
    }

    #[test]
    fn bounded_samples_stay_close() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g: CMatrix = sample_near_identity(&GroupSpec::su(3, 1), &mut rng, 1.0).unwrap();
        assert!((&g - &CMatrix::identity(4)).frobenius_norm() < 1.8);
    }
}
