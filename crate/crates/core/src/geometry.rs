//! Hermitian forms of signature `(n, 1)` over `ℂ` or `ℍ`, the projective ball
//! model, and the Bergman distance.

use crate::algebra::{Field, FieldKind, RMatrix, Scalar};
use crate::error::{Error, Result};

/// `F^{n,1}` with the form `⟨z, w⟩ = w* I_{n,1} z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HermitianSpace {
    n: usize,
    field: FieldKind,
}

impl HermitianSpace {
    pub fn new(n: usize, field: FieldKind) -> Result<Self> {
        if n == 0 {
            return Err(Error::Constraint("hyperbolic dimension n must be at least 1".into()));
        }
        Ok(Self { n, field })
    }

    pub fn complex(n: usize) -> Result<Self> {
        Self::new(n, FieldKind::Complex)
    }

    pub fn quaternionic(n: usize) -> Result<Self> {
        Self::new(n, FieldKind::Quaternion)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Vector length `n + 1`.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    /// `I_{n,1}`.
    pub fn form(&self) -> RMatrix {
        RMatrix::from_diag(&signs(self.n, 1))
    }

    fn check<T: Field>(&self, len: usize) -> Result<()> {
        if T::KIND != self.field {
            return Err(Error::FieldMismatch(format!(
                "space is over {:?}, vector over {:?}",
                self.field,
                T::KIND
            )));
        }
        if len != self.dim() {
            return Err(Error::mismatch("form", (self.dim(), 1), (len, 1)));
        }
        Ok(())
    }
}

/// Diagonal of `I_{p,q}`.
pub fn signs(p: usize, q: usize) -> Vec<f64> {
    std::iter::repeat_n(1.0, p)
        .chain(std::iter::repeat_n(-1.0, q))
        .collect()
}

/// `Σ ε_i w̄_i z_i` for a diagonal sign pattern, unchecked.
pub(crate) fn signed_inner<T: Scalar>(eps: &[f64], z: &[T], w: &[T]) -> T {
    eps.iter()
        .zip(z.iter().zip(w))
        .fold(T::zero(), |acc, (&e, (&zi, &wi))| acc + (wi.conj() * zi).scale(e))
}

/// `⟨z, w⟩ = w* I_{n,1} z`. Right-linear in `z`: `⟨zλ, w⟩ = ⟨z, w⟩λ`.
pub fn form_eval<T: Field>(space: &HermitianSpace, z: &[T], w: &[T]) -> Result<T> {
    space.check::<T>(z.len())?;
    space.check::<T>(w.len())?;
    Ok(signed_inner(&signs(space.n, 1), z, w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VectorClass {
    Negative,
    Null,
    Positive,
}

/// Sign of `⟨z, z⟩`, with `|⟨z, z⟩| ≤ tol·‖z‖²` counted as null.
pub fn classify_vector<T: Field>(space: &HermitianSpace, z: &[T], tol: f64) -> Result<VectorClass> {
    let q = form_eval(space, z, z)?.re();
    let nz: f64 = z.iter().map(|x| x.norm_sqr()).sum();
    if nz == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(if q.abs() <= tol * nz {
        VectorClass::Null
    } else if q < 0.0 {
        VectorClass::Negative
    } else {
        VectorClass::Positive
    })
}

/// A point of the projectivization, stored by a nonzero representative.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint<T> {
    rep: Vec<T>,
}

impl<T: Field> ProjectivePoint<T> {
    pub fn new(rep: Vec<T>) -> Result<Self> {
        if rep.iter().all(|x| x.norm_sqr() == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { rep })
    }

    pub fn representative(&self) -> &[T] {
        &self.rep
    }

    /// Same point, representative multiplied on the right by `λ ≠ 0`.
    pub fn rescaled(&self, lambda: T) -> Result<Self> {
        Self::new(self.rep.iter().map(|&x| x * lambda).collect())
    }

    /// Representative scaled to unit Euclidean norm with its last nonzero
    /// coordinate real and positive.
    pub fn normalized(&self) -> Vec<T> {
        let idx = self.rep.iter().rposition(|x| x.norm_sqr() > 0.0).expect("nonzero");
        let u = self.rep[idx].inv().scale(self.rep[idx].norm());
        let v: Vec<T> = self.rep.iter().map(|&x| x * u).collect();
        let nv = crate::algebra::vec_norm(&v);
        v.into_iter().map(|x| x.scale(1.0 / nv)).collect()
    }

    pub fn class(&self, space: &HermitianSpace, tol: f64) -> Result<VectorClass> {
        classify_vector(space, &self.rep, tol)
    }
}

/// Bergman distance `ρ(p, q)` from
/// `cosh²(ρ/2) = ⟨p,q⟩⟨q,p⟩ (⟨p,p⟩⟨q,q⟩)⁻¹`.
///
/// The ratio is evaluated in that order and its imaginary part is checked
/// against `tol`. The returned value uses the cancellation-free identity
/// `sinh²(ρ/2) = ⟨q′,q′⟩ / |⟨q,q⟩|` with `q′` the component of `q` orthogonal
/// to `p`, which agrees with the ratio but stays accurate for nearby points.
pub fn bergman_distance<T: Field>(
    space: &HermitianSpace,
    p: &ProjectivePoint<T>,
    q: &ProjectivePoint<T>,
    tol: f64,
) -> Result<f64> {
    let (pv, qv) = (p.normalized(), q.normalized());
    let pp = form_eval(space, &pv, &pv)?.re();
    let qq = form_eval(space, &qv, &qv)?.re();
    for v in [pp, qq] {
        if v >= -tol {
            return Err(Error::NotNegative(v));
        }
    }
    let pq = form_eval(space, &pv, &qv)?;
    let qp = form_eval(space, &qv, &pv)?;
    let ratio = pq * qp * T::from_real(pp * qq).inv();
    if ratio.im_norm() > tol.max(1e-12) * ratio.norm().max(1.0) {
        return Err(Error::Numeric(format!(
            "distance ratio has imaginary part {:e}",
            ratio.im_norm()
        )));
    }
    // q' = q − p ⟨p,p⟩⁻¹ ⟨q,p⟩
    let c = qp.scale(1.0 / pp);
    let qperp: Vec<T> = qv.iter().zip(&pv).map(|(&a, &b)| a - b * c).collect();
    let s2 = (form_eval(space, &qperp, &qperp)?.re() / qq.abs()).max(0.0);
    Ok(2.0 * s2.sqrt().asinh())
}
