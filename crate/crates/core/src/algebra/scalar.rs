use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::Quaternion;

/// Division-algebra scalar: `ℝ`, `ℂ` or `ℍ`.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    fn conj(self) -> Self;
    fn norm_sqr(self) -> f64;
    fn re(self) -> f64;
    /// Norm of the imaginary part (`|Im z|` or `√(b²+c²+d²)`).
    fn im_norm(self) -> f64;
    fn inv(self) -> Self;
    fn scale(self, s: f64) -> Self;

    fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn conj(self) -> Self {
        self
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn re(self) -> f64 {
        self
    }
    fn im_norm(self) -> f64 {
        0.0
    }
    fn inv(self) -> Self {
        1.0 / self
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn im_norm(self) -> f64 {
        self.im.abs()
    }
    fn inv(self) -> Self {
        Complex64::inv(&self)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

impl Scalar for Quaternion {
    fn zero() -> Self {
        Quaternion::ZERO
    }
    fn one() -> Self {
        Quaternion::ONE
    }
    fn from_real(x: f64) -> Self {
        Quaternion::real(x)
    }
    fn conj(self) -> Self {
        Quaternion::conj(self)
    }
    fn norm_sqr(self) -> f64 {
        Quaternion::norm_sqr(self)
    }
    fn re(self) -> f64 {
        self.a
    }
    fn im_norm(self) -> f64 {
        Quaternion::im_norm(self)
    }
    fn inv(self) -> Self {
        Quaternion::inv(self)
    }
    fn scale(self, s: f64) -> Self {
        Quaternion::scale(self, s)
    }
}

/// Which skew field a hyperbolic space is built over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Complex,
    Quaternion,
}

/// Scalars over which the hyperbolic geometry is modelled.
///
/// Every such field is a right `ℂ`-vector space; `to_complex_pair` and
/// `from_complex_pair` fix the identification `ℍ ≅ ℂ²` used by the complex
/// embedding (a single coordinate for `ℂ`).
pub trait Field: Scalar {
    const KIND: FieldKind;
    /// Complex dimension of one scalar, 1 or 2.
    const CDIM: usize;

    fn from_complex(z: Complex64) -> Self;
    /// Distance from the complex subfield `span(1, i)`.
    fn jk_norm(self) -> f64;
    /// Component in `span(1, i)`.
    fn complex_part(self) -> Complex64;
    /// Coordinates of the scalar viewed as a column of the complex embedding.
    fn to_cvec(self) -> [Complex64; 2];
    fn from_cvec(v: [Complex64; 2]) -> Self;
}

impl Field for Complex64 {
    const KIND: FieldKind = FieldKind::Complex;
    const CDIM: usize = 1;

    fn from_complex(z: Complex64) -> Self {
        z
    }
    fn jk_norm(self) -> f64 {
        0.0
    }
    fn complex_part(self) -> Complex64 {
        self
    }
    fn to_cvec(self) -> [Complex64; 2] {
        [self, Complex64::new(0.0, 0.0)]
    }
    fn from_cvec(v: [Complex64; 2]) -> Self {
        v[0]
    }
}

impl Field for Quaternion {
    const KIND: FieldKind = FieldKind::Quaternion;
    const CDIM: usize = 2;

    fn from_complex(z: Complex64) -> Self {
        Quaternion::from(z)
    }
    fn jk_norm(self) -> f64 {
        Quaternion::jk_norm(self)
    }
    fn complex_part(self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }
    /// `z + w j ↦ (z, −w̄)`, the first column of `embed_q2c`.
    fn to_cvec(self) -> [Complex64; 2] {
        let (z, w) = self.complex_pair();
        [z, -w.conj()]
    }
    fn from_cvec(v: [Complex64; 2]) -> Self {
        Quaternion::from_complex_pair(v[0], -v[1].conj())
    }
}
