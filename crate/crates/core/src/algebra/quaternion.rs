//! Hamilton quaternions `a + bi + cj + dk` over `f64`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// A quaternion `a + b i + c j + d k` with `i² = j² = k² = ijk = -1`.
///
/// Multiplication is the Hamilton product and does not commute.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn real(a: f64) -> Self {
        Self::new(a, 0.0, 0.0, 0.0)
    }

    /// Builds `z + w j` from two complex numbers.
    pub fn from_complex_pair(z: Complex64, w: Complex64) -> Self {
        // w j = (w.re + w.im i) j = w.re j + w.im k
        Self::new(z.re, z.im, w.re, w.im)
    }

    /// Splits `q = z + w j` into `(z, w)`.
    pub fn complex_pair(self) -> (Complex64, Complex64) {
        (Complex64::new(self.a, self.b), Complex64::new(self.c, self.d))
    }

    pub fn conj(self) -> Self {
        Self::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sqr(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean norm of the imaginary part, `√(b²+c²+d²)`.
    pub fn im_norm(self) -> f64 {
        (self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    /// Norm of the `j`/`k` part, i.e. the distance from `ℂ = span(1, i)`.
    pub fn jk_norm(self) -> f64 {
        self.c.hypot(self.d)
    }

    pub fn imag(self) -> Self {
        Self::new(0.0, self.b, self.c, self.d)
    }

    pub fn inv(self) -> Self {
        self.conj().scale(1.0 / self.norm_sqr())
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl From<f64> for Quaternion {
    fn from(a: f64) -> Self {
        Self::real(a)
    }
}

impl From<Complex64> for Quaternion {
    fn from(z: Complex64) -> Self {
        Self::new(z.re, z.im, 0.0, 0.0)
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(v: [f64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
        )
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, q: Self) {
        *self = *self * q;
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

/// Right division, `p / q = p q⁻¹`.
impl Div for Quaternion {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, q: Self) -> Self {
        self * q.inv()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_relations() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(j * i, -k);
        assert_eq!(i * i, Quaternion::real(-1.0));
        assert_eq!(i * j * k, Quaternion::real(-1.0));
    }

    #[test]
    fn one_plus_i_times_one_minus_i() {
        let p = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        assert_eq!(p * p.conj(), Quaternion::real(2.0));
    }

    #[test]
    fn complex_factors_commute_through_conjugation() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = Quaternion::new(s, s, 0.0, 0.0);
        let z = Quaternion::new(0.3, -1.7, 0.0, 0.0);
        let got = u * z * u.conj();
        assert!((got - z).norm() < 1e-15);
    }

    #[test]
    fn complex_pair_roundtrip() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let (z, w) = q.complex_pair();
        assert_eq!(Quaternion::from_complex_pair(z, w), q);
        // w j really is c j + d k
        let wj = Quaternion::from(w) * Quaternion::J;
        assert_eq!(Quaternion::from(z) + wj, q);
    }
}
