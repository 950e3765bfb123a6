use num_complex::Complex64;

use super::{require_membership, GroupSpec};
use crate::algebra::{CMatrix, Field, Matrix};
use crate::error::{Error, Result};

/// Named matrices used by the realness criteria and the torus argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpecialElement {
    /// `d_n = diag(1, …, 1, i)` of size `n + 1`.
    D(usize),
    C1,
    C2,
    C3,
    /// `R(θ) = e^{iθ} ⊕ e^{−iθ}`.
    R(f64),
    /// `K = [[i, i], [1, −1]]`.
    K,
}

impl SpecialElement {
    /// Parses `d_n`/`d`, `c1`, `c2`, `c3`, `R`, `K`; `n` and `theta` fill in
    /// the parameters of `d_n` and `R(θ)`.
    pub fn parse(name: &str, n: usize, theta: f64) -> Result<Self> {
        match name {
            "d_n" | "d" | "dn" => Ok(SpecialElement::D(n)),
            "c1" => Ok(SpecialElement::C1),
            "c2" => Ok(SpecialElement::C2),
            "c3" => Ok(SpecialElement::C3),
            "R" | "R(theta)" => Ok(SpecialElement::R(theta)),
            "K" => Ok(SpecialElement::K),
            other => Err(Error::InvalidName(other.to_string())),
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn special_element(e: SpecialElement) -> CMatrix {
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match e {
        SpecialElement::D(n) => {
            let mut d = vec![one; n + 1];
            d[n] = i;
            CMatrix::from_diag(&d)
        }
        SpecialElement::C1 => CMatrix::from_diag(&[one, i, -i]),
        SpecialElement::C2 => CMatrix::from_diag(&[i, one, -i]),
        SpecialElement::C3 => CMatrix::from_diag(&[i, -i, one]),
        SpecialElement::R(t) => CMatrix::from_diag(&[c(t.cos(), t.sin()), c(t.cos(), -t.sin())]),
        SpecialElement::K => CMatrix::from_rows(&[vec![i, i], vec![one, -one]]).expect("2x2"),
    }
}

/// `[[z, w], [w̄, z̄]]`, requiring `|z|² − |w|² = 1` to `tol`.
pub fn su11_element(z: Complex64, w: Complex64, tol: f64) -> Result<CMatrix> {
    let defect = z.norm_sqr() - w.norm_sqr() - 1.0;
    if defect.abs() > tol * (1.0 + z.norm_sqr()) {
        return Err(Error::Constraint(format!(
            "|z|^2 - |w|^2 = {} (expected 1)",
            defect + 1.0
        )));
    }
    Ok(CMatrix::from_rows(&[vec![z, w], vec![w.conj(), z.conj()]]).expect("2x2"))
}

/// `I_{N−k} ⊕ h` with `h` checked against `summand`.
pub fn block_embed<T: Field>(h: &Matrix<T>, summand: &GroupSpec, ambient: usize, tol: f64) -> Result<Matrix<T>> {
    require_membership(h, summand, tol)?;
    if h.rows() > ambient {
        return Err(Error::mismatch("block_embed", h.shape(), (ambient, ambient)));
    }
    Ok(Matrix::identity(ambient - h.rows()).direct_sum(h))
}
