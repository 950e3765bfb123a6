//! Matrix groups preserving `I_{p,q}`: specifications, membership tests,
//! explicit inverses, named elements and seeded sampling.

mod generators;
mod random;
mod special;

use std::fmt;

use num_complex::Complex64;

pub use generators::GeneratorSet;
pub use random::{random_element, sample_element, sample_near_identity};
pub use special::{block_embed, special_element, su11_element, SpecialElement};

use crate::algebra::{linalg, Field, FieldKind, Matrix, Quaternion, Scalar};
use crate::error::{Error, Result};
use crate::geometry::signs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    SU,
    U,
    Sp,
    SO,
    O,
    /// The trivial group on `p + q` coordinates.
    Identity,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// Elements preserving `I_{p,q}` with the family's extra conditions.
    Classical { family: Family, p: usize, q: usize },
    /// Block-diagonal direct sum, summands listed top-left first. `special`
    /// imposes determinant 1 on the whole matrix.
    Block { summands: Vec<GroupSpec>, special: bool },
}

impl GroupSpec {
    pub fn classical(family: Family, p: usize, q: usize) -> Self {
        GroupSpec::Classical { family, p, q }
    }

    pub fn su(p: usize, q: usize) -> Self {
        Self::classical(Family::SU, p, q)
    }

    pub fn u(p: usize, q: usize) -> Self {
        Self::classical(Family::U, p, q)
    }

    pub fn sp(p: usize, q: usize) -> Self {
        Self::classical(Family::Sp, p, q)
    }

    pub fn so(p: usize, q: usize) -> Self {
        Self::classical(Family::SO, p, q)
    }

    pub fn o(p: usize, q: usize) -> Self {
        Self::classical(Family::O, p, q)
    }

    pub fn identity(k: usize) -> Self {
        Self::classical(Family::Identity, k, 0)
    }

    pub fn su11() -> Self {
        Self::su(1, 1)
    }

    pub fn su2() -> Self {
        Self::su(2, 0)
    }

    pub fn sp1() -> Self {
        Self::sp(1, 0)
    }

    pub fn block(summands: Vec<GroupSpec>, special: bool) -> Self {
        GroupSpec::Block { summands, special }
    }

    /// Ambient matrix size.
    pub fn size(&self) -> usize {
        match self {
            GroupSpec::Classical { p, q, .. } => p + q,
            GroupSpec::Block { summands, .. } => summands.iter().map(GroupSpec::size).sum(),
        }
    }

    /// Diagonal of the preserved form.
    pub fn signs(&self) -> Vec<f64> {
        match self {
            GroupSpec::Classical { p, q, .. } => signs(*p, *q),
            GroupSpec::Block { summands, .. } => summands.iter().flat_map(GroupSpec::signs).collect(),
        }
    }

    /// Scalars the elements live over.
    pub fn field(&self) -> FieldKind {
        match self {
            GroupSpec::Classical { family: Family::Sp, .. } => FieldKind::Quaternion,
            GroupSpec::Classical { .. } => FieldKind::Complex,
            GroupSpec::Block { summands, .. } => {
                if summands.iter().any(|s| s.field() == FieldKind::Quaternion) {
                    FieldKind::Quaternion
                } else {
                    FieldKind::Complex
                }
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Classical {
                family: Family::Identity,
                p,
                ..
            } => write!(f, "I{p}"),
            GroupSpec::Classical { family, p, q } => {
                let name = match family {
                    Family::SU => "SU",
                    Family::U => "U",
                    Family::Sp => "Sp",
                    Family::SO => "SO",
                    Family::O => "O",
                    Family::Identity => unreachable!(),
                };
                if *q == 0 {
                    write!(f, "{name}({p})")
                } else {
                    write!(f, "{name}({p},{q})")
                }
            }
            GroupSpec::Block { summands, special } => {
                let parts: Vec<String> = summands.iter().map(ToString::to_string).collect();
                if *special {
                    write!(f, "S({})", parts.join("+"))
                } else {
                    write!(f, "{}", parts.join("+"))
                }
            }
        }
    }
}

/// Per-condition defects; `residual` is their maximum.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub member: bool,
    pub residual: f64,
    /// `‖g* F g − F‖ / max(1, ‖g‖)²`.
    pub form: f64,
    /// `|det g − 1|` where a determinant condition applies.
    pub det: f64,
    /// Size of imaginary parts for real families.
    pub realness: f64,
    /// Size of `j`/`k` parts for complex families over `ℍ`.
    pub field: f64,
    /// Entries outside the block-diagonal pattern, relative to `max(1, ‖g‖)`.
    pub block: f64,
}

fn form_defect<T: Field>(g: &Matrix<T>, eps: &[f64]) -> f64 {
    let n = g.rows();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            // (g* F g)_ij = Σ_k ε_k conj(g_ki) g_kj
            let mut s = T::zero();
            for (k, &e) in eps.iter().enumerate() {
                s = s + (g[(k, i)].conj() * g[(k, j)]).scale(e);
            }
            if i == j {
                s = s - T::from_real(eps[i]);
            }
            total += s.norm_sqr();
        }
    }
    let scale = g.frobenius_norm().max(1.0);
    total.sqrt() / (scale * scale)
}

fn complex_part_matrix<T: Field>(g: &Matrix<T>) -> Matrix<Complex64> {
    g.map(|x| x.complex_part())
}

fn det_defect<T: Field>(g: &Matrix<T>) -> f64 {
    match linalg::complex_det(&complex_part_matrix(g)) {
        Ok(d) => (d - Complex64::new(1.0, 0.0)).norm(),
        Err(_) => f64::INFINITY,
    }
}

fn collect<T: Field>(g: &Matrix<T>, spec: &GroupSpec, r: &mut MembershipReport) {
    let eps = spec.signs();
    r.form = r.form.max(form_defect(g, &eps));
    match spec {
        GroupSpec::Classical { family, .. } => match family {
            Family::Identity => {
                let d = (g - &Matrix::identity(g.rows())).frobenius_norm();
                r.form = r.form.max(d);
            }
            Family::Sp => {}
            Family::U | Family::SU => {
                r.field = r.field.max(g.data().iter().map(|x| x.jk_norm()).fold(0.0, f64::max));
                if *family == Family::SU {
                    r.det = r.det.max(det_defect(g));
                }
            }
            Family::O | Family::SO => {
                r.realness = r.realness.max(g.max_im());
                if *family == Family::SO {
                    r.det = r.det.max(det_defect(g));
                }
            }
        },
        GroupSpec::Block { summands, special } => {
            let scale = g.frobenius_norm().max(1.0);
            let mut off = 0.0f64;
            let mut start = 0;
            let mut owner = vec![0usize; g.rows()];
            for (k, s) in summands.iter().enumerate() {
                for o in owner.iter_mut().skip(start).take(s.size()) {
                    *o = k;
                }
                start += s.size();
            }
            for i in 0..g.rows() {
                for j in 0..g.cols() {
                    if owner[i] != owner[j] {
                        off = off.max(g[(i, j)].norm());
                    }
                }
            }
            r.block = r.block.max(off / scale);
            let mut start = 0;
            for s in summands {
                let k = s.size();
                collect(&g.block(start, start, k, k), s, r);
                start += k;
            }
            if *special {
                r.field = r.field.max(g.data().iter().map(|x| x.jk_norm()).fold(0.0, f64::max));
                r.det = r.det.max(det_defect(g));
            }
        }
    }
}

/// Tests `g ∈ spec` up to `tol`.
pub fn group_membership<T: Field>(g: &Matrix<T>, spec: &GroupSpec, tol: f64) -> Result<MembershipReport> {
    if !g.is_square() {
        return Err(Error::NotSquare(g.rows(), g.cols()));
    }
    if g.rows() != spec.size() {
        return Err(Error::mismatch("membership", g.shape(), (spec.size(), spec.size())));
    }
    let mut r = MembershipReport {
        member: false,
        residual: 0.0,
        form: 0.0,
        det: 0.0,
        realness: 0.0,
        field: 0.0,
        block: 0.0,
    };
    collect(g, spec, &mut r);
    r.residual = [r.form, r.det, r.realness, r.field, r.block]
        .into_iter()
        .fold(0.0, f64::max);
    if !r.residual.is_finite() {
        r.residual = f64::INFINITY;
    }
    r.member = r.residual <= tol;
    Ok(r)
}

/// Fails with [`Error::Membership`] unless `g ∈ spec` to `tol`.
pub fn require_membership<T: Field>(g: &Matrix<T>, spec: &GroupSpec, tol: f64) -> Result<MembershipReport> {
    let r = group_membership(g, spec, tol)?;
    if !r.member {
        return Err(Error::Membership {
            group: spec.to_string(),
            residual: r.residual,
            tol,
        });
    }
    Ok(r)
}

/// `F g* F`, the inverse of any `g` preserving the diagonal form `F`.
pub fn form_inverse<T: Scalar>(g: &Matrix<T>, eps: &[f64]) -> Matrix<T> {
    Matrix::from_fn(g.cols(), g.rows(), |i, j| g[(j, i)].conj().scale(eps[i] * eps[j]))
}

/// Inverse in `Sp(n,1)`: entries `ā_{j,i}`, with the last row and column
/// negated away from the corner.
pub fn sp_inverse(g: &Matrix<Quaternion>, tol: f64) -> Result<Matrix<Quaternion>> {
    let n = g.rows().saturating_sub(1);
    require_membership(g, &GroupSpec::sp(n, 1), tol)?;
    Ok(form_inverse(g, &signs(n, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CMatrix, HMatrix};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_is_in_everything() {
        for spec in [
            GroupSpec::su(2, 1),
            GroupSpec::sp(2, 1),
            GroupSpec::so(2, 1),
            GroupSpec::block(vec![GroupSpec::u(1, 0), GroupSpec::o(2, 1)], true),
        ] {
            let r = group_membership(&HMatrix::identity(spec.size()), &spec, 1e-12).unwrap();
            assert!(r.member && r.residual == 0.0, "{spec}");
        }
    }

    #[test]
    fn diag_i_j_in_sp11() {
        let g = HMatrix::from_diag(&[Quaternion::I, Quaternion::J]);
        assert!(group_membership(&g, &GroupSpec::sp(1, 1), 1e-12).unwrap().member);
        assert_eq!(
            sp_inverse(&g, 1e-12).unwrap(),
            HMatrix::from_diag(&[-Quaternion::I, -Quaternion::J])
        );
    }

    #[test]
    fn d_n_needs_determinant_one() {
        let d = CMatrix::from_diag(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);
        let su = group_membership(&d, &GroupSpec::su(2, 1), 1e-12).unwrap();
        assert!(!su.member);
        assert!((su.det - 2f64.sqrt()).abs() < 1e-12);
        assert!(group_membership(&d, &GroupSpec::u(2, 1), 1e-12).unwrap().member);
    }

    #[test]
    fn size_mismatch() {
        assert!(group_membership(&CMatrix::identity(2), &GroupSpec::su(2, 1), 1e-9).is_err());
    }

    #[test]
    fn sp_inverse_rejects_non_members() {
        let g = HMatrix::from_diag(&[Quaternion::real(2.0), Quaternion::ONE]);
        assert!(matches!(sp_inverse(&g, 1e-9), Err(Error::Membership { .. })));
    }

    #[test]
    fn display_names() {
        assert_eq!(GroupSpec::su(3, 1).to_string(), "SU(3,1)");
        assert_eq!(GroupSpec::sp1().to_string(), "Sp(1)");
        let b = GroupSpec::block(vec![GroupSpec::u(1, 0), GroupSpec::o(2, 1)], true);
        assert_eq!(b.to_string(), "S(U(1)+O(2,1))");
        assert_eq!(b.size(), 4);
        assert_eq!(b.signs(), vec![1.0, 1.0, 1.0, -1.0]);
    }

    #[test]
    fn block_pattern_is_checked() {
        let spec = GroupSpec::block(vec![GroupSpec::identity(1), GroupSpec::su11()], false);
        let mut g = CMatrix::identity(3);
        assert!(group_membership(&g, &spec, 1e-12).unwrap().member);
        g[(0, 1)] = c(0.1, 0.0);
        assert!(group_membership(&g, &spec, 1e-6).unwrap().block > 0.0);
    }
}
