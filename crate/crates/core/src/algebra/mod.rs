//! Scalars (`ℂ`, `ℍ`), dense matrices over them, the real and complex
//! embeddings, and the numerical kernels built on top.

mod eigen;
pub mod embed;
mod expm;
pub mod linalg;
mod matrix;
mod quaternion;
mod scalar;

pub use eigen::{eigen_complex, eigenspace, eigenvalues, Eigenpair};
pub use embed::{embed_c2r, embed_mat_c2r, embed_mat_q2c, embed_mat_q2r, embed_q2c, embed_q2r};
pub use expm::expm;
pub use matrix::{vec_norm, CMatrix, HMatrix, Matrix, RMatrix};
pub use quaternion::Quaternion;
pub use scalar::{Field, FieldKind, Scalar};

/// `p · q` (Hamilton product).
pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}
