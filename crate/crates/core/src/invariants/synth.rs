//! Seeded test instances: block groups with real traces, hidden by a random
//! ambient conjugator.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{CMatrix, Field, FieldKind, Matrix, Quaternion};
use crate::error::{Error, Result};
use crate::groups::{form_inverse, sample_element, sample_near_identity, Family, GeneratorSet, GroupSpec};

/// Membership tolerance applied to synthesized generators.
pub const SYNTHESIS_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TargetKind {
    RealForm(usize),
    ComplexLine,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SynthesisRecipe {
    /// `SU` or `Sp`.
    pub family: Family,
    pub n: usize,
    pub target: TargetKind,
    pub block_seed: u64,
    pub hide_seed: u64,
    /// 2 or 3.
    pub generators: usize,
}

impl SynthesisRecipe {
    pub fn new(family: Family, n: usize, target: TargetKind, seed: u64) -> Self {
        SynthesisRecipe {
            family,
            n,
            target,
            block_seed: seed,
            hide_seed: seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1),
            generators: 2,
        }
    }

    pub fn ambient(&self) -> GroupSpec {
        GroupSpec::classical(self.family, self.n, 1)
    }

    /// Block group the generators live in before hiding, compact part first.
    pub fn block_group(&self) -> GroupSpec {
        let (k, nc) = match self.target {
            TargetKind::RealForm(m) => (self.n - m, GroupSpec::o(m, 1)),
            TargetKind::ComplexLine => (self.n - 1, GroupSpec::su11()),
        };
        let compact = GroupSpec::classical(
            if self.family == Family::Sp {
                Family::Sp
            } else {
                Family::U
            },
            k,
            0,
        );
        let mut summands = Vec::new();
        if k > 0 {
            summands.push(compact);
        }
        summands.push(nc);
        GroupSpec::block(summands, self.family == Family::SU)
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.family, Family::SU | Family::Sp) {
            return Err(Error::InvalidRecipe(format!(
                "ambient must be SU or Sp, got {:?}",
                self.family
            )));
        }
        if self.n < 1 {
            return Err(Error::InvalidRecipe("n must be at least 1".to_string()));
        }
        if let TargetKind::RealForm(m) = self.target {
            if m < 2 || m > self.n {
                return Err(Error::InvalidRecipe(format!(
                    "real_form needs 2 <= m <= n, got m = {m}, n = {}",
                    self.n
                )));
            }
        }
        if !(2..=3).contains(&self.generators) {
            return Err(Error::InvalidRecipe(format!(
                "generator count must be 2 or 3, got {}",
                self.generators
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Synthesis<T> {
    pub gens: GeneratorSet<T>,
    /// `h` with `γ = h β h⁻¹` for the block generators `β`.
    pub hidden: Matrix<T>,
    pub block_group: GroupSpec,
    pub block_gens: Vec<Matrix<T>>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// Compact factor with real traces: 1, SU(2) or SO(k).
fn compact(k: usize, rng: &mut ChaCha8Rng) -> Result<CMatrix> {
    match k {
        0 => Ok(CMatrix::zeros(0, 0)),
        1 => Ok(CMatrix::identity(1)),
        2 => sample_element(&GroupSpec::su2(), rng),
        _ => sample_element(&GroupSpec::so(k, 0), rng),
    }
}

fn boost_size<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(0.8..2.0)
}

// k₁ a_t k₂ with a_t a boost along the first axis.
fn so_loxodromic(m: usize, rng: &mut ChaCha8Rng) -> Result<CMatrix> {
    let rot = GroupSpec::so(m, 0);
    let k1 = sample_element::<Complex64, _>(&rot, rng)?.direct_sum(&CMatrix::identity(1));
    let k2 = sample_element::<Complex64, _>(&rot, rng)?.direct_sum(&CMatrix::identity(1));
    let t = boost_size(rng);
    let mut a = CMatrix::identity(m + 1);
    a[(0, 0)] = c(t.cosh(), 0.0);
    a[(m, m)] = c(t.cosh(), 0.0);
    a[(0, m)] = c(t.sinh(), 0.0);
    a[(m, 0)] = c(t.sinh(), 0.0);
    Ok(&(&k1 * &a) * &k2)
}

fn su11_loxodromic(rng: &mut ChaCha8Rng) -> CMatrix {
    let t = boost_size(rng);
    let rot = |th: f64| CMatrix::from_diag(&[Complex64::from_polar(1.0, th), Complex64::from_polar(1.0, -th)]);
    let a = CMatrix::from_rows(&[
        vec![c(t.cosh(), 0.0), c(t.sinh(), 0.0)],
        vec![c(t.sinh(), 0.0), c(t.cosh(), 0.0)],
    ])
    .expect("2x2");
    let (t1, t2) = (rng.random_range(0.0..PI), rng.random_range(0.0..PI));
    &(&rot(t1) * &a) * &rot(t2)
}

fn reflect_first(g: &CMatrix) -> CMatrix {
    let mut r = g.clone();
    for j in 0..r.cols() {
        r[(0, j)] = -r[(0, j)];
    }
    r
}

fn block_generators(recipe: &SynthesisRecipe, rng: &mut ChaCha8Rng) -> Result<Vec<CMatrix>> {
    let n = recipe.n;
    let mut out = Vec::with_capacity(recipe.generators);
    for idx in 0..recipe.generators {
        let g = match recipe.target {
            TargetKind::RealForm(m) => {
                let k = n - m;
                let mut kc = compact(k, rng)?;
                let mut nc = so_loxodromic(m, rng)?;
                if recipe.family == Family::Sp {
                    if rng.random_bool(0.5) {
                        nc = reflect_first(&nc);
                    }
                } else if idx == 2 && (k == 1 || k >= 3) {
                    // determinant-compensated pair of reflections
                    kc = reflect_first(&kc);
                    nc = reflect_first(&nc);
                }
                kc.direct_sum(&nc)
            }
            TargetKind::ComplexLine => compact(n - 1, rng)?.direct_sum(&su11_loxodromic(rng)),
        };
        out.push(g);
    }
    Ok(out)
}

fn hiding_conjugator<T: Field>(recipe: &SynthesisRecipe) -> Result<Matrix<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(recipe.hide_seed);
    match recipe.family {
        Family::SU => sample_near_identity(&recipe.ambient(), &mut rng, 1.0),
        _ => {
            // Conjugating complex blocks by a generic Sp(n,1) element would
            // destroy trace realness; a unit quaternion times U(n,1) keeps it.
            let h: CMatrix = sample_near_identity(&GroupSpec::u(recipe.n, 1), &mut rng, 1.0)?;
            let q = Quaternion::new(
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            );
            let q = q.scale(1.0 / q.norm());
            let q = T::from_cvec(Field::to_cvec(q));
            Ok(h.map(T::from_complex).scale_left(q))
        }
    }
}

/// Draws block generators per `recipe` and hides them by a random ambient
/// element. `T` must match the recipe's scalars.
pub fn synthesize<T: Field>(recipe: &SynthesisRecipe) -> Result<Synthesis<T>> {
    recipe.validate()?;
    let want = if recipe.family == Family::Sp {
        FieldKind::Quaternion
    } else {
        FieldKind::Complex
    };
    if T::KIND != want {
        return Err(Error::FieldMismatch(format!(
            "{} needs {:?} entries",
            recipe.ambient(),
            want
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(recipe.block_seed);
    let block: Vec<Matrix<T>> = block_generators(recipe, &mut rng)?
        .iter()
        .map(|g| g.map(T::from_complex))
        .collect();
    let ambient = recipe.ambient();
    let h: Matrix<T> = hiding_conjugator(recipe)?;
    let hinv = form_inverse(&h, &ambient.signs());
    let gens: Vec<Matrix<T>> = block.iter().map(|b| &(&h * b) * &hinv).collect();
    Ok(Synthesis {
        gens: GeneratorSet::new(ambient, gens, None, SYNTHESIS_TOL)?,
        hidden: h,
        block_group: recipe.block_group(),
        block_gens: block,
    })
}

/// `ρ₂ ⊕ ρ₁` in `SU(3,1)`: `ρ₁` sends the free generators to the Cayley
/// transforms of `[[1,1],[1,2]]` and `[[1,−1],[−1,2]]` in `SU(1,1)`, `ρ₂`
/// to seeded elements of `SU(2)`.
pub fn rho_fixture(seed: u64) -> Result<GeneratorSet<Complex64>> {
    let s = 0.5f64.sqrt();
    let cay = CMatrix::from_rows(&[vec![c(s, 0.0), c(0.0, s)], vec![c(0.0, s), c(s, 0.0)]]).expect("2x2");
    let cay_inv = CMatrix::from_rows(&[vec![c(s, 0.0), c(0.0, -s)], vec![c(0.0, -s), c(s, 0.0)]]).expect("2x2");
    let real = |rows: [[f64; 2]; 2]| CMatrix::from_rows(&rows.map(|r| r.map(|x| c(x, 0.0)).to_vec())).expect("2x2");
    let rho1 = [real([[1.0, 1.0], [1.0, 2.0]]), real([[1.0, -1.0], [-1.0, 2.0]])];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = rho1
        .iter()
        .map(|a| {
            let u: CMatrix = sample_element(&GroupSpec::su2(), &mut rng)?;
            Ok(u.direct_sum(&(&(&cay * a) * &cay_inv)))
        })
        .collect::<Result<Vec<_>>>()?;
    GeneratorSet::new(
        GroupSpec::su(3, 1),
        gens,
        Some(vec!["a".to_string(), "b".to_string()]),
        SYNTHESIS_TOL,
    )
}
