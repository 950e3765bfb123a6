use super::{group_membership, GroupSpec};
use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};

/// Ordered generators of a subgroup of `group`, with display labels.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet<T> {
    group: GroupSpec,
    gens: Vec<Matrix<T>>,
    labels: Vec<String>,
}

impl<T: Field> GeneratorSet<T> {
    /// Validates shape and membership of every generator. Missing labels
    /// default to `g1, g2, …`.
    pub fn new(group: GroupSpec, gens: Vec<Matrix<T>>, labels: Option<Vec<String>>, tol: f64) -> Result<Self> {
        let set = Self::new_unchecked(group, gens, labels)?;
        for (g, label) in set.gens.iter().zip(&set.labels) {
            let r = group_membership(g, &set.group, tol)?;
            if !r.member {
                return Err(Error::Membership {
                    group: format!("{} (generator {label})", set.group),
                    residual: r.residual,
                    tol,
                });
            }
        }
        Ok(set)
    }

    /// Checks shapes only.
    pub fn new_unchecked(group: GroupSpec, gens: Vec<Matrix<T>>, labels: Option<Vec<String>>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let n = group.size();
        for g in &gens {
            if g.shape() != (n, n) {
                return Err(Error::mismatch("generator", g.shape(), (n, n)));
            }
        }
        let labels = match labels {
            Some(l) if l.len() == gens.len() => l,
            Some(l) => {
                return Err(Error::Constraint(format!(
                    "{} labels for {} generators",
                    l.len(),
                    gens.len()
                )));
            }
            None => (1..=gens.len()).map(|k| format!("g{k}")).collect(),
        };
        Ok(Self { group, gens, labels })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn gens(&self) -> &[Matrix<T>] {
        &self.gens
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Matrix size.
    pub fn size(&self) -> usize {
        self.group.size()
    }

    /// Same labels and group, each generator replaced by `f(g)`.
    pub fn map(&self, f: impl Fn(&Matrix<T>) -> Matrix<T>) -> Self {
        Self {
            group: self.group.clone(),
            gens: self.gens.iter().map(f).collect(),
            labels: self.labels.clone(),
        }
    }
}
