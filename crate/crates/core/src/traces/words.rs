//! Freely reduced words in the generators and their matrices.

use std::fmt;

use crate::algebra::{Field, Matrix};
use crate::groups::{form_inverse, GeneratorSet};

/// One generator or its inverse; `index` is 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    fn code(self) -> usize {
        2 * self.index + usize::from(self.inverse)
    }

    fn from_code(c: usize) -> Self {
        Letter {
            index: c / 2,
            inverse: c % 2 == 1,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word (no letter is followed by its inverse).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Builds and freely reduces a word.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// `[(index, ±1)]` pairs, as they appear in documents.
    pub fn from_pairs(pairs: &[(usize, i8)]) -> Self {
        Self::new(pairs.iter().map(|&(index, e)| Letter { index, inverse: e < 0 }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(&other.0).copied())
    }

    /// Product of the letter matrices.
    pub fn evaluate<T: Field>(&self, gens: &GeneratorSet<T>) -> Matrix<T> {
        let table = letter_table(gens);
        self.0
            .iter()
            .fold(Matrix::identity(gens.size()), |acc, l| &acc * &table[l.code()])
    }

    /// `g1 g2^-1 …` using the given labels.
    pub fn render(&self, labels: &[String]) -> String {
        if self.0.is_empty() {
            return "e".into();
        }
        self.0
            .iter()
            .map(|l| {
                let name = labels
                    .get(l.index)
                    .cloned()
                    .unwrap_or_else(|| format!("g{}", l.index + 1));
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

fn letter_table<T: Field>(gens: &GeneratorSet<T>) -> Vec<Matrix<T>> {
    let eps = gens.group().signs();
    gens.gens()
        .iter()
        .flat_map(|g| [g.clone(), form_inverse(g, &eps)])
        .collect()
}

/// All nonempty reduced words of length `≤ max_len`, by length and then
/// lexicographically in the letter order `g1, g1^-1, g2, g2^-1, …`.
pub struct WordBall<T> {
    table: Vec<Matrix<T>>,
    max_len: usize,
    current: std::vec::IntoIter<(Word, Matrix<T>)>,
    next: Vec<(Word, Matrix<T>)>,
}

pub fn word_ball<T: Field>(gens: &GeneratorSet<T>, max_len: usize) -> WordBall<T> {
    let table = letter_table(gens);
    let first: Vec<(Word, Matrix<T>)> = if max_len == 0 {
        Vec::new()
    } else {
        table
            .iter()
            .enumerate()
            .map(|(c, m)| (Word(vec![Letter::from_code(c)]), m.clone()))
            .collect()
    };
    WordBall {
        table,
        max_len,
        current: first.into_iter(),
        next: Vec::new(),
    }
}

impl<T: Field> Iterator for WordBall<T> {
    type Item = (Word, Matrix<T>);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some((w, m)) = self.current.next() {
                if w.len() < self.max_len {
                    let last = *w.0.last().expect("nonempty");
                    for (c, g) in self.table.iter().enumerate() {
                        let l = Letter::from_code(c);
                        if l == last.inverted() {
                            continue;
                        }
                        let mut letters = w.0.clone();
                        letters.push(l);
                        self.next.push((Word(letters), &m * g));
                    }
                }
                return Some((w, m));
            }
            if self.next.is_empty() {
                return None;
            }
            self.current = std::mem::take(&mut self.next).into_iter();
        }
    }
}

/// Number of nonempty reduced words of length `≤ len` on `k` generators.
pub fn ball_size(k: usize, len: usize) -> u128 {
    let mut total = 0u128;
    let mut level = 2 * k as u128;
    for _ in 0..len {
        total += level;
        level = level.saturating_mul((2 * k as u128).saturating_sub(1));
    }
    total
}
