use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};

/// Outcome (or generator) indices `j_1, …, j_n`, 1-based, in the order they
/// are applied.
///
/// The matrix attached to a word is always `M_{j_n} ⋯ M_{j_1}`: the last
/// index applied sits leftmost.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(indices: Vec<usize>) -> Self {
        Word(indices)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by one more outcome.
    pub fn extended(&self, index: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(index);
        Word(v)
    }

    pub fn check_range(&self, max: usize) -> Result<()> {
        match self.0.iter().find(|&&j| j == 0 || j > max) {
            Some(&index) => Err(Error::IndexOutOfRange { index, max }),
            None => Ok(()),
        }
    }

    /// Shortest first, then lexicographic.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// `M_{j_n} ⋯ M_{j_1}`; the empty word gives the identity.
    pub fn product<T: Scalar>(&self, generators: &[Matrix<T>]) -> Result<Matrix<T>> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidInstance("no generators".into()))?;
        self.check_range(generators.len())?;
        let mut acc = Matrix::<T>::identity(first.rows());
        for &j in &self.0 {
            acc = generators[j - 1].mul(&acc)?;
        }
        Ok(acc)
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        Ok(())
    }
}

/// Parses a comma-separated list such as `1,9,2`. The empty string is the
/// empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad word index {part:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}
