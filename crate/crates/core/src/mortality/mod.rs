//! Matrix mortality: does the semigroup generated by a finite set of square
//! matrices contain the zero matrix?
//!
//! For general integer or rational generators the question is undecidable,
//! so [`bounded_mortality_search`] only ever answers "mortal" or
//! "inconclusive". For entrywise non-negative generators only the zero
//! pattern of a product matters, which makes the semigroup of patterns
//! finite; [`decide_nonneg_mortality`] enumerates it and always decides.

pub(crate) mod boolean;

use serde::{Deserialize, Serialize};

pub use boolean::{bool_product, bool_project, decide_nonneg_mortality, BoolMatrix, BooleanSemigroup};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, RatMatrix};
use crate::search;
use crate::word::Word;

/// Default cap on distinct semigroup elements or stored partial products.
pub const DEFAULT_MAX_ELEMENTS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_elements: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_elements: DEFAULT_MAX_ELEMENTS }
    }
}

/// A finite generator set for a matrix semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MmpRepr", into = "MmpRepr")]
pub struct MmpInstance {
    dim: usize,
    generators: Vec<RatMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MmpRepr {
    dim: usize,
    matrices: Vec<RatMatrix>,
}

impl TryFrom<MmpRepr> for MmpInstance {
    type Error = Error;

    fn try_from(r: MmpRepr) -> Result<Self> {
        let inst = MmpInstance::new(r.matrices)?;
        if inst.dim != r.dim {
            return Err(Error::InvalidInstance(format!(
                "declared dim {} but generators are {}x{}",
                r.dim, inst.dim, inst.dim
            )));
        }
        Ok(inst)
    }
}

impl From<MmpInstance> for MmpRepr {
    fn from(i: MmpInstance) -> Self {
        MmpRepr { dim: i.dim, matrices: i.generators }
    }
}

impl MmpInstance {
    pub fn new(generators: Vec<RatMatrix>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidInstance("at least one generator is required".into()))?;
        let dim = first.rows();
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::InvalidInstance(format!(
                    "generator {} is {}x{}, expected {dim}x{dim}",
                    i + 1,
                    g.rows(),
                    g.cols()
                )));
            }
        }
        Ok(MmpInstance { dim, generators })
    }

    pub fn from_integer(generators: Vec<IntMatrix>) -> Result<Self> {
        Self::new(generators.iter().map(IntMatrix::to_rational).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The generators as integer matrices, if every entry is an integer.
    pub fn integer_generators(&self) -> Option<Vec<IntMatrix>> {
        self.generators
            .iter()
            .map(|g| {
                g.entries()
                    .iter()
                    .all(|x| x.is_integer())
                    .then(|| g.map(|x| x.to_integer()))
            })
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.generators.iter().all(RatMatrix::is_nonnegative)
    }

    /// Exact product over `word` in temporal order.
    pub fn product(&self, word: &Word) -> Result<RatMatrix> {
        word.product(&self.generators)
    }
}

/// Outcome of a mortality query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum MortalityVerdict {
    /// `witness` multiplies out to zero.
    Mortal { witness: Word },
    /// No product is zero. Only the complete decider says this.
    Immortal,
    /// Bounded search found nothing up to `depth`.
    Inconclusive { depth: usize },
}

impl MortalityVerdict {
    pub fn witness(&self) -> Option<&Word> {
        match self {
            MortalityVerdict::Mortal { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, MortalityVerdict::Inconclusive { .. })
    }
}

/// Breadth-first search for a zero product among words of length
/// `<= max_depth`, for arbitrary integer or rational generators.
///
/// The witness, if any, is the shortest zero word and the lexicographically
/// smallest among those; a witness found at depth `L` is therefore found
/// unchanged at every larger depth.
pub fn bounded_mortality_search(
    inst: &MmpInstance,
    max_depth: usize,
    limits: SearchLimits,
) -> Result<MortalityVerdict> {
    if max_depth == 0 {
        return Err(Error::InvalidInstance("max depth must be at least 1".into()));
    }
    let lifted = search::lift_generators(inst.generators());
    match search::first_word(&lifted, max_depth, limits.max_elements, search::is_zero)? {
        Some(witness) => Ok(MortalityVerdict::Mortal { witness }),
        None => Ok(MortalityVerdict::Inconclusive { depth: max_depth }),
    }
}
