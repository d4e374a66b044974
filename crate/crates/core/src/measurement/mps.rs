use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};
use crate::mortality::{MmpInstance, SearchLimits};
use crate::search;
use crate::word::Word;

/// Matrix-product family with both boundary vectors equal to `e_1`, so the
/// amplitude of an outcome word is the `(1,1)` entry of its product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MpsRepr", into = "MpsRepr")]
pub struct MpsFamily {
    dim: usize,
    matrices: Vec<RatMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MpsRepr {
    dim: usize,
    matrices: Vec<RatMatrix>,
}

impl TryFrom<MpsRepr> for MpsFamily {
    type Error = Error;

    fn try_from(r: MpsRepr) -> Result<Self> {
        let fam = MpsFamily::new(r.matrices)?;
        if fam.dim != r.dim {
            return Err(Error::InvalidInstance(format!("declared bond dimension {} but matrices are {}x{}", r.dim, fam.dim, fam.dim)));
        }
        Ok(fam)
    }
}

impl From<MpsFamily> for MpsRepr {
    fn from(f: MpsFamily) -> Self {
        MpsRepr { dim: f.dim, matrices: f.matrices }
    }
}

impl MpsFamily {
    pub fn new(matrices: Vec<RatMatrix>) -> Result<Self> {
        // Same shape rules as a semigroup instance.
        let inst = MmpInstance::new(matrices)?;
        Ok(MpsFamily { dim: inst.dim(), matrices: inst.generators().to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[RatMatrix] {
        &self.matrices
    }
}

impl From<MmpInstance> for MpsFamily {
    fn from(inst: MmpInstance) -> Self {
        MpsFamily { dim: inst.dim(), matrices: inst.generators().to_vec() }
    }
}

/// `⟨e_1| A_{j_n} ⋯ A_{j_1} |e_1⟩`.
pub fn mps_amplitude(fam: &MpsFamily, word: &Word) -> Result<Rational> {
    Ok(word.product(&fam.matrices)?[(0, 0)].clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpsSearchReport {
    pub max_depth: usize,
    /// Every word of length `1..=max_depth` with zero amplitude, shortest
    /// first then lexicographic. An empty list says nothing about longer words.
    pub words: Vec<Word>,
}

pub fn find_unobservable_mps(fam: &MpsFamily, max_depth: usize, limits: SearchLimits) -> Result<MpsSearchReport> {
    if max_depth == 0 {
        return Err(Error::InvalidInstance("max depth must be at least 1".into()));
    }
    let lifted = search::lift_generators(&fam.matrices);
    let scan = search::all_words(&lifted, max_depth, limits.max_elements, false, search::corner_is_zero)?;
    Ok(MpsSearchReport { max_depth, words: scan.words })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn amplitude_examples() {
        let id = MpsFamily::new(vec![RatMatrix::identity(3)]).unwrap();
        assert!(mps_amplitude(&id, &Word::new(vec![1, 1, 1])).unwrap().is_one());
        let n = MpsFamily::new(vec![RatMatrix::from_i64_rows(&[[0, 1], [0, 0]])]).unwrap();
        assert!(mps_amplitude(&n, &Word::new(vec![1])).unwrap().is_zero());
    }

    #[test]
    fn search_examples() {
        let id = MpsFamily::new(vec![RatMatrix::identity(2)]).unwrap();
        assert!(find_unobservable_mps(&id, 4, SearchLimits::default()).unwrap().words.is_empty());
        let n = MpsFamily::new(vec![RatMatrix::from_i64_rows(&[[0, 1], [0, 0]])]).unwrap();
        let r = find_unobservable_mps(&n, 1, SearchLimits::default()).unwrap();
        assert_eq!(r.words, vec![Word::new(vec![1])]);
    }

    #[test]
    fn corner_zero_is_not_prefix_closed() {
        // a = [[0,1],[1,0]]: odd powers have zero corner, even powers do not.
        let fam = MpsFamily::new(vec![RatMatrix::from_i64_rows(&[[0, 1], [1, 0]])]).unwrap();
        let r = find_unobservable_mps(&fam, 4, SearchLimits::default()).unwrap();
        assert_eq!(r.words, vec![Word::new(vec![1]), Word::new(vec![1, 1, 1])]);
    }
}
