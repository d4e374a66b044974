use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};
use crate::mortality::{bool_project, boolean, MortalityVerdict, SearchLimits};
use crate::reduction::QuantumDevice;
use crate::word::Word;

/// A column-stochastic matrix `Q` split into non-negative outcome parts
/// `Q = Σ_j Q_j`, acting on column probability vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ClassicalRepr", into = "ClassicalRepr")]
pub struct ClassicalDevice {
    dim: usize,
    parts: Vec<RatMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassicalRepr {
    dim: usize,
    parts: Vec<RatMatrix>,
}

impl TryFrom<ClassicalRepr> for ClassicalDevice {
    type Error = Error;

    fn try_from(r: ClassicalRepr) -> Result<Self> {
        let dev = ClassicalDevice::new(r.parts)?;
        if dev.dim != r.dim {
            return Err(Error::InvalidDevice(format!("declared dim {} but parts are {}x{}", r.dim, dev.dim, dev.dim)));
        }
        Ok(dev)
    }
}

impl From<ClassicalDevice> for ClassicalRepr {
    fn from(d: ClassicalDevice) -> Self {
        ClassicalRepr { dim: d.dim, parts: d.parts }
    }
}

impl ClassicalDevice {
    pub fn new(parts: Vec<RatMatrix>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidDevice("at least one outcome part is required".into()))?;
        let dim = first.rows();
        let mut total = RatMatrix::zeros(dim, dim);
        for (j, q) in parts.iter().enumerate() {
            if q.rows() != dim || q.cols() != dim {
                return Err(Error::InvalidDevice(format!(
                    "part {} is {}x{}, expected {dim}x{dim}",
                    j + 1,
                    q.rows(),
                    q.cols()
                )));
            }
            if !q.is_nonnegative() {
                return Err(Error::InvalidDevice(format!("part {} has a negative entry", j + 1)));
            }
            total = total.add(q)?;
        }
        for c in 0..dim {
            let sum = (0..dim).fold(Rational::zero(), |acc, r| acc + &total[(r, c)]);
            if !sum.is_one() {
                return Err(Error::InvalidDevice(format!(
                    "column {} of the summed matrix adds up to {sum}, not 1",
                    c + 1
                )));
            }
        }
        Ok(ClassicalDevice { dim, parts })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parts(&self) -> &[RatMatrix] {
        &self.parts
    }

    pub fn outcomes(&self) -> usize {
        self.parts.len()
    }
}

/// `Σ_i (Q_{j_n} ⋯ Q_{j_1} q)_i`.
pub fn classical_sequence_probability(cdev: &ClassicalDevice, word: &Word, q: &[Rational]) -> Result<Rational> {
    if q.len() != cdev.dim {
        return Err(Error::DimensionMismatch(format!(
            "probability vector has {} entries, device dimension is {}",
            q.len(),
            cdev.dim
        )));
    }
    if q.iter().any(Signed::is_negative) {
        return Err(Error::InvalidInstance("probability vector has a negative entry".into()));
    }
    let total = q.iter().fold(Rational::zero(), |acc, x| acc + x);
    if !total.is_one() {
        return Err(Error::InvalidInstance(format!("probability vector sums to {total}, not 1")));
    }
    word.check_range(cdev.outcomes())?;
    let mut v = RatMatrix::new(q.len(), 1, q.to_vec())?;
    for &j in word.indices() {
        v = cdev.parts[j - 1].mul(&v)?;
    }
    Ok(v.entries().iter().fold(Rational::zero(), |acc, x| acc + x))
}

/// Answer to the classical occurrence question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum CmopVerdict {
    /// `witness` has probability zero on every strictly positive input.
    ExistsEmptyPort { witness: Word },
    AllOccur,
}

impl From<MortalityVerdict> for CmopVerdict {
    fn from(v: MortalityVerdict) -> Self {
        match v {
            MortalityVerdict::Mortal { witness } => CmopVerdict::ExistsEmptyPort { witness },
            MortalityVerdict::Immortal => CmopVerdict::AllOccur,
            MortalityVerdict::Inconclusive { .. } => unreachable!("the pattern decider always decides"),
        }
    }
}

/// Complete decision: some outcome sequence is never seen iff the parts
/// generate a mortal semigroup, which the zero-pattern closure settles.
pub fn decide_cmop(cdev: &ClassicalDevice, limits: SearchLimits) -> Result<CmopVerdict> {
    decide_nonneg(cdev.parts(), limits)
}

/// The same decision for a quantum device whose Kraus operators are all
/// entrywise non-negative.
pub fn decide_nonneg_qmop(device: &QuantumDevice, limits: SearchLimits) -> Result<CmopVerdict> {
    decide_nonneg(device.kraus(), limits)
}

fn decide_nonneg(parts: &[RatMatrix], limits: SearchLimits) -> Result<CmopVerdict> {
    let patterns = parts.iter().map(bool_project).collect::<Result<Vec<_>>>()?;
    Ok(boolean::decide_patterns(&patterns, limits)?.into())
}
