use std::collections::HashSet;
use std::fmt;


use super::{MmpInstance, MortalityVerdict, SearchLimits};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::word::Word;

const MAX_COLS: usize = 64;

/// Zero/one pattern of a matrix, one `u64` per row (bit `k` = column `k`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if cols > MAX_COLS {
            return Err(Error::DimensionMismatch(format!(
                "pattern matrices support at most {MAX_COLS} columns, got {cols}"
            )));
        }
        Ok(BoolMatrix { rows, cols, bits: vec![0; rows] })
    }

    pub fn from_rows(rows: &[&[bool]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols)?;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged pattern rows".into()));
            }
            for (c, &b) in row.iter().enumerate() {
                m.set(r, c, b);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r] >> c & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        if value {
            self.bits[r] |= 1 << c;
        } else {
            self.bits[r] &= !(1 << c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn count_ones(&self) -> u32 {
        self.bits.iter().map(|b| b.count_ones()).sum()
    }

    fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.bits[i] = 1 << i;
        }
        Ok(m)
    }

    // Row a of the product is the OR of the rows k of `rhs` selected by row a of `self`.
    fn product_unchecked(&self, rhs: &BoolMatrix) -> BoolMatrix {
        let bits = self
            .bits
            .iter()
            .map(|&row| {
                let mut acc = 0u64;
                let mut rest = row;
                while rest != 0 {
                    let k = rest.trailing_zeros() as usize;
                    acc |= rhs.bits[k];
                    rest &= rest - 1;
                }
                acc
            })
            .collect();
        BoolMatrix { rows: self.rows, cols: rhs.cols, bits }
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMatrix[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(";")?;
            }
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
        }
        f.write_str("]")
    }
}

/// `M'`: 1 exactly where `M` is strictly positive.
pub fn bool_project<T: Scalar>(m: &Matrix<T>) -> Result<BoolMatrix> {
    let mut out = BoolMatrix::zeros(m.rows(), m.cols())?;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = &m[(r, c)];
            if v.is_negative() {
                return Err(Error::NegativeEntry { row: r, col: c, value: v.to_string() });
            }
            if v.is_positive() {
                out.set(r, c, true);
            }
        }
    }
    Ok(out)
}

/// `M' ∗ N' = (M' N')'`.
pub fn bool_product(lhs: &BoolMatrix, rhs: &BoolMatrix) -> Result<BoolMatrix> {
    if lhs.cols != rhs.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} pattern by {}x{}",
            lhs.rows, lhs.cols, rhs.rows, rhs.cols
        )));
    }
    Ok(lhs.product_unchecked(rhs))
}

/// Every element of the semigroup generated by a set of zero patterns, each
/// with its shortest (then lexicographically smallest) word.
///
/// Elements are listed in the order breadth-first discovery meets them,
/// which is shortlex order of their words.
#[derive(Debug, Clone)]
pub struct BooleanSemigroup {
    pub elements: Vec<(BoolMatrix, Word)>,
}

impl BooleanSemigroup {
    /// Full closure under `∗`.
    pub fn generate(generators: &[BoolMatrix], limits: SearchLimits) -> Result<Self> {
        let mut elements = Vec::new();
        closure(generators, limits, |m, w| {
            elements.push((m.clone(), w.clone()));
            false
        })?;
        Ok(BooleanSemigroup { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn zero_word(&self) -> Option<&Word> {
        self.elements.iter().find(|(m, _)| m.is_zero()).map(|(_, w)| w)
    }
}

/// Breadth-first closure. `visit` is called once per new element in
/// discovery order; returning `true` stops the walk and yields that word.
fn closure(
    generators: &[BoolMatrix],
    limits: SearchLimits,
    mut visit: impl FnMut(&BoolMatrix, &Word) -> bool,
) -> Result<Option<Word>> {
    let Some(first) = generators.first() else {
        return Ok(None);
    };
    let d = first.rows;
    if let Some(g) = generators.iter().find(|g| g.rows != d || g.cols != d) {
        return Err(Error::DimensionMismatch(format!(
            "pattern generator is {}x{}, expected {d}x{d}",
            g.rows, g.cols
        )));
    }
    let mut seen: HashSet<BoolMatrix> = HashSet::new();
    let mut frontier = vec![(BoolMatrix::identity(d)?, Word::empty())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (product, word) in &frontier {
            for (j, g) in generators.iter().enumerate() {
                // The word gains j as its newest (leftmost) factor.
                let q = g.product_unchecked(product);
                if seen.contains(&q) {
                    continue;
                }
                let w = word.extended(j + 1);
                if visit(&q, &w) {
                    return Ok(Some(w));
                }
                seen.insert(q.clone());
                if seen.len() > limits.max_elements {
                    return Err(Error::ResourceExhausted {
                        limit: limits.max_elements,
                        context: format!(
                            "Boolean closure of {} generators in dimension {d}; the semigroup can hold up to 2^({d}^2) elements",
                            generators.len()
                        ),
                    });
                }
                next.push((q, w));
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// Complete mortality decision for entrywise non-negative generators.
///
/// Works on zero patterns: the product of non-negative matrices is zero
/// exactly when the `∗` product of their patterns is. The witness is the
/// shortest zero word, ties broken lexicographically, and its length never
/// exceeds the size of the pattern semigroup (at most `2^(d²)`).
pub fn decide_nonneg_mortality(inst: &MmpInstance, limits: SearchLimits) -> Result<MortalityVerdict> {
    let patterns = inst
        .generators()
        .iter()
        .map(bool_project)
        .collect::<Result<Vec<_>>>()?;
    decide_patterns(&patterns, limits)
}

pub(crate) fn decide_patterns(patterns: &[BoolMatrix], limits: SearchLimits) -> Result<MortalityVerdict> {
    Ok(match closure(patterns, limits, |m, _| m.is_zero())? {
        Some(witness) => MortalityVerdict::Mortal { witness },
        None => MortalityVerdict::Immortal,
    })
}
