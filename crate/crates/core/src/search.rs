//! Breadth-first search over words of a finitely generated matrix semigroup.
//!
//! Generators are replaced by the primitive parts of their integer lifts, and
//! every partial product is kept as a primitive integer matrix. That is a
//! positive rescaling of the true product, so zero tests and the zero
//! pattern of any entry are unaffected, and two words whose true products
//! agree up to a positive factor have identically behaving extensions.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Matrix, Scalar};
use crate::word::Word;

pub(crate) fn lift_generators<T: Scalar>(generators: &[Matrix<T>]) -> Vec<IntMatrix> {
    generators
        .iter()
        .map(|g| g.to_integer_lift().0.primitive_part())
        .collect()
}

fn step(generator: &IntMatrix, product: &IntMatrix) -> IntMatrix {
    generator
        .mul(product)
        .expect("generators share one square dimension")
        .primitive_part()
}

fn exhausted(limit: usize, context: &str) -> Error {
    Error::ResourceExhausted { limit, context: context.to_string() }
}

/// Shortest, then lexicographically smallest, nonempty word of length
/// `<= max_depth` whose product satisfies `hit`.
///
/// Products are deduplicated across all depths: a word is only expanded if
/// its product was never seen before. The first word in shortlex order that
/// reaches a given product is the one kept, and every prefix of the shortlex
/// smallest hit is itself such a first word, so deduplication never hides
/// the answer.
pub(crate) fn first_word(
    generators: &[IntMatrix],
    max_depth: usize,
    max_elements: usize,
    hit: impl Fn(&IntMatrix) -> bool,
) -> Result<Option<Word>> {
    let Some(first) = generators.first() else {
        return Ok(None);
    };
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    let mut frontier = vec![(IntMatrix::identity(first.rows()), Word::empty())];
    seen.insert(frontier[0].0.clone());
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for (product, word) in &frontier {
            for (j, g) in generators.iter().enumerate() {
                let q = step(g, product);
                if hit(&q) {
                    return Ok(Some(word.extended(j + 1)));
                }
                if seen.insert(q.clone()) {
                    if seen.len() > max_elements {
                        return Err(exhausted(max_elements, "distinct partial products in bounded word search"));
                    }
                    next.push((q, word.extended(j + 1)));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(None)
}

/// Every word of length `1..=max_depth` whose product satisfies `hit`.
#[derive(Debug, Clone)]
pub(crate) struct WordScan {
    pub words: Vec<Word>,
    /// No word of length `max_depth` survived, so deeper levels add nothing.
    pub exhausted: bool,
}

/// Level-by-level scan that groups words with equal products.
///
/// Each level holds a map from product to the words reaching it; only one
/// multiplication per group and generator is performed. With `prune_hits`,
/// groups whose product is a hit are reported and not extended.
pub(crate) fn all_words(
    generators: &[IntMatrix],
    max_depth: usize,
    max_elements: usize,
    prune_hits: bool,
    hit: impl Fn(&IntMatrix) -> bool,
) -> Result<WordScan> {
    let Some(first) = generators.first() else {
        return Ok(WordScan { words: Vec::new(), exhausted: true });
    };
    let mut found = Vec::new();
    let mut level: Vec<(IntMatrix, Vec<Word>)> =
        vec![(IntMatrix::identity(first.rows()), vec![Word::empty()])];
    for _ in 0..max_depth {
        let mut index: HashMap<IntMatrix, usize> = HashMap::new();
        let mut next: Vec<(IntMatrix, Vec<Word>)> = Vec::new();
        let mut stored = 0usize;
        for (product, words) in &level {
            for (j, g) in generators.iter().enumerate() {
                let q = step(g, product);
                let extended = words.iter().map(|w| w.extended(j + 1));
                let is_hit = hit(&q);
                if is_hit {
                    found.extend(extended.clone());
                    if prune_hits {
                        continue;
                    }
                }
                stored += words.len();
                if stored > max_elements {
                    return Err(exhausted(max_elements, "words held at one depth of the outcome tree"));
                }
                match index.entry(q) {
                    Entry::Occupied(slot) => next[*slot.get()].1.extend(extended),
                    Entry::Vacant(slot) => {
                        next.push((slot.key().clone(), extended.collect()));
                        slot.insert(next.len() - 1);
                    }
                }
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }
    found.sort_by(Word::shortlex_cmp);
    Ok(WordScan { words: found, exhausted: level.is_empty() })
}

pub(crate) fn is_zero(m: &IntMatrix) -> bool {
    m.is_zero()
}

pub(crate) fn corner_is_zero(m: &IntMatrix) -> bool {
    m[(0, 0)].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> Vec<IntMatrix> {
        vec![
            IntMatrix::from_i64_rows(&[[1, 0], [0, 0]]),
            IntMatrix::from_i64_rows(&[[0, 0], [0, 1]]),
        ]
    }

    #[test]
    fn first_word_is_shortlex_minimal() {
        let w = first_word(&gens(), 3, 100, is_zero).unwrap();
        assert_eq!(w, Some(Word::new(vec![1, 2])));
    }

    #[test]
    fn all_words_prunes_and_sorts() {
        let scan = all_words(&gens(), 3, 100, true, is_zero).unwrap();
        // (1,1,2) is kept: its zero product is first reached at length 3.
        let expect = [vec![1, 2], vec![2, 1], vec![1, 1, 2], vec![2, 2, 1]];
        assert_eq!(scan.words, expect.map(Word::new).to_vec());
        assert!(!scan.exhausted);
    }

    #[test]
    fn all_words_without_pruning_keeps_extensions() {
        let scan = all_words(&gens(), 3, 1000, false, is_zero).unwrap();
        // Of the 8 words of length 3 only (1,1,1) and (2,2,2) are nonzero.
        assert_eq!(scan.words.iter().filter(|w| w.len() == 3).count(), 6);
    }

    #[test]
    fn caps_are_enforced() {
        let free = vec![
            IntMatrix::from_i64_rows(&[[1, 2], [0, 1]]),
            IntMatrix::from_i64_rows(&[[1, 0], [2, 1]]),
        ];
        let err = first_word(&free, 20, 50, is_zero).unwrap_err();
        assert_eq!(err.code(), "resource-exhausted");
        let err = all_words(&free, 20, 50, true, is_zero).unwrap_err();
        assert_eq!(err.code(), "resource-exhausted");
    }
}
