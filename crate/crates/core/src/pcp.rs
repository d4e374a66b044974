//! Encoding Post correspondence instances as 3x3 integer matrix semigroups.
//!
//! A pair of words `(u, v)` over `{1,2,3}` is tracked by
//! `F(u,v) = S · [[3^|u|, 0, 0], [0, 3^|v|, 0], [f(u), f(v), 1]] · S⁻¹`
//! with `f` the base-3 value of a word. `F` is a monoid homomorphism, and its
//! `(1,1)` entry is `3^|u| + f(u) − f(v) = f(1u) − f(v)`. Prefixing the `g`
//! side with the digit 1 once (the `Y` generator) therefore makes the corner
//! vanish exactly on solutions.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::mortality::MmpInstance;
use crate::word::Word;

/// `f(w) = Σ_j w_j 3^{|w|-j}`, with `f(ε) = 0`.
pub fn three_adic(word: &str) -> Result<BigInt> {
    let three = BigInt::from(3);
    word.chars().try_fold(BigInt::zero(), |acc, ch| {
        let d = match ch {
            '1' => 1,
            '2' => 2,
            '3' => 3,
            other => return Err(Error::InvalidDigit(other)),
        };
        Ok(acc * &three + d)
    })
}

fn conjugator() -> (IntMatrix, IntMatrix) {
    let s = IntMatrix::from_i64_rows(&[[1, 0, 1], [1, 1, 0], [0, 0, 1]]);
    let s_inv = IntMatrix::from_i64_rows(&[[1, 0, -1], [-1, 1, 1], [0, 0, 1]]);
    (s, s_inv)
}

/// `F(u, v)` for words over `{1,2,3}`.
pub fn pair_matrix(u: &str, v: &str) -> Result<IntMatrix> {
    let (fu, fv) = (three_adic(u)?, three_adic(v)?);
    let pow = |n: usize| num_traits::pow(BigInt::from(3), n);
    let middle = IntMatrix::from_rows(vec![
        vec![pow(u.chars().count()), BigInt::zero(), BigInt::zero()],
        vec![BigInt::zero(), pow(v.chars().count()), BigInt::zero()],
        vec![fu, fv, BigInt::one()],
    ])?;
    let (s, s_inv) = conjugator();
    s.mul(&middle)?.mul(&s_inv)
}

/// `B = diag(1, 0, 0)`.
pub fn corner_projector() -> IntMatrix {
    IntMatrix::diagonal(vec![BigInt::one(), BigInt::zero(), BigInt::zero()])
}

/// Letters of `Σ` and two morphisms into nonempty words over `{2,3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PcpRepr", into = "PcpRepr")]
pub struct PcpInstance {
    alphabet: Vec<String>,
    h: Vec<String>,
    g: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PcpRepr {
    alphabet: Vec<String>,
    h: BTreeMap<String, String>,
    g: BTreeMap<String, String>,
}

impl TryFrom<PcpRepr> for PcpInstance {
    type Error = Error;

    fn try_from(r: PcpRepr) -> Result<Self> {
        for (name, map) in [("h", &r.h), ("g", &r.g)] {
            if let Some(extra) = map.keys().find(|k| !r.alphabet.contains(k)) {
                return Err(Error::InvalidInstance(format!("{name} maps {extra:?}, which is not in the alphabet")));
            }
        }
        let image = |map: &BTreeMap<String, String>, name: &str| -> Result<Vec<String>> {
            r.alphabet
                .iter()
                .map(|a| {
                    map.get(a)
                        .cloned()
                        .ok_or_else(|| Error::InvalidInstance(format!("{name} has no image for {a:?}")))
                })
                .collect()
        };
        let h = image(&r.h, "h")?;
        let g = image(&r.g, "g")?;
        PcpInstance::new(r.alphabet, h, g)
    }
}

impl From<PcpInstance> for PcpRepr {
    fn from(p: PcpInstance) -> Self {
        let zip = |images: &[String]| p.alphabet.iter().cloned().zip(images.iter().cloned()).collect();
        PcpRepr { h: zip(&p.h), g: zip(&p.g), alphabet: p.alphabet.clone() }
    }
}

/// Report from [`check_encoding_correspondence`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub max_len: usize,
    pub words_checked: usize,
    /// Words solving the instance, shortest first then in letter order.
    pub solutions: Vec<Vec<String>>,
    /// Words where being a solution and having a zero corner disagree.
    pub mismatches: Vec<Vec<String>>,
}

impl PcpInstance {
    /// `h` and `g` list the images of the letters in alphabet order.
    pub fn new(alphabet: Vec<String>, h: Vec<String>, g: Vec<String>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidInstance("the alphabet is empty".into()));
        }
        let mut unique = HashSet::new();
        if let Some(dup) = alphabet.iter().find(|a| !unique.insert(a.as_str())) {
            return Err(Error::InvalidInstance(format!("letter {dup:?} appears twice")));
        }
        if h.len() != alphabet.len() || g.len() != alphabet.len() {
            return Err(Error::InvalidInstance("h and g must give one image per letter".into()));
        }
        for (name, images) in [("h", &h), ("g", &g)] {
            for (a, img) in alphabet.iter().zip(images) {
                if img.is_empty() || !img.chars().all(|c| c == '2' || c == '3') {
                    return Err(Error::InvalidInstance(format!(
                        "{name}({a}) = {img:?} must be a nonempty word over {{2,3}}"
                    )));
                }
            }
        }
        Ok(PcpInstance { alphabet, h, g })
    }

    /// Convenience constructor: `(letter, h image, g image)` triples.
    pub fn from_pairs(pairs: &[(&str, &str, &str)]) -> Result<Self> {
        Self::new(
            pairs.iter().map(|p| p.0.to_string()).collect(),
            pairs.iter().map(|p| p.1.to_string()).collect(),
            pairs.iter().map(|p| p.2.to_string()).collect(),
        )
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letters(&self) -> usize {
        self.alphabet.len()
    }

    /// `h(w)` for a word of 0-based letter indices.
    pub fn apply_h(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.h[a].as_str()).collect()
    }

    pub fn apply_g(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.g[a].as_str()).collect()
    }

    pub fn is_solution(&self, word: &[usize]) -> bool {
        !word.is_empty() && self.apply_h(word) == self.apply_g(word)
    }

    pub fn spell(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&a| self.alphabet[a].clone()).collect()
    }

    /// Inverse of [`PcpInstance::spell`].
    pub fn parse_letters(&self, letters: &[String]) -> Result<Vec<usize>> {
        letters
            .iter()
            .map(|l| {
                self.alphabet
                    .iter()
                    .position(|a| a == l)
                    .ok_or_else(|| Error::InvalidInstance(format!("unknown letter {l:?}")))
            })
            .collect()
    }

    pub fn x_matrix(&self, letter: usize) -> Result<IntMatrix> {
        pair_matrix(&self.h[letter], &self.g[letter])
    }

    pub fn y_matrix(&self, letter: usize) -> Result<IntMatrix> {
        pair_matrix(&self.h[letter], &format!("1{}", self.g[letter]))
    }

    /// Generator index (1-based) of `X_a`, `Y_a` and `B` in [`encode_pcp`].
    pub fn x_index(&self, letter: usize) -> usize {
        letter + 1
    }

    pub fn y_index(&self, letter: usize) -> usize {
        self.letters() + letter + 1
    }

    pub fn b_index(&self) -> usize {
        2 * self.letters() + 1
    }

    /// Temporal word whose product is `Y_{w_1} X_{w_2} ⋯ X_{w_n}`.
    pub fn encoding_word(&self, word: &[usize]) -> Word {
        let Some((&first, rest)) = word.split_first() else {
            return Word::empty();
        };
        let mut out: Vec<usize> = rest.iter().rev().map(|&a| self.x_index(a)).collect();
        out.push(self.y_index(first));
        Word::new(out)
    }

    /// Temporal word whose product is `B Y_{w_1} X_{w_2} ⋯ X_{w_n} B`.
    pub fn mortality_word(&self, word: &[usize]) -> Word {
        let mut out = vec![self.b_index()];
        out.extend_from_slice(self.encoding_word(word).indices());
        out.push(self.b_index());
        Word::new(out)
    }
}

/// Generators `X_a` for each letter, then `Y_a` for each letter, then `B`.
pub fn encode_pcp(inst: &PcpInstance) -> Result<MmpInstance> {
    let mut gens = Vec::with_capacity(2 * inst.letters() + 1);
    for a in 0..inst.letters() {
        gens.push(inst.x_matrix(a)?);
    }
    for a in 0..inst.letters() {
        gens.push(inst.y_matrix(a)?);
    }
    gens.push(corner_projector());
    MmpInstance::from_integer(gens)
}

/// Shortest (then first in letter order) nonempty `w` with `h(w) = g(w)`
/// and `|w| <= max_len`. Prefixes whose images already disagree are cut.
pub fn solve_pcp_bounded(inst: &PcpInstance, max_len: usize) -> Option<Vec<usize>> {
    fn dfs(inst: &PcpInstance, word: &mut Vec<usize>, top: &str, bottom: &str, len: usize) -> bool {
        if word.len() == len {
            return top == bottom;
        }
        for a in 0..inst.letters() {
            let t = format!("{top}{}", inst.h[a]);
            let b = format!("{bottom}{}", inst.g[a]);
            if !(t.starts_with(&b) || b.starts_with(&t)) {
                continue;
            }
            word.push(a);
            if dfs(inst, word, &t, &b, len) {
                return true;
            }
            word.pop();
        }
        false
    }
    (1..=max_len).find_map(|len| {
        let mut word = Vec::with_capacity(len);
        dfs(inst, &mut word, "", "", len).then_some(word)
    })
}

/// Compares "w solves the instance" with "the corner of
/// `Y_{w_1} X_{w_2} ⋯ X_{w_n}` is zero" for every word of length
/// `1..=max_len`. The product is built by matrix multiplication, not through
/// the homomorphism shortcut.
pub fn check_encoding_correspondence(inst: &PcpInstance, max_len: usize) -> Result<CorrespondenceReport> {
    let xs = (0..inst.letters()).map(|a| inst.x_matrix(a)).collect::<Result<Vec<_>>>()?;
    let ys = (0..inst.letters()).map(|a| inst.y_matrix(a)).collect::<Result<Vec<_>>>()?;
    let mut report = CorrespondenceReport {
        max_len,
        words_checked: 0,
        solutions: Vec::new(),
        mismatches: Vec::new(),
    };
    let mut level: Vec<(Vec<usize>, IntMatrix)> = Vec::new();
    for len in 1..=max_len {
        let next: Vec<(Vec<usize>, IntMatrix)> = if len == 1 {
            (0..inst.letters()).map(|a| (vec![a], ys[a].clone())).collect()
        } else {
            let mut out = Vec::with_capacity(level.len() * inst.letters());
            for (w, p) in &level {
                for (a, x) in xs.iter().enumerate() {
                    let mut w2 = w.clone();
                    w2.push(a);
                    out.push((w2, p.mul(x)?));
                }
            }
            out
        };
        for (w, p) in &next {
            report.words_checked += 1;
            let solves = inst.is_solution(w);
            if solves {
                report.solutions.push(inst.spell(w));
            }
            if solves != p[(0, 0)].is_zero() {
                report.mismatches.push(inst.spell(w));
            }
        }
        level = next;
    }
    Ok(report)
}
