//! Sequential selective measurements, simulated exactly.
//!
//! A quantum outcome sequence `w` has probability
//! `tr(A_w ρ A_w†)` with `A_w = A_{j_n} ⋯ A_{j_1}`. For a full-rank input this
//! vanishes exactly when `A_w = 0`, so "never observed" is a property of the
//! device alone and is searched for on products, not on states.

mod classical;
mod mps;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use classical::{classical_sequence_probability, decide_cmop, decide_nonneg_qmop, ClassicalDevice, CmopVerdict};
pub use mps::{find_unobservable_mps, mps_amplitude, MpsFamily, MpsSearchReport};

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};
use crate::mortality::SearchLimits;
use crate::reduction::QuantumDevice;
use crate::search;
use crate::word::Word;

/// Real rational density matrix, positive semidefinite by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    rho: RatMatrix,
}

impl State {
    /// `1_d / d`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("state dimension must be positive".into()));
        }
        let w = Rational::new(BigInt::one(), BigInt::from(dim));
        Ok(State { rho: RatMatrix::identity(dim).scale(&w) })
    }

    /// `G† G / tr(G† G)` for any nonzero `G` (`r x d`).
    pub fn from_factor(factor: &RatMatrix) -> Result<Self> {
        let gram = factor.gram();
        let tr = gram.trace()?;
        if tr.is_zero() {
            return Err(Error::InvalidInstance("state factor must be nonzero".into()));
        }
        Ok(State { rho: gram.scale(&(Rational::one() / tr)) })
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    pub fn rho(&self) -> &RatMatrix {
        &self.rho
    }

    pub fn is_full_rank(&self) -> bool {
        self.rho.rank() == self.dim()
    }
}

fn check_dims(state: &State, device: &QuantumDevice) -> Result<()> {
    if state.dim() != device.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state has dimension {} but the device acts on {}",
            state.dim(),
            device.dim()
        )));
    }
    Ok(())
}

// tr(P ρ P†) = Σ_{a,c} (P ρ)_{ac} P_{ac}.
fn weight(op: &RatMatrix, rho: &RatMatrix) -> Rational {
    let p_rho = op.mul(rho).expect("square operands of equal size");
    p_rho
        .entries()
        .iter()
        .zip(op.entries())
        .filter(|(_, b)| !b.is_zero())
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// One measurement: returns the post-measurement state and the probability
/// `tr(A_j ρ A_j†)` of outcome `j`.
pub fn apply_outcome(state: &State, device: &QuantumDevice, outcome: usize) -> Result<(State, Rational)> {
    check_dims(state, device)?;
    let a = device.operator(outcome)?;
    let unnormalised = a
        .mul(state.rho())?
        .mul(&a.conj_transpose())?;
    let p = unnormalised.trace()?;
    if p.is_zero() {
        return Err(Error::ImpossibleOutcome { outcome });
    }
    let rho = unnormalised.scale(&(Rational::one() / &p));
    Ok((State { rho }, p))
}

/// Probability of observing `word` (in order) starting from `state`.
pub fn sequence_probability(device: &QuantumDevice, word: &Word, state: &State) -> Result<Rational> {
    check_dims(state, device)?;
    let product = device.product(word)?;
    Ok(weight(&product, state.rho()))
}

/// Whether `word` has nonzero probability on full-rank inputs, i.e. whether
/// `A_{j_n} ⋯ A_{j_1} ≠ 0`.
pub fn occurs_ever(device: &QuantumDevice, word: &Word) -> Result<bool> {
    word.check_range(device.outcomes())?;
    let lifted = search::lift_generators(device.kraus());
    Ok(!word.product(&lifted)?.is_zero())
}

/// Minimal never-observed outcome sequences up to a depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptyPortReport {
    pub max_depth: usize,
    /// Sorted shortest first, then lexicographically. No proper prefix of a
    /// listed word is itself never observed.
    pub empty_ports: Vec<Word>,
    /// Every branch of the tree was closed off before `max_depth`, so the
    /// list is complete for all depths.
    pub exhausted: bool,
}

/// Walks the outcome tree breadth first, cutting every branch at its first
/// zero product; words with equal partial products share one multiplication.
pub fn find_empty_ports(device: &QuantumDevice, max_depth: usize, limits: SearchLimits) -> Result<EmptyPortReport> {
    if max_depth == 0 {
        return Err(Error::InvalidInstance("max depth must be at least 1".into()));
    }
    let lifted = search::lift_generators(device.kraus());
    let scan = search::all_words(&lifted, max_depth, limits.max_elements, true, search::is_zero)?;
    Ok(EmptyPortReport { max_depth, empty_ports: scan.words, exhausted: scan.exhausted })
}
