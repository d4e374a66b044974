//! From an 8-generator 3x3 integer mortality instance to a 9-outcome
//! measurement device on a 15-dimensional system.
//!
//! The generators are padded with sign-flipped copies `M_j P_k` so that the
//! sum of their Gram matrices becomes diagonal, then completed to a multiple
//! `c² 1₃` of the identity with four diagonal matrices read off a
//! four-square decomposition. Stacking five 3x3 blocks per outcome and
//! scaling by `4/(5c)` gives eight Kraus operators whose Gram matrices sum to
//! `(16/25) 1₃ ⊕ 0`, and the ninth operator `(3/5) 1₃ ⊕ 1₁₂` fills the rest.
//!
//! A product of the first eight Kraus operators has the matching product of
//! the `M_j` (scaled) as its upper-left block, and the ninth operator only
//! rescales that block, so zero products correspond in both directions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{ceil_sqrt, four_square_decompose, lcm_of_denominators, IntMatrix, RatMatrix, Rational, Scalar};
use crate::mortality::MmpInstance;
use crate::word::Word;

/// Number of generators the construction accepts.
pub const SOURCE_GENERATORS: usize = 8;
/// Side of the source matrices.
pub const SOURCE_DIM: usize = 3;
/// Side of the Kraus operators produced.
pub const DEVICE_DIM: usize = 15;
/// Outcome that only rescales the encoded block.
pub const PADDING_OUTCOME: usize = 9;

/// Selective measurement given by rational Kraus operators `A_1 … A_K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DeviceRepr", into = "DeviceRepr")]
pub struct QuantumDevice {
    dim: usize,
    kraus: Vec<RatMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeviceRepr {
    dim: usize,
    kraus: Vec<RatMatrix>,
}

impl TryFrom<DeviceRepr> for QuantumDevice {
    type Error = Error;

    fn try_from(r: DeviceRepr) -> Result<Self> {
        let dev = QuantumDevice::new(r.kraus)?;
        if dev.dim != r.dim {
            return Err(Error::InvalidDevice(format!(
                "declared dim {} but Kraus operators are {}x{}",
                r.dim, dev.dim, dev.dim
            )));
        }
        Ok(dev)
    }
}

impl From<QuantumDevice> for DeviceRepr {
    fn from(d: QuantumDevice) -> Self {
        DeviceRepr { dim: d.dim, kraus: d.kraus }
    }
}

/// `Σ A_j† A_j − 1` for a device that fails the completeness identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessViolation {
    pub difference: RatMatrix,
}

impl std::fmt::Display for CompletenessViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "sum of A_j^T A_j differs from the identity by {:?}", self.difference)
    }
}

impl QuantumDevice {
    /// Shape checks only; completeness is checked by [`QuantumDevice::validate`].
    pub fn new(kraus: Vec<RatMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidDevice("at least one Kraus operator is required".into()))?;
        let dim = first.rows();
        if let Some((i, a)) = kraus
            .iter()
            .enumerate()
            .find(|(_, a)| a.rows() != dim || a.cols() != dim)
        {
            return Err(Error::InvalidDevice(format!(
                "Kraus operator {} is {}x{}, expected {dim}x{dim}",
                i + 1,
                a.rows(),
                a.cols()
            )));
        }
        Ok(QuantumDevice { dim, kraus })
    }

    /// Splits the rows of a `Kd x d` isometry into `K` stacked `d x d`
    /// operators. Completeness of the result is `V† V = 1`.
    pub fn from_isometry(stacked: &RatMatrix, outcomes: usize) -> Result<Self> {
        let d = stacked.cols();
        if outcomes == 0 || stacked.rows() != outcomes * d {
            return Err(Error::DimensionMismatch(format!(
                "a {}x{d} matrix does not split into {outcomes} square blocks",
                stacked.rows()
            )));
        }
        let kraus = (0..outcomes)
            .map(|j| stacked.block(j * d, 0, d, d))
            .collect::<Result<Vec<_>>>()?;
        Self::new(kraus)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> usize {
        self.kraus.len()
    }

    pub fn kraus(&self) -> &[RatMatrix] {
        &self.kraus
    }

    /// Kraus operator for outcome `j` (1-based).
    pub fn operator(&self, j: usize) -> Result<&RatMatrix> {
        Word::new(vec![j]).check_range(self.outcomes())?;
        Ok(&self.kraus[j - 1])
    }

    pub fn completeness_sum(&self) -> RatMatrix {
        self.kraus
            .iter()
            .map(RatMatrix::gram)
            .fold(RatMatrix::zeros(self.dim, self.dim), |acc, g| {
                acc.add(&g).expect("uniform shapes")
            })
    }

    /// Exact check of `Σ A_j† A_j = 1`.
    pub fn validate(&self) -> std::result::Result<(), CompletenessViolation> {
        let difference = self
            .completeness_sum()
            .sub(&RatMatrix::identity(self.dim))
            .expect("uniform shapes");
        if difference.is_zero() {
            Ok(())
        } else {
            Err(CompletenessViolation { difference })
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.kraus.iter().all(RatMatrix::is_nonnegative)
    }

    /// `A_{j_n} ⋯ A_{j_1}`.
    pub fn product(&self, word: &Word) -> Result<RatMatrix> {
        word.product(&self.kraus)
    }
}

/// Everything the construction computes, kept for auditing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    /// `Σ_{j=1}^{8} M_j† M_j`.
    pub t: IntMatrix,
    #[serde(serialize_with = "bigint_to_json", deserialize_with = "bigint_from_json")]
    pub c: BigInt,
    /// `M_1 … M_40`; `M_37 … M_40` are zero.
    pub extended_generators: Vec<IntMatrix>,
    pub device: QuantumDevice,
}

fn bigint_to_json<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.to_json().serialize(s)
}

fn bigint_from_json<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
    let v = Value::deserialize(d)?;
    BigInt::from_json(&v).map_err(serde::de::Error::custom)
}

impl ReductionCertificate {
    /// Re-derives every algebraic identity the construction relies on.
    pub fn check(&self) -> Result<()> {
        let m = &self.extended_generators;
        let fail = |what: &str| Err(Error::InvalidDevice(format!("certificate check failed: {what}")));
        if m.len() != 40 || !m[36..].iter().all(IntMatrix::is_zero) {
            return fail("expected 40 extended generators ending in four zero blocks");
        }
        let gram_sum = |range: std::ops::Range<usize>| {
            m[range].iter().fold(IntMatrix::zeros(3, 3), |acc, g| acc.add(&g.gram()).unwrap())
        };
        if gram_sum(0..8) != self.t {
            return fail("T is not the Gram sum of the first eight generators");
        }
        let four_diag = IntMatrix::diagonal((0..3).map(|i| BigInt::from(4) * &self.t[(i, i)]).collect());
        if gram_sum(0..32) != four_diag {
            return fail("sign-flipped copies do not diagonalise the Gram sum");
        }
        let c2 = &self.c * &self.c;
        if gram_sum(0..36) != IntMatrix::identity(3).scale(&c2) {
            return fail("four-square completion does not reach c^2 times the identity");
        }
        let max_t = (0..3).map(|i| self.t[(i, i)].clone()).max().unwrap();
        if c2 < BigInt::from(4) * max_t {
            return fail("c is below 2 sqrt(max T_ii)");
        }
        if let Err(v) = self.device.validate() {
            return Err(Error::InvalidDevice(v.to_string()));
        }
        Ok(())
    }
}

fn sign_flip(k: usize) -> IntMatrix {
    let mut d = vec![BigInt::one(); 3];
    d[k] = -BigInt::one();
    IntMatrix::diagonal(d)
}

/// Builds the 9-outcome, 15-dimensional device from eight 3x3 integer
/// generators.
///
/// When every generator is zero, `T = 0` and the scale `4/(5c)` would be
/// undefined; `c` is then taken as 1, which keeps the completion identity.
pub fn build_kraus_from_mmp(inst: &MmpInstance) -> Result<ReductionCertificate> {
    if inst.len() != SOURCE_GENERATORS || inst.dim() != SOURCE_DIM {
        return Err(Error::InvalidInstance(format!(
            "the reduction takes exactly {SOURCE_GENERATORS} generators of size {SOURCE_DIM}x{SOURCE_DIM}, got {} of size {}x{}",
            inst.len(),
            inst.dim(),
            inst.dim()
        )));
    }
    let base = inst
        .integer_generators()
        .ok_or_else(|| Error::InvalidInstance("the reduction needs integer generators".into()))?;

    let t = base
        .iter()
        .fold(IntMatrix::zeros(3, 3), |acc, g| acc.add(&g.gram()).expect("3x3"));
    let max_t = (0..3).map(|i| t[(i, i)].clone()).max().expect("three diagonal entries");
    let c = ceil_sqrt(&(BigInt::from(4) * &max_t))?.max(BigInt::one());
    let c2 = &c * &c;

    let mut extended = base.clone();
    for k in 0..3 {
        let p = sign_flip(k);
        extended.extend(base.iter().map(|g| g.mul(&p).expect("3x3")));
    }
    let mut completion: [Vec<BigInt>; 4] = Default::default();
    for i in 0..3 {
        let rest = &c2 - BigInt::from(4) * &t[(i, i)];
        let squares = four_square_decompose(&rest)?;
        for (slot, s) in completion.iter_mut().zip(squares) {
            slot.push(s);
        }
    }
    extended.extend(completion.into_iter().map(IntMatrix::diagonal));
    extended.extend((0..4).map(|_| IntMatrix::zeros(3, 3)));

    let scale = BigRational::new(BigInt::from(4), BigInt::from(5) * &c);
    let mut kraus = Vec::with_capacity(9);
    for j in 0..SOURCE_GENERATORS {
        let blocks: Vec<&IntMatrix> = (0..5).map(|b| &extended[j + 8 * b]).collect();
        let column = IntMatrix::vstack(&blocks)?.to_rational().scale(&scale);
        kraus.push(column.embed(DEVICE_DIM, DEVICE_DIM, 0, 0)?);
    }
    let three_fifths = BigRational::new(3.into(), 5.into());
    kraus.push(RatMatrix::identity(3).scale(&three_fifths).direct_sum(&RatMatrix::identity(12)));

    let cert = ReductionCertificate {
        t,
        c,
        extended_generators: extended,
        device: QuantumDevice::new(kraus)?,
    };
    debug_assert!(cert.check().is_ok());
    Ok(cert)
}

/// Drops every padding outcome (9), keeping the order of the rest.
pub fn map_word_q_to_m(word: &Word) -> Result<Word> {
    word.check_range(PADDING_OUTCOME)?;
    Ok(Word::new(
        word.indices().iter().copied().filter(|&j| j != PADDING_OUTCOME).collect(),
    ))
}

/// Lower bound on nonzero outcome probabilities.
///
/// With `A_j = Z_j / N_j` for integer `Z_j`, every length-`n` probability on
/// the maximally mixed input is either 0 or at least `delta^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityGap {
    /// `N_j`: least common multiple of the denominators of `A_j`.
    pub denominators: Vec<BigInt>,
    /// `N = max_j N_j²`.
    pub n: BigInt,
    /// `1 / (d N)`.
    pub delta: Rational,
}

pub fn compute_probability_gap(device: &QuantumDevice) -> ProbabilityGap {
    let denominators: Vec<BigInt> = device
        .kraus()
        .iter()
        .map(|a| lcm_of_denominators(a.entries()))
        .collect();
    let n = denominators
        .iter()
        .map(|x| x * x)
        .max()
        .unwrap_or_else(BigInt::one);
    let delta = Rational::new(BigInt::one(), BigInt::from(device.dim()) * &n);
    ProbabilityGap { denominators, n, delta }
}

/// Whether the upper-left `3x3` block of a device-sized product vanishes.
pub fn encoded_block_is_zero(product: &RatMatrix) -> bool {
    (0..SOURCE_DIM).all(|r| (0..SOURCE_DIM).all(|c| product[(r, c)].is_zero()))
}
