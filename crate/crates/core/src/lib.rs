//! Exact decision and search procedures around matrix mortality and
//! sequential measurement occurrence.
//!
//! * [`exact`]: arbitrary-precision scalars and dense matrices.
//! * [`mortality`]: bounded zero-product search for arbitrary generators and
//!   a complete decider for non-negative ones.
//! * [`reduction`]: turns eight 3x3 integer matrices into a 9-outcome,
//!   15-dimensional rational Kraus device with the same zero products.
//! * [`measurement`]: exact quantum and classical measurement simulation,
//!   empty-port search and matrix-product amplitudes.
//! * [`pcp`]: encoding Post correspondence instances as matrix semigroups.

pub mod error;
pub mod exact;
pub mod measurement;
pub mod mortality;
pub mod pcp;
pub mod reduction;
mod search;
mod word;

pub use error::{Error, Result};
pub use exact::{BigInt, IntMatrix, Matrix, RatMatrix, Rational};
pub use measurement::{ClassicalDevice, CmopVerdict, EmptyPortReport, MpsFamily, State};
pub use mortality::{MmpInstance, MortalityVerdict, SearchLimits};
pub use pcp::PcpInstance;
pub use reduction::{QuantumDevice, ReductionCertificate};
pub use word::Word;
