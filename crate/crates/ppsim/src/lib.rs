//! Phase-sensitive overlap simulation for brick-wall circuits of
//! parity-preserving two-qubit gates.
//!
//! The simulator computes c = ⟨ψf|U|ψi⟩ for a circuit U of nearest-neighbor
//! parity-preserving gates between computational-basis product states. Every
//! gate is mapped to a Gaussian fermionic tensor plus a quartic correction
//! whose weight γ measures how far the gate is from a Matchgate. The whole
//! circuit then collapses into one antisymmetric generating matrix M, and c
//! becomes a sum of Pfaffians of hole-punched principal minors of M: one term
//! per subset of non-Matchgate sites. Matchgate circuits need a single
//! Pfaffian; each non-Matchgate adds one binary choice, with order-k
//! truncation, reusable per-order Pfaffian sums across parameter sweeps, and
//! exact particle-number cutoffs for number-conserving circuits.
//!
//! Module map:
//! - [`pfaffian`]: stable Pfaffian kernel and principal-minor extraction.
//! - [`gates`]: gate construction, classification, and random sampling.
//! - [`circuits`]: brick-wall circuit type, builders, and the text format.
//! - [`oracle`]: dense statevector reference simulator.
//! - [`fermionize`]: gate → tensor map and network assembly.
//! - [`decomp`]: the γ- and ξ-decompositions of a gate into Gaussians.
//! - [`contract`]: the expansion engine, truncation, sweeps, cutoffs.
//! - [`cli`]: command-line harness.

pub mod circuits;
pub mod cli;
pub mod contract;
pub mod decomp;
pub mod fermionize;
pub mod gates;
pub mod oracle;
pub mod pfaffian;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("antisymmetric matrices must have even dimension, got {0}")]
    OddDimension(usize),
    #[error("matrix is not antisymmetric: |A[{i}][{j}] + A[{j}][{i}]| = {deviation:.3e}")]
    NotAntisymmetric { i: usize, j: usize, deviation: f64 },
    #[error("matrix entry ({i},{j}) is not finite")]
    NonFiniteEntry { i: usize, j: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("mode indices must be strictly increasing")]
    UnsortedModes,
    #[error("gate block is not unitary: deviation {deviation:.3e}")]
    NonUnitaryBlock { deviation: f64 },
    #[error(
        "unsupported gate: |G(00,00)| = {magnitude:.3e} is too small; such gates \
         need a different tensor representation (pre-compose with a basis change)"
    )]
    UnsupportedGate { magnitude: f64 },
    #[error("rejection sampling exhausted after {attempts} attempts")]
    SamplingExhausted { attempts: u64 },
    #[error("invalid boundary: {reason}")]
    InvalidBoundary { reason: String },
    #[error("invalid circuit layout: {reason}")]
    InvalidLayout { reason: String },
    #[error("job estimate {estimate} cost units exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("{l} qubits exceeds the dense-simulator cap of {cap}")]
    ResourceLimit { l: usize, cap: usize },
    #[error("two-term Gaussian split is singular for this gate: {reason}")]
    SingularSplit { reason: String },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Shorthand result type used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
