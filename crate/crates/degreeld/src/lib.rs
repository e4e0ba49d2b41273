//! Rate functions and variational problems for degree distributions of
//! sparse random graphs.
//!
//! A sparse Erdős–Rényi graph G(n, β/n) has an empirical degree distribution
//! that concentrates around the Poisson(β) law. This crate computes the
//! large-deviation cost of seeing something else instead, and everything
//! that hangs off that computation:
//!
//! * [`measures`]: sparse probability measures on the nonnegative integers,
//!   the degree metric `d(μ, ν) = Σ_{i≥1} i·|μ_i − ν_i|`, relative entropy,
//!   and the rate function `I(μ)`.
//! * [`statistic`] and [`tilted`]: degree statistics `f`, the tilted family
//!   `σ_{θ,f}`, and the scalar variational problem whose value `J(f)` is the
//!   limiting log-partition function of the degree-based exponential random
//!   graph model with weight `exp(n·μ(f))`.
//! * [`penalty`]: closed forms and phase structure for the sparsity penalty
//!   statistic `f = γ·1{i ≥ 1}`, including the fixed-point analysis that
//!   separates one-phase from two-phase parameter regions.
//! * [`combinatorics`]: degree sequences vs. degree frequency vectors,
//!   realizability (Erdős–Gallai), counting bounds, and exact enumeration
//!   over all graphs on up to eight vertices.
//! * [`sampler`]: seed-deterministic edge-flip Metropolis dynamics and an
//!   importance-sampling estimator for finite-n log-partition functions,
//!   used to watch the predicted concentration happen.
//! * [`verify`]: the acceptance checks wired into both the test suite and
//!   the `degreeld verify` subcommand.
//!
//! Numeric ground rules, used throughout: series are summed in ascending
//! index order with compensated (Kahan) accumulation, infinite sums are cut
//! at an analytic tail bound and renormalized, and everything downstream of
//! a seed is bit-deterministic for a fixed build.

#![forbid(unsafe_code)]

pub mod combinatorics;
pub mod measures;
pub mod numeric;
pub mod penalty;
pub mod sampler;
pub mod statistic;
pub mod tilted;
pub mod verify;

pub use measures::SparseMeasure;
pub use penalty::{PenaltyModel, PhaseClassification, Regime};
pub use sampler::{ChainConfig, ConcentrationReport, Graph, SampleSummary, TraceRow};
pub use statistic::DegreeStatistic;
pub use tilted::{SolveOptions, VariationalSolution};

/// Errors carry the failure class in their name; the CLI prints `Display`
/// and exits 1, so the first word is the stable, grep-able part.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument left the mathematical domain of the operation.
    #[error("Domain: {0}")]
    Domain(String),

    /// The statistic grows faster than linearly, so the tilted normalizer
    /// diverges for every θ > 1 and the variational problem has value −∞.
    #[error("DegenerateStatistic: {0}")]
    DegenerateStatistic(String),

    /// The objective never turned upward within the search budget.
    #[error("NoConfinement: objective still decreasing at theta = {theta_max:.3e}")]
    NoConfinement { theta_max: f64 },

    /// Exhaustive enumeration was asked for more vertices than the cap.
    #[error("TooLarge: n = {n} exceeds the enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    /// The requested construction needs more vertices than were provided.
    #[error("NTooSmall: {0}")]
    NTooSmall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
