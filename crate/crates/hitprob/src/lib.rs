//! Computations in the quotient `QP_n = P_n / A⁺·P_n` of the polynomial
//! algebra `P = F2[t1..th]` by the action of the mod-2 Steenrod squares.
//!
//! The library produces admissible-monomial bases of the cohit modules
//! `QP_n`, stratifies them by weight vector, presents single weight strata
//! as quotients with an explicit reducer, computes Kameko squaring maps,
//! and solves for symmetric-group and general-linear invariants of the
//! strata. Everything is exact linear algebra over GF(2) on bit-packed
//! matrices.

pub mod cache;
pub mod fixture;
pub mod gf2;
pub mod invariants;
pub mod kameko;
pub mod monomial;
pub mod report;
pub mod solver;
pub mod steenrod;
pub mod tables;

pub use monomial::{
    alpha, compare, deg_of_weight, enumerate_monomials, is_spike, minimal_spike, mu,
    mu_decomposition, HomogeneousPolynomial, Monomial, WeightVector,
};
pub use solver::{
    cohit_basis, cohit_by_weight, omega_presentation, positive_zero_split, singer_hit_filter,
    stratify, wood_vanishing, CohitBasis, QuotientPresentation, SolverOptions,
};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("no spike of degree {degree} in {vars} variables (mu = {mu} > {vars})")]
    NoSpike { degree: u64, vars: usize, mu: u64 },
    #[error("filter inapplicable: {0}")]
    FilterInapplicable(String),
    #[error("outside the weight stratum: {0}")]
    OutsideStratum(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
