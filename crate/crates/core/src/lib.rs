//! Exact computation of lambda-analogue r-Stirling numbers of the first kind
//! and their relatives (lambda-Stirling, unsigned brackets, higher-order
//! Daehee numbers and polynomials, r-Whitney and Whitney-type numbers),
//! together with mechanical verification of the identities connecting them.
//!
//! Every value is computed over exact rationals or over the polynomial ring
//! `Q[lam, r]`, so identity checks are exact equalities — symbolic mode
//! verifies an identity for *all* real parameters at once. Each family has
//! three independent routes: a row recurrence (the primary path), a truncated
//! generating-function path, and a brute-force expansion oracle that
//! multiplies the defining linear factors; the identity suite and the tests
//! hold the routes against one another.

pub mod binomial;
pub mod cli;
pub mod families;
pub mod identities;
pub mod lampoly;
pub mod rational;
pub mod scalar;
pub mod series;
pub mod xpoly;

pub use binomial::{binomial, factorial};
pub use families::{
    daehee_number, daehee_polynomial, falling_factorial_lambda, r_stirling1_lambda,
    stirling1_classical, stirling1_lambda, stirling2_classical, unsigned_r_stirling1_lambda,
    whitney_number, whitney_type_t, FamilyKind, FamilyParams, ParamValue, Triangle, TriangleCache,
};
pub use identities::{
    check, default_samples, run_suite, Failure, IdentityCheck, IdentityId, IdentityReport, Mode,
    Sample, Status, SuiteConfig,
};
pub use lampoly::LamRPoly;
pub use rational::Rational;
pub use scalar::Scalar;
pub use series::{daehee_gf, lambda_binomial_series, log1p_over_lambda, r_stirling_gf, TruncatedSeries};
pub use xpoly::{expand_linear_product, XPoly};

/// Errors surfaced by parsing, parameter validation and identity dispatch.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid rational '{0}' (expected p/q or p)")]
    ParseRational(String),
    #[error("invalid polynomial '{0}'")]
    ParsePoly(String),
    #[error("{0}")]
    InvalidParams(String),
    #[error("{0}")]
    InvalidCheck(String),
    #[error("unknown identity '{0}'")]
    UnknownIdentity(String),
}
