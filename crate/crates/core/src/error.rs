use std::fmt;

use thiserror::Error;

/// Runtime-checked hypotheses of the debordering pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// Essential variables never exceed the number of summands.
    EssentialVariables,
    /// A local part of degree `d >= r - 1` is divisible by `base^(d - r + 1)`.
    LocalDivisibility,
    /// Grouping summands by projective base yields convergent partial sums.
    LocalPartition,
    /// Derivative certificates converge to the expected cofactor.
    DerivativeCertificate,
    /// Staircase structure of a diagonalized decomposition.
    Diagonalization,
}

impl Lemma {
    pub fn tag(self) -> &'static str {
        match self {
            Lemma::EssentialVariables => "essential-variables",
            Lemma::LocalDivisibility => "local-divisibility",
            Lemma::LocalPartition => "local-partition",
            Lemma::DerivativeCertificate => "derivative-certificate",
            Lemma::Diagonalization => "diagonalization",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("coefficient of {monomial} has a pole of order {order} at eps = 0")]
    PoleAtZero { monomial: String, order: i64 },

    #[error("valuation of zero is undefined")]
    ZeroValuation,

    #[error("matrix is singular")]
    Singular,

    #[error("interpolation nodes are not pairwise distinct")]
    DuplicateNodes,

    #[error("linear form is identically zero")]
    ZeroForm,

    #[error("every candidate reduces to zero modulo the pivots")]
    NoPivot,

    #[error("derivative of the limit vanishes")]
    ZeroDerivative,

    #[error("weighted power sum cancels identically")]
    DegenerateSum,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal assertion violated: {0}")]
    AssertionViolation(String),

    #[error("runtime check `{lemma}` failed: {message}")]
    LemmaCheckFailed {
        lemma: Lemma,
        message: String,
        witness: Option<String>,
    },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("retry limit exceeded: {0}")]
    RetryLimit(String),
}

impl Error {
    pub(crate) fn lemma(lemma: Lemma, message: impl Into<String>, witness: Option<String>) -> Self {
        Error::LemmaCheckFailed {
            lemma,
            message: message.into(),
            witness,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
