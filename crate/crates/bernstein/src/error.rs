//! Crate-wide error type.

/// Errors produced by the numerical operations in this crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An argument is outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// The gamma function was requested at a nonpositive integer.
    #[error("gamma pole at nonpositive integer z = {0}")]
    GammaPole(f64),

    /// Root bracketing failed: f(lo) and f(hi) do not have opposite signs.
    #[error("no sign change on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    /// A function evaluation returned NaN or infinity.
    #[error("non-finite value encountered at x = {0}")]
    NonFinite(f64),

    /// The quadrature grid is inconsistent with the requested interval.
    #[error("grid error: {0}")]
    Grid(String),

    /// Monomial conversion requested beyond the conditioning cap.
    #[error("degree {0} exceeds the monomial conversion cap of {max}", max = crate::polybase::MONOMIAL_DEGREE_CAP)]
    DegreeTooLarge(usize),

    /// An iterative solver hit its iteration cap without a usable iterate.
    #[error("solver stalled after {iterations} iterations")]
    Stalled { iterations: usize },

    /// Quasinorm exponents below 1 are rejected by the solvers.
    #[error("p < 1 unsupported (got p = {0}): solvers require p >= 1")]
    UnsupportedExponent(f64),

    /// A dilation or degree computation exceeded the representable range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Quadrature failed to reach its accuracy target.
    #[error("quadrature error: {0}")]
    Quadrature(String),

    /// The weighted-L1 subproblem reported infeasibility (signals grid corruption).
    #[error("L1 linear program infeasible")]
    LpInfeasible,
}

pub type Result<T> = std::result::Result<T, Error>;
