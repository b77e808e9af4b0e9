//! Best polynomial approximation E_n(f, L_p([-a, a])): continuum Remez
//! exchange for smooth real sup-norm targets, an exact discrete exchange for
//! grid sup norms of real targets, Lawson reweighting for complex grid sup
//! norms, Legendre projection for L2, a dual exchange for L1, and damped
//! IRLS for the remaining finite exponents.

mod discrete;
mod irls;
mod l1;
mod l2;
mod lawson;
mod remez;

pub use remez::remez_linf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{PNorm, QuadratureGrid};
use crate::polybase::Polynomial;
use crate::target::TargetFn;

/// Whether the solver may halve the problem by even symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryHint {
    Even,
    None,
}

/// One best-approximation instance.
pub struct ApproxProblem<'a> {
    pub target: &'a dyn TargetFn,
    pub interval: (f64, f64),
    pub degree: usize,
    pub pnorm: PNorm,
    pub grid: QuadratureGrid,
    pub symmetry_hint: SymmetryHint,
    /// Forces the sup-norm solver onto the declared grid even for real
    /// targets. Required for targets oscillating infinitely often near 0,
    /// where no continuum algorithm sees all extrema; grid values are honest
    /// lower bounds that grow under refinement.
    pub discretize_sup: bool,
}

impl<'a> ApproxProblem<'a> {
    pub fn new(
        target: &'a dyn TargetFn,
        interval: (f64, f64),
        degree: usize,
        pnorm: PNorm,
    ) -> Result<Self> {
        let grid = QuadratureGrid::default_for(interval)?;
        Ok(Self {
            target,
            interval,
            degree,
            pnorm,
            grid,
            symmetry_hint: if target.is_even() {
                SymmetryHint::Even
            } else {
                SymmetryHint::None
            },
            discretize_sup: false,
        })
    }

    pub(crate) fn even_reduced(&self) -> bool {
        let (lo, hi) = self.interval;
        self.symmetry_hint == SymmetryHint::Even && self.target.is_even() && lo == -hi
    }

    /// Dispatches on p and target shape.
    pub fn solve(&self) -> Result<ApproxResult> {
        if self.grid.interval() != self.interval {
            return Err(Error::Grid(
                "grid interval does not match the problem interval".into(),
            ));
        }
        match self.pnorm {
            PNorm::Infinity => {
                if !self.target.is_real() {
                    lawson::minimax_complex(self)
                } else if self.discretize_sup {
                    remez::discrete_exchange(self)
                } else {
                    remez::remez_continuum(self)
                }
            }
            PNorm::Finite(p) => {
                if p == 2.0 {
                    l2::project_l2(self)
                } else if p == 1.0 {
                    l1::best_l1(self)
                } else {
                    irls::best_lp(self)
                }
            }
        }
    }
}

/// Residual diagnostics attached to a solve.
#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    /// Signed residual peaks (x, r(x)) for real sup-norm solves.
    pub alternation_points: Vec<(f64, f64)>,
    /// Residual sign-change locations for real L1 solves.
    pub sign_changes: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Certified lower bound on the discrete minimax error (grid sup-norm
    /// solvers only: the leveled reference value or the weighted-LSQ bound).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<f64>,
    /// Independent re-computation of the error by a second route when one
    /// exists (L2: direct residual quadrature against Pythagoras).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<f64>,
}

impl Diagnostics {
    pub(crate) fn new(iterations: usize, converged: bool) -> Self {
        Self {
            alternation_points: Vec::new(),
            sign_changes: Vec::new(),
            iterations,
            converged,
            lower_bound: None,
            cross_check: None,
        }
    }
}

/// The attained infimum: error value, minimizing polynomial, diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct ApproxResult {
    pub error: f64,
    pub polynomial: Polynomial,
    pub diagnostics: Diagnostics,
    /// True when the error is a grid value rather than a quadrature value.
    pub discretized: bool,
}
