//! Discrete complex Chebyshev approximation on the grid nodes by Lawson's
//! multiplicative reweighting, with a two-sided certificate: the weighted
//! least-squares value is a lower bound on the discrete minimax error and
//! the node maximum is the attained upper bound.

use num_complex::Complex64;

use crate::error::Result;

use super::discrete::{residuals, weighted_lsq, DiscreteSetup};
use super::{ApproxProblem, ApproxResult, Diagnostics};

const MAX_ITERATIONS: usize = 500;
const CERT_TOL: f64 = 1e-8;

pub(crate) fn minimax_complex(problem: &ApproxProblem) -> Result<ApproxResult> {
    let setup = DiscreteSetup::for_sup(problem);
    let fvals = setup.target_values(problem)?;
    let design = setup.design_matrix();
    let n = setup.nodes.len();

    // Lawson weights start uniform and stay normalized to sum 1; for any
    // such weights the weighted-LSQ optimum is a lower bound on the
    // discrete minimax error.
    let mut w = vec![1.0 / n as f64; n];
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    let mut best_lb: f64 = 0.0;
    let mut converged = false;
    let mut iterations = 0;
    for iter in 0..MAX_ITERATIONS {
        iterations = iter + 1;
        let coeffs = weighted_lsq(&design, &w, &fvals)?;
        let r = residuals(&design, &coeffs, &fvals);
        let moduli: Vec<f64> = r.iter().map(|v| v.norm()).collect();
        let ub = moduli.iter().fold(0.0f64, |m, &v| m.max(v));
        let lb = moduli
            .iter()
            .zip(&w)
            .map(|(&m, &wi)| wi * m * m)
            .sum::<f64>()
            .sqrt();
        best_lb = best_lb.max(lb);
        if best.as_ref().map_or(true, |(e, _)| ub < *e) {
            best = Some((ub, coeffs));
        }
        if ub <= best_lb * (1.0 + CERT_TOL) || ub <= 1e-14 {
            converged = true;
            break;
        }
        // Lawson update: w <- w * |r|, renormalized.
        let total: f64 = moduli.iter().zip(&w).map(|(&m, &wi)| wi * m).sum();
        if total <= 0.0 {
            converged = true;
            break;
        }
        for (wi, &m) in w.iter_mut().zip(&moduli) {
            *wi = (*wi * m / total).max(1e-300);
        }
    }

    let (mut error, mut coeffs) = best.expect("at least one Lawson iterate");
    // The zero polynomial is always feasible with error max |f|; an
    // unconverged reweighting must never report worse than that.
    let zero_error = fvals.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    if zero_error < error {
        error = zero_error;
        coeffs = vec![Complex64::new(0.0, 0.0); setup.basis_size];
    }
    let mut diag = Diagnostics::new(iterations, converged);
    diag.lower_bound = Some(best_lb);
    Ok(ApproxResult {
        error,
        polynomial: setup.assemble(&coeffs),
        diagnostics: diag,
        discretized: true,
    })
}
