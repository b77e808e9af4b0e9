//! Best L_p approximation for finite p other than 1 and 2, by damped
//! iteratively reweighted least squares on the quadrature nodes.

use crate::error::Result;

use super::discrete::{residuals, weighted_lsq, DiscreteSetup};
use super::{ApproxProblem, ApproxResult, Diagnostics};

const MAX_ITERATIONS: usize = 200;
const REL_TOL: f64 = 1e-10;

pub(crate) fn best_lp(problem: &ApproxProblem) -> Result<ApproxResult> {
    let p = problem.pnorm.value();
    let setup = DiscreteSetup::from_problem(problem);
    let fvals = setup.target_values(problem)?;
    let design = setup.design_matrix();
    let w = &setup.weights;

    let lp_error = |r: &[num_complex::Complex64]| -> f64 {
        r.iter()
            .zip(w)
            .map(|(ri, &wi)| wi * ri.norm().powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    };

    // Start from the L2 solution and damp the weight updates: the fixed
    // point has u_i ~ |r_i|^(p-2), but the undamped map diverges for large
    // p. Damping factor 1/(p-1) gives the standard contractive update with
    // effective exponent (p-2)/(p-1) per step.
    let mut coeffs = weighted_lsq(&design, w, &fvals)?;
    let mut u = vec![1.0f64; setup.nodes.len()];
    let gamma = 1.0 / (p - 1.0);
    let mut prev = lp_error(&residuals(&design, &coeffs, &fvals));
    let mut best = (prev, coeffs.clone());
    let mut iterations = 0;
    let mut converged = false;
    for iter in 0..MAX_ITERATIONS {
        iterations = iter + 1;
        let r = residuals(&design, &coeffs, &fvals);
        // Normalize |r| by its maximum before powering so large p cannot
        // underflow the weights to zero across the board.
        let rmax = r.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        if rmax <= 1e-300 {
            converged = true;
            break;
        }
        for (ui, ri) in u.iter_mut().zip(&r) {
            let rel = (ri.norm() / rmax).max(1e-150);
            *ui = (ui.powf(1.0 - gamma) * rel.powf((p - 2.0) * gamma)).max(1e-280);
        }
        let lw: Vec<f64> = w.iter().zip(&u).map(|(&wi, &ui)| wi * ui).collect();
        coeffs = weighted_lsq(&design, &lw, &fvals)?;
        let err = lp_error(&residuals(&design, &coeffs, &fvals));
        if err < best.0 {
            best = (err, coeffs.clone());
        }
        if (prev - err).abs() <= REL_TOL * err.max(1e-300) {
            converged = true;
            break;
        }
        prev = err;
    }

    let (error, coeffs) = best;
    let diag = Diagnostics::new(iterations, converged);
    Ok(ApproxResult {
        error,
        polynomial: setup.assemble(&coeffs),
        diagnostics: diag,
        discretized: false,
    })
}
