//! Weighted L1 best approximation on quadrature nodes.
//!
//! Real targets are solved exactly by a dual exchange on interpolation sets:
//! the L1 optimum interpolates the target at (basis size) nodes, optimality
//! is certified by dual variables in [-1, 1], and violated nodes are swapped
//! in via a weighted-median line search. Complex targets use a smoothed
//! modulus (epsilon-IRLS) instead.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::discrete::{residuals, sign_change_locations, weighted_lsq, DiscreteSetup};
use super::{ApproxProblem, ApproxResult, Diagnostics};

const MAX_PIVOTS: usize = 2000;
const DUAL_TOL: f64 = 1e-10;

pub(crate) fn best_l1(problem: &ApproxProblem) -> Result<ApproxResult> {
    let setup = DiscreteSetup::from_problem(problem);
    if problem.target.is_real() {
        real_exchange(problem, setup)
    } else {
        complex_smoothed(problem, setup)
    }
}

fn real_exchange(problem: &ApproxProblem, setup: DiscreteSetup) -> Result<ApproxResult> {
    let f: Vec<f64> = setup
        .target_values(problem)?
        .iter()
        .map(|v| v.re)
        .collect();
    let design = setup.design_matrix();
    let w = &setup.weights;
    let m = setup.nodes.len();
    let b = setup.basis_size;
    if m < b + 1 {
        return Err(Error::Grid("grid too coarse for the requested degree".into()));
    }

    // Interpolation set: nodes nearest the sign-change pattern of the
    // optimal residual for smooth targets (second-kind Chebyshev zeros).
    let (dlo, dhi) = (setup.nodes[0], setup.nodes[m - 1]);
    let mut z: Vec<usize> = (1..=b)
        .map(|j| {
            let t = (std::f64::consts::PI * j as f64 / (b + 1) as f64).cos();
            let x = 0.5 * (dlo + dhi) + 0.5 * (dhi - dlo) * t;
            nearest(&setup.nodes, x)
        })
        .collect();
    z.sort_unstable();
    z.dedup();
    let mut cursor = 0usize;
    while z.len() < b {
        if !z.contains(&cursor) {
            z.push(cursor);
        }
        cursor += 1;
    }
    z.sort_unstable();

    let mut coeffs = DVector::zeros(b);
    let mut residual = vec![0.0; m];
    let mut converged = false;
    let mut iterations = 0;
    for iter in 0..MAX_PIVOTS {
        iterations = iter + 1;
        // Interpolate at Z.
        let mut az = DMatrix::zeros(b, b);
        let mut fz = DVector::zeros(b);
        for (j, &i) in z.iter().enumerate() {
            for k in 0..b {
                az[(j, k)] = design[(i, k)];
            }
            fz[j] = f[i];
        }
        let lu = az.clone().lu();
        coeffs = lu
            .solve(&fz)
            .ok_or_else(|| Error::Domain("singular L1 interpolation set".into()))?;
        for i in 0..m {
            let mut p = 0.0;
            for k in 0..b {
                p += coeffs[k] * design[(i, k)];
            }
            residual[i] = f[i] - p;
        }
        // Dual variables theta on Z: A_Z^T (w_Z theta) = - sum_{i not in Z}
        // w_i sign(r_i) a_i; |theta| <= 1 everywhere certifies optimality.
        let mut g = DVector::zeros(b);
        for i in 0..m {
            if z.binary_search(&i).is_ok() || residual[i] == 0.0 {
                continue;
            }
            let s = w[i] * residual[i].signum();
            for k in 0..b {
                g[k] -= s * design[(i, k)];
            }
        }
        let y = az
            .transpose()
            .lu()
            .solve(&g)
            .ok_or_else(|| Error::Domain("singular L1 dual system".into()))?;
        let theta: Vec<f64> = z.iter().enumerate().map(|(j, &i)| y[j] / w[i]).collect();
        let (jstar, tmax) = theta
            .iter()
            .enumerate()
            .map(|(j, t)| (j, t.abs()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if tmax <= 1.0 + DUAL_TOL {
            converged = true;
            break;
        }
        // Descent direction: v with A_Z v = sigma e_{j*}.
        let sigma = -theta[jstar].signum();
        let mut e = DVector::zeros(b);
        e[jstar] = sigma;
        let v = az
            .lu()
            .solve(&e)
            .ok_or_else(|| Error::Domain("singular L1 pivot system".into()))?;
        let u: Vec<f64> = (0..m)
            .map(|i| {
                let mut acc = 0.0;
                for k in 0..b {
                    acc += v[k] * design[(i, k)];
                }
                acc
            })
            .collect();
        // Piecewise-linear line search over t > 0: the slope starts negative
        // (that is why we pivot) and increases by 2 w_i |u_i| at each
        // breakpoint t_i = r_i / u_i; stop at the first sign crossing.
        let mut slope = w[z[jstar]]; // the new zero at Z_{j*} contributes w|u| = w
        for i in 0..m {
            if z.binary_search(&i).is_ok() {
                continue;
            }
            if u[i] != 0.0 && residual[i] != 0.0 {
                let t = residual[i] / u[i];
                if t > 0.0 {
                    slope -= w[i] * u[i].abs();
                } else {
                    slope += w[i] * u[i].abs();
                }
            } else if u[i] != 0.0 {
                slope += w[i] * u[i].abs();
            }
        }
        let mut breaks: Vec<(f64, usize)> = (0..m)
            .filter(|&i| z.binary_search(&i).is_err() && u[i] != 0.0 && residual[i] != 0.0)
            .filter_map(|i| {
                let t = residual[i] / u[i];
                (t > 0.0).then_some((t, i))
            })
            .collect();
        breaks.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut istar = None;
        for (t, i) in breaks {
            slope += 2.0 * w[i] * u[i].abs();
            if slope >= 0.0 {
                istar = Some((t, i));
                break;
            }
        }
        let Some((_, istar)) = istar else {
            // Objective unbounded along v: cannot happen on a tiling grid
            // with positive weights; flag rather than loop.
            break;
        };
        let pos = z.binary_search(&z[jstar]).unwrap();
        z.remove(pos);
        match z.binary_search(&istar) {
            Ok(_) => break, // degenerate swap; keep current iterate
            Err(pos) => z.insert(pos, istar),
        }
    }

    let error: f64 = residual
        .iter()
        .zip(w)
        .map(|(&r, &wi)| wi * r.abs())
        .sum();
    let floor = 1e-12 * residual.iter().fold(0.0f64, |a, &r| a.max(r.abs()));
    let mut changes = sign_change_locations(&setup.nodes, &residual, floor);
    if setup.even {
        // The residual is even: mirror the sign changes to the negative half.
        let mut mirrored: Vec<f64> = changes.iter().map(|&x| -x).collect();
        mirrored.extend_from_slice(&changes);
        mirrored.sort_by(|a, b| a.partial_cmp(b).unwrap());
        changes = mirrored;
    }
    let ccoeffs: Vec<Complex64> = (0..b).map(|k| Complex64::new(coeffs[k], 0.0)).collect();
    let mut diag = Diagnostics::new(iterations, converged);
    diag.sign_changes = changes;
    Ok(ApproxResult {
        error,
        polynomial: setup.assemble(&ccoeffs),
        diagnostics: diag,
        discretized: false,
    })
}

/// Complex targets: minimize sum w_i sqrt(|r_i|^2 + eps^2) with a decreasing
/// eps schedule. Approximate (the exact complex L1 optimum is not piecewise
/// characterized the way the real one is) but smooth and reliable.
fn complex_smoothed(problem: &ApproxProblem, setup: DiscreteSetup) -> Result<ApproxResult> {
    let fvals = setup.target_values(problem)?;
    let design = setup.design_matrix();
    let w = &setup.weights;
    let scale = fvals.iter().map(|v| v.norm()).fold(0.0f64, f64::max).max(1e-300);

    let mut coeffs = weighted_lsq(&design, w, &fvals)?;
    let mut iterations = 0;
    let mut converged = false;
    let mut prev = f64::MAX;
    for k in 0..=8 {
        let eps = scale * 10f64.powi(-(k as i32 + 2));
        for _ in 0..60 {
            iterations += 1;
            let r = residuals(&design, &coeffs, &fvals);
            let lw: Vec<f64> = r
                .iter()
                .zip(w)
                .map(|(ri, &wi)| wi / (ri.norm_sqr() + eps * eps).sqrt())
                .collect();
            coeffs = weighted_lsq(&design, &lw, &fvals)?;
            let obj: f64 = residuals(&design, &coeffs, &fvals)
                .iter()
                .zip(w)
                .map(|(ri, &wi)| wi * ri.norm())
                .sum();
            if (prev - obj).abs() <= 1e-12 * obj.max(1e-300) {
                converged = true;
                prev = obj;
                break;
            }
            prev = obj;
        }
    }
    let error: f64 = residuals(&design, &coeffs, &fvals)
        .iter()
        .zip(w)
        .map(|(ri, &wi)| wi * ri.norm())
        .sum();
    let diag = Diagnostics::new(iterations, converged);
    Ok(ApproxResult {
        error,
        polynomial: setup.assemble(&coeffs),
        diagnostics: diag,
        discretized: false,
    })
}

fn nearest(nodes: &[f64], x: f64) -> usize {
    match nodes.binary_search_by(|n| n.partial_cmp(&x).unwrap()) {
        Ok(i) => i,
        Err(0) => 0,
        Err(i) if i >= nodes.len() => nodes.len() - 1,
        Err(i) => {
            if (nodes[i] - x).abs() < (x - nodes[i - 1]).abs() {
                i
            } else {
                i - 1
            }
        }
    }
}
