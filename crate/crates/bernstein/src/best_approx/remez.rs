//! Minimax approximation of real targets: a continuum Remez exchange with
//! peak refinement between grid nodes, and an exact exchange over the grid
//! nodes for discretized sup norms.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use super::discrete::DiscreteSetup;
use super::{ApproxProblem, ApproxResult, Diagnostics};

const MAX_EXCHANGES: usize = 50;
/// Relative peak spread at which the continuum exchange is leveled.
const LEVEL_TOL: f64 = 1e-10;

/// Public entry point for the classical continuum algorithm; `solve()`
/// routes real sup-norm problems here unless discretization is forced.
pub fn remez_linf(problem: &ApproxProblem) -> Result<ApproxResult> {
    if !problem.target.is_real() {
        return Err(Error::Domain(
            "continuum exchange requires a real-valued target".into(),
        ));
    }
    remez_continuum(problem)
}

pub(crate) fn remez_continuum(problem: &ApproxProblem) -> Result<ApproxResult> {
    let setup = DiscreteSetup::from_problem(problem);
    let (dlo, dhi) = if setup.even {
        (0.0, problem.interval.1)
    } else {
        problem.interval
    };
    let needed = setup.basis_size + 1;
    let eval = |x: f64| -> Result<f64> { Ok(problem.target.eval(x)?.re) };

    // Scan points: the graded grid nodes restricted to the working domain
    // (they cluster toward the origin exactly where the residual peaks
    // cluster), plus the domain endpoints when the target allows them.
    let mut scan: Vec<f64> = setup
        .nodes
        .iter()
        .copied()
        .filter(|&x| x >= dlo && x <= dhi)
        .collect();
    for endpoint in [dlo, dhi] {
        if problem.target.eval(endpoint).is_ok() {
            scan.push(endpoint);
        }
    }
    scan.sort_by(|a, b| a.partial_cmp(b).unwrap());
    scan.dedup();

    // Reference points: Chebyshev extrema of the coordinate the basis is
    // polynomial in. For even-reduced problems that is u = 2(x/a)^2 - 1, so
    // extrema in u must be pulled back through x = a sqrt((u+1)/2); extrema
    // in x would cluster quartically near u = -1 and make the first leveled
    // system catastrophically ill-conditioned at high degree.
    let mid = 0.5 * (dlo + dhi);
    let half = 0.5 * (dhi - dlo);
    let mut refs: Vec<f64> = (0..needed)
        .map(|j| {
            let u = (std::f64::consts::PI * j as f64 / (needed - 1) as f64).cos();
            if setup.even {
                dhi * (0.5 * (u + 1.0)).sqrt()
            } else {
                mid + half * u
            }
        })
        .collect();
    refs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if problem.target.eval(refs[0]).is_err() {
        // Endpoint excluded from the domain (e.g. the origin for alpha <= 0):
        // nudge onto the nearest scan point.
        refs[0] = scan[0];
    }

    let fscale = {
        let mut m: f64 = 0.0;
        for &x in &scan {
            m = m.max(eval(x)?.abs());
        }
        m.max(1e-300)
    };

    let mut best: Option<(f64, Vec<Complex64>, Vec<(f64, f64)>)> = None;
    let mut converged = false;
    let mut iterations = 0;
    for iter in 0..MAX_EXCHANGES {
        iterations = iter + 1;
        let coeffs = solve_leveled_system(&setup, &refs, &eval)?;
        let p = |x: f64| -> f64 {
            setup
                .basis_row(x)
                .iter()
                .zip(&coeffs)
                .map(|(b, c)| b * c.re)
                .sum()
        };
        let r = |x: f64| -> Result<f64> { Ok(eval(x)? - p(x)) };

        // Residual on the scan, then locally refined peaks.
        let mut rs = Vec::with_capacity(scan.len());
        for &x in &scan {
            rs.push(r(x)?);
        }
        let mut peaks = scan_peaks(&scan, &rs, &r)?;
        if peaks.iter().all(|&(_, v)| v.abs() <= 1e-13 * fscale) {
            // Zero residual: target is itself a polynomial of the class.
            let emax = peaks.iter().map(|&(_, v)| v.abs()).fold(0.0, f64::max);
            let mut diag = Diagnostics::new(iterations, true);
            diag.alternation_points = full_domain_alternation(&setup, &peaks);
            return Ok(ApproxResult {
                error: emax,
                polynomial: setup.assemble(&coeffs),
                diagnostics: diag,
                discretized: false,
            });
        }
        alternate_trim(&mut peaks, needed);
        if peaks.len() < needed {
            break; // defective exchange; report the best iterate
        }
        let emax = peaks.iter().map(|&(_, v)| v.abs()).fold(0.0, f64::max);
        let emin = peaks.iter().map(|&(_, v)| v.abs()).fold(f64::MAX, f64::min);
        if best.as_ref().map_or(true, |(e, _, _)| emax < *e) {
            best = Some((emax, coeffs.clone(), peaks.clone()));
        }
        if (emax - emin) <= LEVEL_TOL * emax {
            converged = true;
            best = Some((emax, coeffs, peaks));
            break;
        }
        refs = peaks.iter().map(|&(x, _)| x).collect();
    }

    let (error, coeffs, peaks) = best.ok_or(Error::Stalled {
        iterations: MAX_EXCHANGES,
    })?;
    let mut diag = Diagnostics::new(iterations, converged);
    diag.alternation_points = full_domain_alternation(&setup, &peaks);
    Ok(ApproxResult {
        error,
        polynomial: setup.assemble(&coeffs),
        diagnostics: diag,
        discretized: false,
    })
}

/// Iteration cap for the discrete one-point exchange; each step swaps a
/// single reference node and the leveled value is nondecreasing, so many
/// cheap steps are preferable to multi-point heuristics.
const MAX_DISCRETE_EXCHANGES: usize = 2000;
/// Certificate tolerance: stop when the node maximum exceeds the leveled
/// reference value by less than this relative amount.
const DISCRETE_CERT_TOL: f64 = 1e-9;

/// Exact minimax over the grid nodes by the classical one-point exchange:
/// solve the leveled system on the current reference, bring the worst node
/// into the reference while preserving sign alternation, repeat. The leveled
/// value is a lower bound and the node maximum an attained upper bound; the
/// exchange stops when they agree to DISCRETE_CERT_TOL.
pub(crate) fn discrete_exchange(problem: &ApproxProblem) -> Result<ApproxResult> {
    let setup = DiscreteSetup::for_sup(problem);
    let needed = setup.basis_size + 1;
    if setup.nodes.len() < needed {
        return Err(Error::Grid(format!(
            "grid has {} nodes but degree {} needs {}",
            setup.nodes.len(),
            setup.degree,
            needed
        )));
    }
    let fvals: Vec<f64> = setup
        .target_values(problem)?
        .iter()
        .map(|v| v.re)
        .collect();
    let design = setup.design_matrix();
    let fscale = fvals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);

    // Initial references: nodes nearest the Chebyshev extrema of the domain.
    let (dlo, dhi) = (setup.nodes[0], setup.nodes[setup.nodes.len() - 1]);
    let mut refs: Vec<usize> = (0..needed)
        .map(|j| {
            let x = 0.5 * (dlo + dhi)
                + 0.5
                    * (dhi - dlo)
                    * (std::f64::consts::PI * j as f64 / (needed - 1) as f64).cos();
            nearest_index(&setup.nodes, x)
        })
        .collect();
    refs.sort_unstable();
    refs.dedup();
    // Fill any collisions with unused neighbors.
    let mut cursor = 0usize;
    while refs.len() < needed {
        if !refs.contains(&cursor) {
            refs.push(cursor);
        }
        cursor += 1;
    }
    refs.sort_unstable();

    let mut residual = vec![0.0; setup.nodes.len()];
    let mut best: Option<(f64, Vec<Complex64>, Vec<usize>)> = None;
    let mut best_level: f64 = 0.0;
    let mut converged = false;
    let mut iterations = 0;
    for iter in 0..MAX_DISCRETE_EXCHANGES {
        iterations = iter + 1;
        let (coeffs, level) = solve_leveled_indices(&setup, &design, &fvals, &refs)?;
        if !level.is_finite() || coeffs.iter().any(|c| !c.re.is_finite()) {
            break; // degenerate reference; keep the best iterate
        }
        for i in 0..setup.nodes.len() {
            let mut p = 0.0;
            for (k, c) in coeffs.iter().enumerate() {
                p += c.re * design[(i, k)];
            }
            residual[i] = fvals[i] - p;
        }
        let (worst, rmax) = residual
            .iter()
            .enumerate()
            .fold((0usize, 0.0f64), |(bi, bv), (i, r)| {
                if r.abs() > bv {
                    (i, r.abs())
                } else {
                    (bi, bv)
                }
            });
        best_level = best_level.max(level.abs());
        if best.as_ref().map_or(true, |(e, _, _)| rmax < *e) {
            best = Some((rmax, coeffs, refs.clone()));
        }
        if rmax <= level.abs() * (1.0 + DISCRETE_CERT_TOL) + 1e-13 * fscale {
            converged = true;
            break;
        }
        if refs.binary_search(&worst).is_ok() {
            break; // worst node already referenced: roundoff floor reached
        }
        // One-point exchange preserving alternation. Reference j carries the
        // residual sign (-1)^j sign(level); the incoming node replaces the
        // neighbor of matching sign, or shifts the whole set past an end.
        let sgn_at = |j: usize| -> f64 {
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            s * level.signum()
        };
        let incoming = residual[worst].signum();
        if worst < refs[0] {
            if incoming == sgn_at(0) {
                refs[0] = worst;
            } else {
                refs.pop();
                refs.insert(0, worst);
            }
        } else if worst > refs[needed - 1] {
            if incoming == sgn_at(needed - 1) {
                refs[needed - 1] = worst;
            } else {
                refs.remove(0);
                refs.push(worst);
            }
        } else {
            let pos = refs.partition_point(|&i| i < worst);
            // refs[pos-1] < worst < refs[pos]; exactly one neighbor matches.
            if incoming == sgn_at(pos - 1) {
                refs[pos - 1] = worst;
            } else {
                refs[pos] = worst;
            }
        }
    }

    let (error, coeffs, final_refs) = best.ok_or(Error::Stalled {
        iterations: MAX_DISCRETE_EXCHANGES,
    })?;
    for i in 0..setup.nodes.len() {
        let mut p = 0.0;
        for (k, c) in coeffs.iter().enumerate() {
            p += c.re * design[(i, k)];
        }
        residual[i] = fvals[i] - p;
    }
    let peaks: Vec<(f64, f64)> = final_refs
        .iter()
        .map(|&i| (setup.nodes[i], residual[i]))
        .collect();
    let mut diag = Diagnostics::new(iterations, converged);
    diag.lower_bound = Some(best_level);
    diag.alternation_points = full_domain_alternation(&setup, &peaks);
    Ok(ApproxResult {
        error,
        polynomial: setup.assemble(&coeffs),
        diagnostics: diag,
        discretized: true,
    })
}

/// Leveled system on node indices: rows come straight from the design
/// matrix. Returns the coefficients and the signed level h with
/// residual (-1)^j h at reference j. Full-pivot LU for robustness against
/// near-duplicate reference rows on strongly graded grids.
fn solve_leveled_indices(
    setup: &DiscreteSetup,
    design: &DMatrix<f64>,
    fvals: &[f64],
    refs: &[usize],
) -> Result<(Vec<Complex64>, f64)> {
    let m = refs.len();
    let b = setup.basis_size;
    debug_assert_eq!(m, b + 1);
    let mut a = DMatrix::zeros(m, m);
    let mut rhs = DVector::zeros(m);
    for (j, &i) in refs.iter().enumerate() {
        for k in 0..b {
            a[(j, k)] = design[(i, k)];
        }
        a[(j, b)] = if j % 2 == 0 { 1.0 } else { -1.0 };
        rhs[j] = fvals[i];
    }
    let sol = a
        .full_piv_lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Domain("singular exchange system".into()))?;
    Ok((
        (0..b).map(|k| Complex64::new(sol[k], 0.0)).collect(),
        sol[b],
    ))
}

/// Solves the leveled interpolation system
/// sum_k c_k phi_k(x_j) + (-1)^j h = f(x_j) at the reference points.
fn solve_leveled_system(
    setup: &DiscreteSetup,
    refs: &[f64],
    eval: &dyn Fn(f64) -> Result<f64>,
) -> Result<Vec<Complex64>> {
    let m = refs.len();
    let b = setup.basis_size;
    debug_assert_eq!(m, b + 1);
    let mut a = DMatrix::zeros(m, m);
    let mut rhs = DVector::zeros(m);
    for (j, &x) in refs.iter().enumerate() {
        let row = setup.basis_row(x);
        for (k, v) in row.iter().enumerate() {
            a[(j, k)] = *v;
        }
        a[(j, b)] = if j % 2 == 0 { 1.0 } else { -1.0 };
        rhs[j] = eval(x)?;
    }
    let sol = a
        .full_piv_lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Domain("singular exchange system".into()))?;
    Ok((0..b).map(|k| Complex64::new(sol[k], 0.0)).collect())
}

/// Local extrema of the residual along the scan, each refined by golden
/// section between its neighbors.
fn scan_peaks(
    scan: &[f64],
    rs: &[f64],
    r: &dyn Fn(f64) -> Result<f64>,
) -> Result<Vec<(f64, f64)>> {
    let n = scan.len();
    let mut peaks = Vec::new();
    for i in 0..n {
        let is_end = i == 0 || i == n - 1;
        let interior_extremum = !is_end
            && ((rs[i] >= rs[i - 1] && rs[i] >= rs[i + 1])
                || (rs[i] <= rs[i - 1] && rs[i] <= rs[i + 1]));
        if !(is_end || interior_extremum) {
            continue;
        }
        let lo = scan[i.saturating_sub(1)];
        let hi = scan[(i + 1).min(n - 1)];
        let sign = if rs[i] >= 0.0 { 1.0 } else { -1.0 };
        let (x, v) = golden_max(&|x| Ok(sign * r(x)?), lo, hi)?;
        peaks.push((x, sign * v));
    }
    peaks.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    peaks.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-15 * (1.0 + b.0.abs()));
    Ok(peaks)
}

/// Golden-section maximization of g on [lo, hi].
fn golden_max(g: &dyn Fn(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<(f64, f64)> {
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut gc = g(c)?;
    let mut gd = g(d)?;
    for _ in 0..80 {
        if (b - a).abs() < 1e-14 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INVPHI * (b - a);
            gc = g(c)?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INVPHI * (b - a);
            gd = g(d)?;
        }
    }
    let x = 0.5 * (a + b);
    // The true peak may sit exactly at an endpoint of the original window.
    let mut bestx = x;
    let mut bestv = g(x)?;
    for cand in [lo, hi] {
        if let Ok(v) = g(cand) {
            if v > bestv {
                bestv = v;
                bestx = cand;
            }
        }
    }
    Ok((bestx, bestv))
}

/// Merges same-sign neighbors (keeping the larger) and trims the list to
/// exactly `needed` alternating peaks containing the global maximum.
fn alternate_trim(peaks: &mut Vec<(f64, f64)>, needed: usize) {
    // Merge same-sign runs.
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(peaks.len());
    for &(x, v) in peaks.iter() {
        match merged.last_mut() {
            Some(last) if last.1.signum() == v.signum() => {
                if v.abs() > last.1.abs() {
                    *last = (x, v);
                }
            }
            _ => merged.push((x, v)),
        }
    }
    // Trim from the ends only: removing an interior peak would break the
    // alternation, while the global maximum can never be the smaller end.
    while merged.len() > needed {
        if merged[0].1.abs() <= merged[merged.len() - 1].1.abs() {
            merged.remove(0);
        } else {
            merged.pop();
        }
    }
    *peaks = merged;
}

/// Maps half-domain peaks back to the full domain when the problem was
/// even-reduced: each positive peak mirrors to its negative twin, and the
/// maximal alternating subsequence is kept.
fn full_domain_alternation(setup: &DiscreteSetup, peaks: &[(f64, f64)]) -> Vec<(f64, f64)> {
    if !setup.even {
        return peaks.to_vec();
    }
    let mut full: Vec<(f64, f64)> = Vec::with_capacity(2 * peaks.len());
    for &(x, v) in peaks {
        if x > 0.0 {
            full.push((-x, v));
        }
        full.push((x, v));
    }
    full.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut alt: Vec<(f64, f64)> = Vec::with_capacity(full.len());
    for &(x, v) in &full {
        match alt.last_mut() {
            Some(last) if last.1.signum() == v.signum() => {
                if v.abs() > last.1.abs() {
                    *last = (x, v);
                }
            }
            _ => alt.push((x, v)),
        }
    }
    alt
}

fn nearest_index(nodes: &[f64], x: f64) -> usize {
    match nodes.binary_search_by(|n| n.partial_cmp(&x).unwrap()) {
        Ok(i) => i,
        Err(i) => {
            if i == 0 {
                0
            } else if i >= nodes.len() {
                nodes.len() - 1
            } else if (nodes[i] - x).abs() < (x - nodes[i - 1]).abs() {
                i
            } else {
                i - 1
            }
        }
    }
}
