//! Experiment harness: scaled-error convergence tables with limit
//! extrapolation, degree subsequences locking the oscillatory phase, the
//! interval-scaling identity, and the explicit sup-norm decay bound for
//! band-limited functions.

use serde::Serialize;

use crate::best_approx::{ApproxProblem, SymmetryHint};
use crate::constants::{bernstein_l1, bernstein_l2, bernstein_linf_log, BernsteinConstant};
use crate::error::{Error, Result};
use crate::exec::map_rows;
use crate::functions::{FunctionSpec, Variant};
use crate::numerics::{PNorm, QuadratureGrid};
use crate::target::{DilatedTarget, RealTarget};

/// Knobs shared by all table/check drivers.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub nodes_per_panel: usize,
    pub origin_floor: f64,
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            nodes_per_panel: QuadratureGrid::DEFAULT_NODES_PER_PANEL,
            origin_floor: QuadratureGrid::DEFAULT_ORIGIN_FLOOR,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub error: f64,
    /// n^(alpha + 1/p) * error — the quantity with a finite nonzero limit.
    pub scaled: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtrapolationMethod {
    Aitken,
    Richardson1OverN,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitEstimate {
    pub value: f64,
    pub method: ExtrapolationMethod,
    /// False when successive accelerated estimates diverged; the last
    /// stable value is kept.
    pub stable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub spec: FunctionSpec,
    pub p: PNorm,
    pub rows: Vec<ReportRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_estimate: Option<LimitEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<BernsteinConstant>,
    /// |limit_estimate - reference| / reference when both exist.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_gap: Option<f64>,
}

impl ConvergenceReport {
    /// CSV with header n,error,scaled,reference,gap; the reference column
    /// repeats the closed-form value, gap is the per-row relative gap of the
    /// scaled column, both empty without a reference.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,error,scaled,reference,gap\n");
        for row in &self.rows {
            let (reference, gap) = match &self.reference {
                Some(c) if c.value != 0.0 => (
                    format!("{:.17e}", c.value),
                    format!("{:.17e}", (row.scaled - c.value) / c.value),
                ),
                Some(c) => (format!("{:.17e}", c.value), String::new()),
                None => (String::new(), String::new()),
            };
            out.push_str(&format!(
                "{},{:.17e},{:.17e},{},{}\n",
                row.n, row.error, row.scaled, reference, gap
            ));
        }
        out
    }
}

/// Builds the grid for a spec on an interval: origin-graded, with the node
/// budget from the options.
pub fn grid_for(
    spec_interval: (f64, f64),
    options: &SolverOptions,
) -> Result<QuadratureGrid> {
    QuadratureGrid::graded(spec_interval, options.nodes_per_panel, options.origin_floor)
}

/// Whether sup-norm problems for this spec must stay on the grid: targets
/// oscillating infinitely often near 0 have no continuum algorithm.
pub fn needs_discretized_sup(spec: &FunctionSpec) -> bool {
    spec.alpha <= 0.0 && spec.beta != 0.0
}

fn solve_on(
    spec: &FunctionSpec,
    interval: (f64, f64),
    degree: usize,
    p: PNorm,
    options: &SolverOptions,
) -> Result<crate::best_approx::ApproxResult> {
    let grid = grid_for(interval, options)?;
    let problem = ApproxProblem {
        target: spec,
        interval,
        degree,
        pnorm: p,
        grid,
        symmetry_hint: if spec.is_even_symmetric() {
            SymmetryHint::Even
        } else {
            SymmetryHint::None
        },
        discretize_sup: needs_discretized_sup(spec),
    };
    problem.solve()
}

/// The closed-form limit constant for (spec, p) when one exists. For beta=0
/// the full and cos variants coincide (the sin part vanishes identically).
pub fn reference_constant(spec: &FunctionSpec, p: PNorm) -> Option<BernsteinConstant> {
    if spec.halfline_weights.is_some() {
        return None;
    }
    let effectively_full =
        spec.variant == Variant::Full || (spec.beta == 0.0 && spec.variant == Variant::CosPart);
    match p {
        PNorm::Finite(q) if q == 1.0 => {
            (spec.beta == 0.0 && effectively_full).then(|| bernstein_l1(spec.alpha).ok())?
        }
        PNorm::Finite(q) if q == 2.0 => {
            effectively_full.then(|| bernstein_l2(spec.alpha, spec.beta).ok())?
        }
        PNorm::Infinity => {
            (spec.alpha == 0.0 && spec.beta != 0.0)
                .then(|| bernstein_linf_log(spec.beta, 1.0).ok())?
        }
        _ => None,
    }
}

/// One row per degree: E_n on [-1, 1] from the matching solver, the scaled
/// value n^(alpha+1/p) E_n, plus the closed-form reference when one applies.
pub fn scaled_error_table(
    spec: &FunctionSpec,
    p: PNorm,
    degrees: &[usize],
    options: &SolverOptions,
) -> Result<ConvergenceReport> {
    if degrees.is_empty() {
        return Err(Error::Domain("degree list must be nonempty".into()));
    }
    if degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("degrees must be strictly increasing".into()));
    }
    let exponent = spec.alpha + p.inv();
    let results = map_rows(degrees, options.parallel, |&n| {
        solve_on(spec, (-1.0, 1.0), n, p, options).map(|r| ReportRow {
            n,
            error: r.error,
            scaled: (n as f64).powf(exponent) * r.error,
        })
    });
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }
    let reference = reference_constant(spec, p);
    let limit_estimate = if rows.len() >= 3 {
        extrapolate_rows(&rows, ExtrapolationMethod::Richardson1OverN).ok()
    } else {
        None
    };
    let relative_gap = match (&limit_estimate, &reference) {
        (Some(l), Some(c)) if c.value != 0.0 => Some((l.value - c.value).abs() / c.value),
        _ => None,
    };
    Ok(ConvergenceReport {
        spec: *spec,
        p,
        rows,
        limit_estimate,
        reference,
        relative_gap,
    })
}

/// Accelerates the scaled column of a report.
pub fn extrapolate_limit(
    report: &ConvergenceReport,
    method: ExtrapolationMethod,
) -> Result<LimitEstimate> {
    extrapolate_rows(&report.rows, method)
}

fn extrapolate_rows(rows: &[ReportRow], method: ExtrapolationMethod) -> Result<LimitEstimate> {
    if rows.len() < 3 {
        return Err(Error::Domain("extrapolation needs at least 3 rows".into()));
    }
    let ns: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let s: Vec<f64> = rows.iter().map(|r| r.scaled).collect();
    if s.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite(f64::NAN));
    }
    match method {
        ExtrapolationMethod::Aitken => {
            let mut estimates = Vec::new();
            for w in s.windows(3) {
                let denom = w[2] - 2.0 * w[1] + w[0];
                if denom.abs() < 1e-300 {
                    estimates.push(w[2]);
                } else {
                    estimates.push(w[2] - (w[2] - w[1]).powi(2) / denom);
                }
            }
            // Stable when the accelerated sequence itself settles.
            let stable = estimates
                .windows(2)
                .all(|w| (w[1] - w[0]).abs() <= 0.5 * (w[0] - s[s.len() - 1]).abs() + 1e-12);
            let mut value = estimates[0];
            for w in estimates.windows(2) {
                if (w[1] - value).abs() <= 2.0 * (w[0] - value).abs() + 1e-12 {
                    value = w[1];
                } else {
                    break; // diverging; keep the last stable value
                }
            }
            Ok(LimitEstimate {
                value,
                method,
                stable,
            })
        }
        ExtrapolationMethod::Richardson1OverN => {
            // Model s_n = L + c1/n + c2/n^2 + ...; one elimination level per
            // available pair. Exact for geometric degree sequences; for a
            // general increasing sequence each level uses the actual ratios.
            let mut level: Vec<(f64, f64)> = ns.iter().copied().zip(s.iter().copied()).collect();
            let mut order = 1.0;
            let mut last = level[level.len() - 1].1;
            let mut stable = true;
            while level.len() >= 2 {
                let mut next = Vec::with_capacity(level.len() - 1);
                for w in level.windows(2) {
                    let (n1, s1) = w[0];
                    let (n2, s2) = w[1];
                    let r = (n2 / n1).powf(order);
                    next.push((n2, (r * s2 - s1) / (r - 1.0)));
                }
                let new_last = next[next.len() - 1].1;
                if (new_last - last).abs() > (last.abs() + 1e-12) {
                    stable = false;
                    break;
                }
                last = new_last;
                level = next;
                order += 1.0;
            }
            Ok(LimitEstimate {
                value: last,
                method,
                stable,
            })
        }
    }
}

/// Which phase the degree subsequence locks: dilations with
/// beta log a = k pi map the cos component to +-itself; shifting the phase
/// by pi/2 swaps the components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsequenceKind {
    CosLocked,
    SinLocked,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsequencePlan {
    pub beta: f64,
    pub kind: SubsequenceKind,
    pub ks: Vec<u32>,
    /// floor(dilation) per k.
    pub degrees: Vec<u64>,
    /// exp(pi k / beta) or exp((2k+1) pi / (2 beta)).
    pub dilations: Vec<f64>,
}

/// Degree subsequences n_k = floor(exp(pi k / beta)) (cos-locked) and
/// m_k = floor(exp((2k+1) pi / (2 beta))) (sin-locked).
pub fn subsequence_degrees(beta: f64, kind: SubsequenceKind, ks: &[u32]) -> Result<SubsequencePlan> {
    if beta == 0.0 {
        return Err(Error::Domain("beta must be nonzero".into()));
    }
    if ks.is_empty() || ks.iter().any(|&k| k == 0) || ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(
            "ks must be positive and strictly increasing".into(),
        ));
    }
    let mut dilations = Vec::with_capacity(ks.len());
    let mut degrees = Vec::with_capacity(ks.len());
    for &k in ks {
        let exponent = match kind {
            SubsequenceKind::CosLocked => std::f64::consts::PI * k as f64 / beta,
            SubsequenceKind::SinLocked => {
                (2.0 * k as f64 + 1.0) * std::f64::consts::PI / (2.0 * beta)
            }
        };
        let a = exponent.exp();
        if !(a <= 1e15) {
            return Err(Error::Overflow(format!(
                "dilation exp({exponent:.3}) exceeds 1e15"
            )));
        }
        dilations.push(a);
        degrees.push(a.floor() as u64);
    }
    Ok(SubsequencePlan {
        beta,
        kind,
        ks: ks.to_vec(),
        degrees,
        dilations,
    })
}

/// Both sides of E_n(f, L_p[-1, 1]) = eta^(1/p) E_n(f(eta .), L_p[-1/eta, 1/eta])
/// and their relative discrepancy.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub relative_gap: f64,
}

pub fn scaling_identity_check(
    spec: &FunctionSpec,
    p: PNorm,
    degree: usize,
    eta: f64,
    options: &SolverOptions,
) -> Result<ScalingCheck> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::Domain(format!("eta = {eta} must be positive")));
    }
    let lhs = solve_on(spec, (-1.0, 1.0), degree, p, options)?.error;
    let dilated = DilatedTarget::new(spec, eta);
    // The right-hand side must be discretized with the image of the
    // left-hand grid under the dilation, not with a freshly graded grid:
    // regrading can subdivide panels differently and the identity then only
    // holds up to quadrature error instead of roundoff.
    let scale = 1.0 / eta;
    let interval = (-scale, scale);
    let grid = grid_for((-1.0, 1.0), options)?.scaled_by(scale)?;
    let problem = ApproxProblem {
        target: &dilated,
        interval,
        degree,
        pnorm: p,
        grid,
        symmetry_hint: if spec.is_even_symmetric() {
            SymmetryHint::Even
        } else {
            SymmetryHint::None
        },
        discretize_sup: needs_discretized_sup(spec),
    };
    let rhs = eta.powf(p.inv()) * problem.solve()?.error;
    let scale = lhs.abs().max(rhs.abs()).max(1e-300);
    Ok(ScalingCheck {
        lhs,
        rhs,
        relative_gap: (lhs - rhs).abs() / scale,
    })
}

/// Band-limited test functions with known whole-line sup norm 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BandLimited {
    /// cos(sigma x), exactly of type sigma.
    Cosine { sigma: f64 },
    /// (sin(sigma x / 2) / (sigma x / 2))^2, of type sigma, peak 1 at 0.
    SincSquared { sigma: f64 },
    /// The constant 1 (type 0, inside every type class).
    One,
}

impl BandLimited {
    pub fn sigma(&self) -> f64 {
        match self {
            BandLimited::Cosine { sigma } | BandLimited::SincSquared { sigma } => *sigma,
            BandLimited::One => 0.0,
        }
    }

    pub fn sup_norm(&self) -> f64 {
        1.0
    }

    fn value(&self, x: f64) -> f64 {
        match self {
            BandLimited::Cosine { sigma } => (sigma * x).cos(),
            BandLimited::SincSquared { sigma } => {
                let u = 0.5 * sigma * x;
                if u.abs() < 1e-8 {
                    1.0 - u * u / 3.0
                } else {
                    (u.sin() / u).powi(2)
                }
            }
            BandLimited::One => 1.0,
        }
    }
}

/// The derived bound constants: the sup-norm error of degree-n polynomial
/// approximation on [-n tau / sigma, n tau / sigma] is at most
/// C7 exp(-C8 n) times the whole-line sup norm.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DecayBoundParams {
    pub sigma: f64,
    pub tau: f64,
    pub c: f64,
    pub c7: f64,
    pub c8: f64,
}

impl DecayBoundParams {
    pub fn new(sigma: f64, tau: f64, c: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::Domain(format!("sigma = {sigma} must be positive")));
        }
        if !(tau > 0.0 && tau < 1.0) {
            return Err(Error::Domain(format!("tau = {tau} must lie in (0, 1)")));
        }
        if !(c >= 0.0) {
            return Err(Error::Domain(format!("c = {c} must be nonnegative")));
        }
        let root = (1.0 - tau * tau).sqrt();
        Ok(Self {
            sigma,
            tau,
            c,
            c7: 2.0 * tau * (c * root).exp() / root,
            c8: (1.0 + root).ln() - tau.ln() - root,
        })
    }

    pub fn bound(&self, n: usize, sup_norm: f64) -> f64 {
        self.c7 * (-self.c8 * n as f64).exp() * sup_norm
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub interval_halfwidth: f64,
    pub error: f64,
    pub bound: f64,
    /// bound / error; >= 1 when the inequality holds with room.
    pub margin: f64,
    pub pass: bool,
}

/// Checks E_n(g, L_inf[-n tau / sigma, n tau / sigma]) <= C7 exp(-C8 n) ||g||
/// for each degree.
pub fn decay_bound_check(
    test_fn: BandLimited,
    params: &DecayBoundParams,
    degrees: &[usize],
    options: &SolverOptions,
) -> Result<Vec<BoundRow>> {
    let results = map_rows(degrees, options.parallel, |&n| -> Result<BoundRow> {
        let halfwidth = n as f64 * params.tau / params.sigma.max(f64::MIN_POSITIVE);
        let interval = (-halfwidth, halfwidth);
        let f = test_fn;
        let target = RealTarget::even(move |x| f.value(x));
        let grid = grid_for(interval, options)?;
        let problem = ApproxProblem {
            target: &target,
            interval,
            degree: n,
            pnorm: PNorm::Infinity,
            grid,
            symmetry_hint: SymmetryHint::Even,
            discretize_sup: false,
        };
        let error = problem.solve()?.error;
        let bound = params.bound(n, test_fn.sup_norm());
        Ok(BoundRow {
            n,
            interval_halfwidth: halfwidth,
            error,
            bound,
            margin: if error > 0.0 { bound / error } else { f64::INFINITY },
            pass: error <= bound,
        })
    });
    results.into_iter().collect()
}

/// Discrete sup-norm errors of the oscillatory cos component on [-1, 1] and
/// on the shrunk interval [-1/a, 1/a] for a cos-locked dilation a: the
/// dilation maps the component to +-itself and p = infinity carries no
/// Jacobian, so the two agree up to grid tolerance.
pub fn dilation_transfer_check(
    beta: f64,
    k: u32,
    degree: usize,
    options: &SolverOptions,
) -> Result<ScalingCheck> {
    let plan = subsequence_degrees(beta, SubsequenceKind::CosLocked, &[k])?;
    let a = plan.dilations[0];
    let spec = FunctionSpec::new(0.0, beta, Variant::CosPart)?;
    let lhs = solve_on(&spec, (-1.0, 1.0), degree, PNorm::Infinity, options)?.error;
    let rhs = solve_on(&spec, (-1.0 / a, 1.0 / a), degree, PNorm::Infinity, options)?.error;
    let scale = lhs.abs().max(rhs.abs()).max(1e-300);
    Ok(ScalingCheck {
        lhs,
        rhs,
        relative_gap: (lhs - rhs).abs() / scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rows_from(ns: &[usize], f: impl Fn(f64) -> f64) -> Vec<ReportRow> {
        ns.iter()
            .map(|&n| ReportRow {
                n,
                error: 0.0,
                scaled: f(n as f64),
            })
            .collect()
    }

    #[test]
    fn richardson_recovers_first_order_limit() {
        let rows = rows_from(&[8, 16, 32, 64], |n| 0.5 + 0.3 / n);
        let est = extrapolate_rows(&rows, ExtrapolationMethod::Richardson1OverN).unwrap();
        assert!(est.stable);
        assert_relative_eq!(est.value, 0.5, epsilon = 1e-10);
    }

    #[test]
    fn richardson_handles_two_term_expansions() {
        let rows = rows_from(&[8, 16, 32, 64], |n| 2.0 - 1.0 / n + 5.0 / (n * n));
        let est = extrapolate_rows(&rows, ExtrapolationMethod::Richardson1OverN).unwrap();
        assert_relative_eq!(est.value, 2.0, epsilon = 1e-9);
    }

    #[test]
    fn aitken_collapses_geometric_tails() {
        // s_k = 1 + 0.4 * 2^-k along a doubling degree sequence
        let rows = rows_from(&[8, 16, 32, 64], |n| 1.0 + 0.4 * 8.0 / n);
        let est = extrapolate_rows(&rows, ExtrapolationMethod::Aitken).unwrap();
        assert!(est.stable);
        assert_relative_eq!(est.value, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn constant_column_is_its_own_limit() {
        let rows = rows_from(&[8, 16, 32], |_| 0.25);
        for method in [
            ExtrapolationMethod::Aitken,
            ExtrapolationMethod::Richardson1OverN,
        ] {
            let est = extrapolate_rows(&rows, method).unwrap();
            assert!(est.stable, "{method:?}");
            assert_relative_eq!(est.value, 0.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn extrapolation_needs_three_rows() {
        let rows = rows_from(&[8, 16], |n| 1.0 / n);
        assert!(extrapolate_rows(&rows, ExtrapolationMethod::Aitken).is_err());
    }

    #[test]
    fn subsequence_degree_examples() {
        let p = subsequence_degrees(1.0, SubsequenceKind::CosLocked, &[1, 2]).unwrap();
        assert_eq!(p.degrees, vec![23, 535]);
        let p = subsequence_degrees(std::f64::consts::PI, SubsequenceKind::CosLocked, &[2]).unwrap();
        assert_eq!(p.degrees, vec![7]);
        let p = subsequence_degrees(1.0, SubsequenceKind::SinLocked, &[1]).unwrap();
        assert_eq!(p.degrees, vec![111]);
        let p = subsequence_degrees(4.0, SubsequenceKind::CosLocked, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(p.degrees, vec![2, 4, 10, 23, 50]);
    }

    #[test]
    fn subsequence_phase_is_locked() {
        use std::f64::consts::PI;
        for beta in [1.0, PI, 4.0] {
            for (kind, offset) in [
                (SubsequenceKind::CosLocked, 0.0),
                (SubsequenceKind::SinLocked, 0.5 * PI),
            ] {
                let p = subsequence_degrees(beta, kind, &[1, 2, 3, 4, 5]).unwrap();
                for &a in &p.dilations {
                    let phase = beta * a.ln() - offset;
                    let frac = phase / PI - (phase / PI).round();
                    assert!(
                        frac.abs() < 1e-12,
                        "beta={beta} {kind:?} a={a}: residual phase {frac}"
                    );
                }
            }
        }
    }

    #[test]
    fn subsequence_rejects_bad_inputs() {
        assert!(subsequence_degrees(0.0, SubsequenceKind::CosLocked, &[1]).is_err());
        assert!(subsequence_degrees(1.0, SubsequenceKind::CosLocked, &[]).is_err());
        assert!(subsequence_degrees(1.0, SubsequenceKind::CosLocked, &[2, 2]).is_err());
        // exp(pi * 20) > 1e15: dilation overflow
        assert!(matches!(
            subsequence_degrees(1.0, SubsequenceKind::CosLocked, &[20]),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn decay_constants_closed_form() {
        let p = DecayBoundParams::new(1.0, 0.5, 0.0).unwrap();
        assert_relative_eq!(p.c7, 1.154700538379252, epsilon = 1e-12);
        assert_relative_eq!(p.c8, 0.450932493140378, epsilon = 1e-12);
        // the decay rate is positive for every tau in (0, 1)
        for i in 1..100 {
            let tau = i as f64 / 100.0;
            let q = DecayBoundParams::new(1.0, tau, 0.0).unwrap();
            assert!(q.c8 > 0.0, "tau={tau}: c8={}", q.c8);
        }
        assert!(DecayBoundParams::new(1.0, 1.0, 0.0).is_err());
        assert!(DecayBoundParams::new(0.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn reference_constant_dispatch() {
        let full = FunctionSpec::new(0.5, 0.0, Variant::Full).unwrap();
        assert!(reference_constant(&full, PNorm::new(1.0).unwrap()).is_some());
        assert!(reference_constant(&full, PNorm::new(2.0).unwrap()).is_some());
        assert!(reference_constant(&full, PNorm::new(4.0).unwrap()).is_none());
        let osc = FunctionSpec::new(0.0, 1.0, Variant::Full).unwrap();
        assert!(reference_constant(&osc, PNorm::Infinity).is_some());
        assert!(reference_constant(&osc, PNorm::new(1.0).unwrap()).is_none());
        let sin_part = FunctionSpec::new(0.5, 0.0, Variant::SinPart).unwrap();
        assert!(reference_constant(&sin_part, PNorm::new(2.0).unwrap()).is_none());
    }

    #[test]
    fn csv_layout_has_reference_and_gap_columns() {
        let spec = FunctionSpec::new(0.5, 0.0, Variant::Full).unwrap();
        let report = ConvergenceReport {
            spec,
            p: PNorm::new(2.0).unwrap(),
            rows: rows_from(&[8, 16, 32], |n| 0.5 + 1.0 / n),
            limit_estimate: None,
            reference: None,
            relative_gap: None,
        };
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,error,scaled,reference,gap"));
        assert_eq!(lines.count(), 3);
    }

    #[test]
    fn scaled_column_is_recomputable() {
        let spec = FunctionSpec::new(0.5, 0.0, Variant::Full).unwrap();
        let options = SolverOptions {
            nodes_per_panel: 20,
            ..SolverOptions::default()
        };
        let report =
            scaled_error_table(&spec, PNorm::new(2.0).unwrap(), &[4, 8, 16], &options).unwrap();
        let exponent = 0.5 + 0.5;
        for w in report.rows.windows(2) {
            assert!(w[0].n < w[1].n);
            assert!(w[1].error <= w[0].error * (1.0 + 1e-9));
        }
        for row in &report.rows {
            let recomputed = (row.n as f64).powf(exponent) * row.error;
            assert_relative_eq!(row.scaled, recomputed, max_relative = 1e-14);
        }
    }
}
