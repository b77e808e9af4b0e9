//! Solver-level checks against hand-verifiable classical values.

use approx::assert_relative_eq;
use bernstein::best_approx::{remez_linf, ApproxProblem};
use bernstein::functions::{FunctionSpec, Variant};
use bernstein::numerics::PNorm;
use bernstein::target::{ComplexTarget, RealTarget};
use num_complex::Complex64;

fn problem<'a>(
    target: &'a dyn bernstein::target::TargetFn,
    degree: usize,
    pnorm: PNorm,
) -> ApproxProblem<'a> {
    ApproxProblem::new(target, (-1.0, 1.0), degree, pnorm).unwrap()
}

#[test]
fn remez_abs_degree_two() {
    let f = RealTarget::even(|x: f64| x.abs());
    let result = problem(&f, 2, PNorm::Infinity).solve().unwrap();
    assert_relative_eq!(result.error, 0.125, epsilon = 1e-8);
    assert!(result.diagnostics.converged);
    // equioscillation at 0, +-1/2, +-1
    let pts = &result.diagnostics.alternation_points;
    assert!(pts.len() >= 4, "got {} alternation points", pts.len());
    let mut signs = pts.iter().map(|&(_, v)| v.signum());
    let first = signs.next().unwrap();
    let alternates = pts
        .windows(2)
        .all(|w| w[0].1.signum() != w[1].1.signum());
    assert!(alternates, "peaks do not alternate: {pts:?}");
    let _ = first;
    // the best polynomial is x^2 + 1/8
    let p = result.polynomial.to_monomial().unwrap();
    assert_relative_eq!(p.coeffs()[0].re, 0.125, epsilon = 1e-7);
    assert_relative_eq!(p.coeffs()[2].re, 1.0, epsilon = 1e-7);
}

#[test]
fn remez_abs_degree_one_is_the_constant_half() {
    let f = RealTarget::even(|x: f64| x.abs());
    let result = problem(&f, 1, PNorm::Infinity).solve().unwrap();
    assert_relative_eq!(result.error, 0.5, epsilon = 1e-9);
    let p = result.polynomial.to_monomial().unwrap();
    assert_relative_eq!(p.coeffs()[0].re, 0.5, epsilon = 1e-8);
    assert!(p.coeffs()[1].norm() < 1e-8);
}

#[test]
fn remez_polynomial_target_is_exact() {
    let f = RealTarget::even(|x: f64| x * x);
    let result = problem(&f, 2, PNorm::Infinity).solve().unwrap();
    assert!(result.error < 1e-12, "error {}", result.error);
}

#[test]
fn remez_entry_point_rejects_complex_targets() {
    let f = ComplexTarget::new(|x: f64| Complex64::new(0.0, x));
    let p = problem(&f, 1, PNorm::Infinity);
    assert!(remez_linf(&p).is_err());
}

#[test]
fn l2_best_constant_for_abs() {
    let f = RealTarget::even(|x: f64| x.abs());
    let result = problem(&f, 0, PNorm::new(2.0).unwrap()).solve().unwrap();
    assert_relative_eq!(result.error, (1.0f64 / 6.0).sqrt(), epsilon = 1e-10);
    let p = result.polynomial.to_monomial().unwrap();
    assert_relative_eq!(p.coeffs()[0].re, 0.5, epsilon = 1e-10);
}

#[test]
fn l2_closed_form_sqrt_abs() {
    // E_n(|x|^(1/2), L2[-1,1]) = 1/(2n+3) exactly
    let spec = FunctionSpec::new(0.5, 0.0, Variant::Full).unwrap();
    for (n, want) in [(8usize, 1.0 / 19.0), (16, 1.0 / 35.0), (32, 1.0 / 67.0)] {
        let result = problem(&spec, n, PNorm::new(2.0).unwrap()).solve().unwrap();
        assert_relative_eq!(result.error, want, max_relative = 1e-9);
        // Pythagoras vs direct quadrature
        let direct = result.diagnostics.cross_check.unwrap();
        assert_relative_eq!(result.error, direct, max_relative = 1e-8);
    }
}

#[test]
fn l2_polynomial_target_is_exact() {
    let f = RealTarget::even(|x: f64| x * x);
    let result = problem(&f, 2, PNorm::new(2.0).unwrap()).solve().unwrap();
    assert!(result.error < 1e-12);
}

#[test]
fn l1_best_constant_for_abs_is_the_median() {
    let f = RealTarget::even(|x: f64| x.abs());
    let result = problem(&f, 0, PNorm::new(1.0).unwrap()).solve().unwrap();
    assert_relative_eq!(result.error, 0.5, epsilon = 1e-9);
    // the discrete optimum interpolates at a node near 1/2
    let p = result.polynomial.to_monomial().unwrap();
    assert_relative_eq!(p.coeffs()[0].re, 0.5, epsilon = 1e-3);
}

#[test]
fn l1_sign_changes_for_abs_degree_three() {
    let f = RealTarget::even(|x: f64| x.abs());
    let result = problem(&f, 3, PNorm::new(1.0).unwrap()).solve().unwrap();
    assert!(result.diagnostics.converged);
    assert!(
        result.diagnostics.sign_changes.len() >= 4,
        "only {} sign changes",
        result.diagnostics.sign_changes.len()
    );
}

#[test]
fn l1_polynomial_target_is_exact() {
    let f = RealTarget::even(|x: f64| x * x);
    let result = problem(&f, 2, PNorm::new(1.0).unwrap()).solve().unwrap();
    assert!(result.error < 1e-12, "error {}", result.error);
}

#[test]
fn irls_matches_l2_at_p_two() {
    let spec = FunctionSpec::new(0.5, 0.0, Variant::Full).unwrap();
    let via_l2 = problem(&spec, 8, PNorm::new(2.0).unwrap()).solve().unwrap();
    // p = 2 dispatches to the projection; call IRLS through a nearby p
    let via_irls = problem(&spec, 8, PNorm::new(2.0 + 1e-9).unwrap())
        .solve()
        .unwrap();
    assert_relative_eq!(via_l2.error, via_irls.error, max_relative = 1e-6);
}

#[test]
fn irls_large_p_approaches_minimax() {
    let f = RealTarget::even(|x: f64| x.abs());
    let result = problem(&f, 2, PNorm::new(64.0).unwrap()).solve().unwrap();
    assert!(
        (result.error - 0.125).abs() / 0.125 < 0.05,
        "p=64 error {} not within 5% of 1/8",
        result.error
    );
}

#[test]
fn lawson_admits_complex_coefficients() {
    let f = ComplexTarget::new(|x: f64| Complex64::new(0.0, x));
    let result = problem(&f, 1, PNorm::Infinity).solve().unwrap();
    assert!(result.error < 1e-10, "error {}", result.error);
    assert!(result.discretized);
}

#[test]
fn discrete_real_sup_matches_continuum() {
    // the discretized route on the graded grid reproduces the continuum 1/8
    let f = RealTarget::even(|x: f64| x.abs());
    let mut p = problem(&f, 2, PNorm::Infinity);
    p.discretize_sup = true;
    let result = p.solve().unwrap();
    assert!(result.discretized);
    assert!(
        (result.error - 0.125).abs() < 1e-6,
        "discrete error {}",
        result.error
    );
}

#[test]
fn oscillatory_discrete_sup_is_bounded_and_monotone() {
    let spec = FunctionSpec::new(0.0, 4.0, Variant::CosPart).unwrap();
    let mut prev = f64::MAX;
    for n in [8usize, 16, 32] {
        let mut p = problem(&spec, n, PNorm::Infinity);
        p.discretize_sup = true;
        let result = p.solve().unwrap();
        assert!(result.error > 0.0 && result.error <= 1.0 + 1e-12);
        assert!(result.diagnostics.converged, "n = {n} did not converge");
        // true gaps between successive degrees are ~1e-11 here, so allow
        // the certificate tolerance as slack
        assert!(
            result.error <= prev + 1e-9,
            "E_{n} = {} exceeds previous {prev}",
            result.error
        );
        prev = result.error;
    }
}

#[test]
fn l1_matches_brute_force_over_interpolation_pairs() {
    // The weighted discrete L1 optimum for a full-rank 2-parameter basis is
    // attained at a vertex interpolating the target at 2 nodes, so on a
    // small grid the exact optimum is the minimum over all node pairs.
    let f = RealTarget::new(|x: f64| x.exp());
    let grid = bernstein::numerics::QuadratureGrid::graded((1.0, 2.0), 3, 1e-14).unwrap();
    let mut p = ApproxProblem::new(&f, (1.0, 2.0), 1, PNorm::new(1.0).unwrap()).unwrap();
    p.grid = grid.clone();
    let solved = p.solve().unwrap().error;

    let xs = grid.nodes();
    let ws = grid.weights();
    let fv: Vec<f64> = xs.iter().map(|&x| x.exp()).collect();
    let mut brute = f64::MAX;
    for i in 0..xs.len() {
        for j in (i + 1)..xs.len() {
            let slope = (fv[j] - fv[i]) / (xs[j] - xs[i]);
            let total: f64 = xs
                .iter()
                .zip(&fv)
                .zip(ws)
                .map(|((&x, &v), &w)| w * (v - (fv[i] + slope * (x - xs[i]))).abs())
                .sum();
            brute = brute.min(total);
        }
    }
    assert_relative_eq!(solved, brute, max_relative = 1e-9);
}

#[test]
fn degree_monotonicity_across_solvers() {
    let spec = FunctionSpec::new(0.5, 0.0, Variant::Full).unwrap();
    for p in [PNorm::new(1.0).unwrap(), PNorm::new(2.0).unwrap(), PNorm::Infinity] {
        let mut prev = f64::MAX;
        for n in [2usize, 4, 8, 16] {
            let e = problem(&spec, n, p).solve().unwrap().error;
            assert!(e <= prev * (1.0 + 1e-9), "p={p:?} n={n}: {e} > {prev}");
            assert!(e >= 0.0);
            prev = e;
        }
    }
}

#[test]
fn even_targets_get_even_polynomials() {
    let spec = FunctionSpec::new(0.5, 0.0, Variant::Full).unwrap();
    for p in [PNorm::new(1.0).unwrap(), PNorm::new(2.0).unwrap(), PNorm::Infinity] {
        let result = problem(&spec, 5, p).solve().unwrap();
        let coeffs = result.polynomial.coeffs();
        for (k, c) in coeffs.iter().enumerate() {
            if k % 2 == 1 {
                assert!(
                    c.norm() <= 1e-10 * result.error.max(1e-10),
                    "odd coefficient {k} = {c} (p = {p:?})"
                );
            }
        }
    }
}

#[test]
fn zero_polynomial_upper_bound() {
    // E_n <= ||f||_p with the zero polynomial feasible
    let spec = FunctionSpec::new(0.0, 1.0, Variant::Full).unwrap();
    let mut p = problem(&spec, 10, PNorm::Infinity);
    p.discretize_sup = true;
    let result = p.solve().unwrap();
    assert!(result.error <= 1.0 + 1e-12, "error {}", result.error);
}
