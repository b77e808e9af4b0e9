//! Closed-form limit constants: the L1 and L2 values the scaled errors
//! n^(alpha + 1/p) E_n converge to, the sup-norm constant for the purely
//! oscillatory member (always 1, attained by the zero approximant), and the
//! root of the type-widening equation.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{bracketed_root, complex_gamma, PNorm};

/// A closed-form constant together with how it was produced.
#[derive(Debug, Clone, Serialize)]
pub struct BernsteinConstant {
    pub value: f64,
    pub p: PNorm,
    pub alpha: f64,
    pub beta: f64,
    /// Which closed form produced the value: "l1-series", "l2-gamma",
    /// "linf-oscillatory", or "none".
    pub provenance: &'static str,
    pub series_terms_used: usize,
    pub tolerance: f64,
}

/// The L1 constant
/// (8 |sin(alpha pi / 2)| Gamma(alpha+1) / pi) * sum (-1)^k / (2k+1)^(alpha+2),
/// with the alternating series accelerated by an Euler transform.
pub fn bernstein_l1(alpha: f64) -> Result<BernsteinConstant> {
    if !(alpha > -1.0) {
        return Err(Error::Domain(format!("alpha = {alpha} must exceed -1")));
    }
    let prefactor = 8.0 * (alpha * std::f64::consts::FRAC_PI_2).sin().abs()
        * complex_gamma(Complex64::new(alpha + 1.0, 0.0))?.re
        / std::f64::consts::PI;
    let (series, terms) = euler_alternating(|k| (2.0 * k as f64 + 1.0).powf(-(alpha + 2.0)), 1e-13);
    Ok(BernsteinConstant {
        value: prefactor * series,
        p: PNorm::Finite(1.0),
        alpha,
        beta: 0.0,
        provenance: "l1-series",
        series_terms_used: terms,
        tolerance: 1e-12,
    })
}

/// The L2 constant
/// 2 |sin((alpha + i beta) pi / 2) Gamma(alpha + i beta + 1)| / sqrt(pi (2 alpha + 1)).
pub fn bernstein_l2(alpha: f64, beta: f64) -> Result<BernsteinConstant> {
    if !(alpha > -0.5) {
        return Err(Error::Domain(format!(
            "alpha = {alpha} must exceed -1/2 for square integrability"
        )));
    }
    if beta.abs() > 40.0 {
        return Err(Error::Domain(
            "|beta| > 40: sinh growth exceeds double range".into(),
        ));
    }
    let z = Complex64::new(alpha, beta);
    let s = complex_sin(z * std::f64::consts::FRAC_PI_2);
    let g = complex_gamma(z + 1.0)?;
    let value = 2.0 * (s * g).norm() / (std::f64::consts::PI * (2.0 * alpha + 1.0)).sqrt();
    Ok(BernsteinConstant {
        value,
        p: PNorm::Finite(2.0),
        alpha,
        beta,
        provenance: "l2-gamma",
        series_terms_used: 0,
        tolerance: 1e-12,
    })
}

/// The sup-norm constant for the purely oscillatory member (alpha = 0,
/// beta != 0): always 1, for every type sigma > 0 and every variant — the
/// best approximant is the zero function.
pub fn bernstein_linf_log(beta: f64, sigma: f64) -> Result<BernsteinConstant> {
    if beta == 0.0 {
        return Err(Error::Domain(
            "beta = 0 makes the target constant; this closed form does not apply".into(),
        ));
    }
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("sigma = {sigma} must be positive")));
    }
    Ok(BernsteinConstant {
        value: 1.0,
        p: PNorm::Infinity,
        alpha: 0.0,
        beta,
        provenance: "linf-oscillatory",
        series_terms_used: 0,
        tolerance: 0.0,
    })
}

/// The positive root of sqrt(x^2+1)/x = log(sqrt(x^2+1) + x) on [1, 2].
pub fn mu_constant(tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::Domain(format!("tol = {tol} outside (0, 1e-6]")));
    }
    bracketed_root(
        |x| {
            let s = (x * x + 1.0).sqrt();
            s / x - (s + x).ln()
        },
        1.0,
        2.0,
        tol,
    )
}

/// sin(z) via exponentials with real/imaginary splitting; fine for the
/// |Im z| <= 20 pi range the beta cap admits.
fn complex_sin(z: Complex64) -> Complex64 {
    Complex64::new(
        z.re.sin() * z.im.cosh(),
        z.re.cos() * z.im.sinh(),
    )
}

/// Euler-transform acceleration of sum (-1)^k a_k for positive decreasing
/// a_k: averaging the partial-sum sequence repeatedly until the correction
/// drops below `tail`.
fn euler_alternating(a: impl Fn(usize) -> f64, tail: f64) -> (f64, usize) {
    const BATCH: usize = 40;
    // Partial sums of the raw series.
    let mut s = Vec::with_capacity(BATCH);
    let mut acc = 0.0;
    for k in 0..BATCH {
        acc += if k % 2 == 0 { a(k) } else { -a(k) };
        s.push(acc);
    }
    // Repeated averaging; the last element of each row is the estimate.
    let mut row = s;
    let mut estimate = *row.last().unwrap();
    let mut used = BATCH;
    for _ in 0..BATCH {
        if row.len() < 2 {
            break;
        }
        let next: Vec<f64> = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let new_estimate = *next.last().unwrap();
        let delta = (new_estimate - estimate).abs();
        estimate = new_estimate;
        row = next;
        used += 1;
        if delta < tail {
            break;
        }
    }
    (estimate, used)
}

/// Plain summation of the same series; kept as a slow oracle for the tests.
#[cfg(test)]
fn direct_alternating(a: impl Fn(usize) -> f64, terms: usize) -> f64 {
    let mut acc = 0.0;
    for k in 0..terms {
        acc += if k % 2 == 0 { a(k) } else { -a(k) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn l1_at_one_is_pi_squared_over_four() {
        let c = bernstein_l1(1.0).unwrap();
        assert_relative_eq!(
            c.value,
            std::f64::consts::PI * std::f64::consts::PI / 4.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn l1_vanishes_at_even_alpha() {
        assert!(bernstein_l1(2.0).unwrap().value.abs() < 1e-14);
        // continuity through the zero
        assert!(bernstein_l1(2.0 - 1e-6).unwrap().value.abs() < 1e-4);
        assert!(bernstein_l1(2.0 + 1e-6).unwrap().value.abs() < 1e-4);
    }

    #[test]
    fn l1_at_half_matches_direct_summation() {
        let c = bernstein_l1(0.5).unwrap();
        // 10^6 raw terms bound the tail by ~(2*10^6)^-2.5
        let series = direct_alternating(|k| (2.0 * k as f64 + 1.0).powf(-2.5), 1_000_000);
        let prefactor = 8.0 * (0.25 * std::f64::consts::PI).sin()
            * complex_gamma(Complex64::new(1.5, 0.0)).unwrap().re
            / std::f64::consts::PI;
        assert_relative_eq!(c.value, prefactor * series, epsilon = 1e-10);
        assert_relative_eq!(c.value, 1.5137819733988294, epsilon = 1e-10);
    }

    #[test]
    fn l2_closed_form_values() {
        assert_relative_eq!(bernstein_l2(0.5, 0.0).unwrap().value, 0.5, epsilon = 1e-12);
        assert!(bernstein_l2(2.0, 0.0).unwrap().value.abs() < 1e-14);
        let want = (2.0 * (std::f64::consts::FRAC_PI_2).tanh()).sqrt();
        assert_relative_eq!(bernstein_l2(0.0, 1.0).unwrap().value, want, epsilon = 1e-10);
        // sqrt(5)/2 at alpha = 0.5, beta = 1
        assert_relative_eq!(
            bernstein_l2(0.5, 1.0).unwrap().value,
            1.118033988749895,
            epsilon = 1e-10
        );
    }

    #[test]
    fn l2_direct_beta_zero_formula_agrees() {
        // two routes, one value: complex formula vs the real-only reduction
        for alpha in [0.25, 0.5, 1.0, 1.5] {
            let via_complex = bernstein_l2(alpha, 0.0).unwrap().value;
            let direct = 2.0 * (alpha * std::f64::consts::FRAC_PI_2).sin().abs()
                * complex_gamma(Complex64::new(alpha + 1.0, 0.0)).unwrap().re
                / (std::f64::consts::PI * (2.0 * alpha + 1.0)).sqrt();
            assert_relative_eq!(via_complex, direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn l2_even_in_beta() {
        for (alpha, beta) in [(0.3, 1.7), (1.2, 4.0), (0.0, 2.5)] {
            assert_relative_eq!(
                bernstein_l2(alpha, beta).unwrap().value,
                bernstein_l2(alpha, -beta).unwrap().value,
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn linf_log_is_one_and_sigma_free() {
        assert_eq!(bernstein_linf_log(4.0, 1.0).unwrap().value, 1.0);
        assert_eq!(bernstein_linf_log(4.0, 17.0).unwrap().value, 1.0);
        assert_eq!(bernstein_linf_log(-2.0, 1.0).unwrap().value, 1.0);
        assert!(bernstein_linf_log(0.0, 1.0).is_err());
    }

    #[test]
    fn mu_root() {
        let mu = mu_constant(1e-12).unwrap();
        assert_relative_eq!(mu, 1.508879, epsilon = 1e-6);
        assert!(mu > 1.5 && mu < 1.51);
        let s = (mu * mu + 1.0).sqrt();
        assert!((s / mu - (s + mu).ln()).abs() <= 1e-12);
    }

    #[test]
    fn domain_guards() {
        assert!(bernstein_l1(-1.0).is_err());
        assert!(bernstein_l2(-0.5, 0.0).is_err());
        assert!(bernstein_l2(0.5, 41.0).is_err());
        assert!(mu_constant(1e-3).is_err());
    }
}
