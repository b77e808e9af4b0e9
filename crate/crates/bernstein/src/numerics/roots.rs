//! Bracketed root finding (Brent's method).

use crate::error::{Error, Result};

/// Finds x* in [lo, hi] with f(lo) f(hi) < 0, |f(x*)| <= tol and the final
/// bracket width <= tol. Deterministic bisection/secant/inverse-quadratic
/// hybrid with the standard Brent acceptance rule.
pub fn bracketed_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::NoBracket { lo, hi });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 && fb.abs() <= tol {
            return Ok(b);
        }
        if fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Attempt inverse quadratic interpolation / secant.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0));
                q = (q0 - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else {
            tol1.copysign(xm)
        };
        fb = f(b);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sqrt_two() {
        let r = bracketed_root(|x| x * x - 2.0, 1.0, 2.0, 1e-12).unwrap();
        assert_relative_eq!(r, std::f64::consts::SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn no_bracket_is_rejected() {
        assert!(matches!(
            bracketed_root(|x| x * x + 1.0, -1.0, 1.0, 1e-10),
            Err(Error::NoBracket { .. })
        ));
    }

    #[test]
    fn endpoint_signs_of_the_type_equation() {
        // s(x) = sqrt(x^2+1)/x - log(sqrt(x^2+1)+x) has a root in [1, 2].
        let s = |x: f64| (x * x + 1.0).sqrt() / x - ((x * x + 1.0).sqrt() + x).ln();
        assert_relative_eq!(s(1.0), 0.5328399, epsilon = 1e-6);
        assert_relative_eq!(s(2.0), -0.3256015, epsilon = 1e-6);
        let r = bracketed_root(s, 1.0, 2.0, 1e-12).unwrap();
        assert_relative_eq!(r, 1.508879, epsilon = 1e-6);
        assert!(s(r).abs() <= 1e-12);
    }
}
