//! The target family |x|^alpha * exp(i beta log|x|), its cos/sin components,
//! the half-line weighted generalization, and the dilation algebra.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::target::TargetFn;

/// Which component of the family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Full,
    CosPart,
    SinPart,
}

/// A member of the target family: |x|^alpha * exp(i beta log|x|) with an
/// optional pair of complex weights multiplying the x > 0 / x <= 0 branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub alpha: f64,
    pub beta: f64,
    pub variant: Variant,
    /// Weights (a, b) for the x > 0 and x <= 0 branches; None means (1, 1).
    pub halfline_weights: Option<(Complex64, Complex64)>,
}

impl FunctionSpec {
    /// The plain family member with weights (1, 1).
    pub fn new(alpha: f64, beta: f64, variant: Variant) -> Result<Self> {
        Self::with_weights(alpha, beta, variant, None)
    }

    pub fn with_weights(
        alpha: f64,
        beta: f64,
        variant: Variant,
        halfline_weights: Option<(Complex64, Complex64)>,
    ) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::Domain(format!(
                "alpha = {alpha} must exceed -1 for integrability near 0"
            )));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Domain("alpha and beta must be finite".into()));
        }
        if let Some((a, b)) = halfline_weights {
            if !(a.norm() + b.norm() > 0.0) {
                return Err(Error::Domain(
                    "halfline weights must not both vanish".into(),
                ));
            }
        }
        Ok(Self {
            alpha,
            beta,
            variant,
            halfline_weights,
        })
    }

    /// Evaluates the spec at x. For alpha > 0 the value at 0 is exactly 0;
    /// for alpha <= 0 the point 0 is outside the domain (no limit exists).
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        if x == 0.0 {
            if self.alpha > 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            return Err(Error::Domain(
                "x = 0 is outside the domain when alpha <= 0".into(),
            ));
        }
        let ax = x.abs();
        // |x|^alpha * exp(i beta log|x|): modulus and phase from log|x| once.
        let logax = ax.ln();
        let full = Complex64::from_polar((self.alpha * logax).exp(), self.beta * logax);
        let component = match self.variant {
            Variant::Full => full,
            Variant::CosPart => Complex64::new(full.re, 0.0),
            Variant::SinPart => Complex64::new(full.im, 0.0),
        };
        let weight = match self.halfline_weights {
            None => Complex64::new(1.0, 0.0),
            Some((a, b)) => {
                if x > 0.0 {
                    a
                } else {
                    b
                }
            }
        };
        Ok(weight * component)
    }

    /// Whether the evaluated values are real for all x.
    pub fn is_real_valued(&self) -> bool {
        let weights_real = match self.halfline_weights {
            None => true,
            Some((a, b)) => a.im == 0.0 && b.im == 0.0,
        };
        weights_real && (self.variant != Variant::Full || self.beta == 0.0)
    }

    /// Whether f(-x) = f(x) for all x.
    pub fn is_even_symmetric(&self) -> bool {
        match self.halfline_weights {
            None => true,
            Some((a, b)) => a == b,
        }
    }

    /// How the spec transforms under x -> eta * x.
    pub fn dilate(&self, eta: f64) -> Result<DilationFactor> {
        DilationFactor::new(self.alpha, self.beta, eta)
    }
}

impl TargetFn for FunctionSpec {
    fn eval(&self, x: f64) -> Result<Complex64> {
        FunctionSpec::eval(self, x)
    }

    fn is_real(&self) -> bool {
        self.is_real_valued()
    }

    fn is_even(&self) -> bool {
        self.is_even_symmetric()
    }
}

/// The transformation rule f(eta x) = eta^alpha e^{i beta log eta} f(x):
/// a modulus factor and a rotation mixing the cos/sin components by
/// [[cos, -sin], [sin, cos]].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DilationFactor {
    pub scale: f64,
    pub modulus_factor: f64,
    pub rotation: f64,
}

impl DilationFactor {
    pub fn new(alpha: f64, beta: f64, eta: f64) -> Result<Self> {
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(Error::Domain(format!("dilation scale {eta} must be positive")));
        }
        Ok(Self {
            scale: eta,
            modulus_factor: eta.powf(alpha),
            rotation: beta * eta.ln(),
        })
    }

    /// The 2x2 matrix mixing (cos component, sin component) under dilation,
    /// before the common modulus factor.
    pub fn mixing_matrix(&self) -> [[f64; 2]; 2] {
        let (s, c) = self.rotation.sin_cos();
        [[c, -s], [s, c]]
    }

    /// Applies the full transformation to a component pair (f_c(x), f_s(x)),
    /// returning (f_c(eta x), f_s(eta x)).
    pub fn apply(&self, fc: f64, fs: f64) -> (f64, f64) {
        let m = self.mixing_matrix();
        (
            self.modulus_factor * (m[0][0] * fc + m[0][1] * fs),
            self.modulus_factor * (m[1][0] * fc + m[1][1] * fs),
        )
    }

    /// Applies the transformation to a full complex value.
    pub fn apply_complex(&self, f: Complex64) -> Complex64 {
        self.modulus_factor * Complex64::from_polar(1.0, self.rotation) * f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_case() {
        // alpha = 2, beta = 0 is x^2
        let f = FunctionSpec::new(2.0, 0.0, Variant::Full).unwrap();
        let v = f.eval(-3.0).unwrap();
        assert_relative_eq!(v.re, 9.0, max_relative = 1e-14);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn pure_oscillation_at_exp_pi() {
        let f = FunctionSpec::new(0.0, 1.0, Variant::CosPart).unwrap();
        let v = f.eval(std::f64::consts::PI.exp()).unwrap();
        assert_relative_eq!(v.re, -1.0, max_relative = 1e-12);
    }

    #[test]
    fn full_value_matches_direct_exp_log() {
        // 0.5 * exp(-i * 2 log 2)
        let f = FunctionSpec::new(1.0, 2.0, Variant::Full).unwrap();
        let v = f.eval(0.5).unwrap();
        let phase = 2.0 * 2.0_f64.ln();
        assert_relative_eq!(v.re, 0.5 * phase.cos(), epsilon = 1e-14);
        assert_relative_eq!(v.im, -0.5 * phase.sin(), epsilon = 1e-14);
        assert_relative_eq!(v.re, 0.0917285, epsilon = 1e-7);
        assert_relative_eq!(v.im, -0.4915139, epsilon = 1e-7);
    }

    #[test]
    fn zero_handling() {
        let pos = FunctionSpec::new(0.5, 3.0, Variant::Full).unwrap();
        assert_eq!(pos.eval(0.0).unwrap(), Complex64::new(0.0, 0.0));
        let zero = FunctionSpec::new(0.0, 3.0, Variant::Full).unwrap();
        assert!(matches!(zero.eval(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn construction_guards() {
        assert!(FunctionSpec::new(-1.0, 0.0, Variant::Full).is_err());
        assert!(FunctionSpec::with_weights(
            0.5,
            0.0,
            Variant::Full,
            Some((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)))
        )
        .is_err());
    }

    #[test]
    fn conjugate_symmetry_in_beta() {
        let f = FunctionSpec::new(0.5, 2.0, Variant::Full).unwrap();
        let g = FunctionSpec::new(0.5, -2.0, Variant::Full).unwrap();
        for &x in &[0.1, -0.3, 0.7, -1.5, 2.4] {
            let a = f.eval(x).unwrap();
            let b = g.eval(x).unwrap();
            assert_relative_eq!(a.re, b.re, max_relative = 1e-13);
            assert_relative_eq!(a.im, -b.im, max_relative = 1e-13);
        }
    }

    #[test]
    fn evenness_and_pythagoras() {
        let fc = FunctionSpec::new(0.7, 3.0, Variant::CosPart).unwrap();
        let fs = FunctionSpec::new(0.7, 3.0, Variant::SinPart).unwrap();
        for k in -6..6 {
            let x = (0.37 * k as f64).exp();
            assert_relative_eq!(
                fc.eval(x).unwrap().re,
                fc.eval(-x).unwrap().re,
                max_relative = 1e-13
            );
            let (c, s) = (fc.eval(x).unwrap().re, fs.eval(x).unwrap().re);
            assert_relative_eq!(
                c * c + s * s,
                x.abs().powf(1.4),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn signum_variant_is_odd_times_even() {
        let w = Some((Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)));
        let f = FunctionSpec::with_weights(1.0, 0.0, Variant::Full, w).unwrap();
        assert_relative_eq!(f.eval(0.5).unwrap().re, 0.5, max_relative = 1e-14);
        assert_relative_eq!(f.eval(-0.5).unwrap().re, -0.5, max_relative = 1e-14);
        assert!(!f.is_even_symmetric());
    }

    #[test]
    fn dilation_factor_examples() {
        // alpha = 0, beta = 1, eta = e^pi: modulus 1, mixing = -identity
        let d = DilationFactor::new(0.0, 1.0, std::f64::consts::PI.exp()).unwrap();
        assert_relative_eq!(d.modulus_factor, 1.0, max_relative = 1e-12);
        let m = d.mixing_matrix();
        assert_relative_eq!(m[0][0], -1.0, epsilon = 1e-12);
        assert!(m[0][1].abs() < 1e-12);

        // pure homogeneity
        let d = DilationFactor::new(1.0, 0.0, 2.0).unwrap();
        assert_eq!(d.modulus_factor, 2.0);
        assert_eq!(d.rotation, 0.0);

        // direct arithmetic
        let d = DilationFactor::new(0.5, 2.0, 3.0).unwrap();
        assert_relative_eq!(d.modulus_factor, 3.0_f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(d.rotation, 2.0 * 3.0_f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn dilation_consistency_random() {
        // eval(spec, eta*x) equals the mixing formula on (f_c, f_s), 100 cases
        let fc = FunctionSpec::new(0.5, 2.0, Variant::CosPart).unwrap();
        let fs = FunctionSpec::new(0.5, 2.0, Variant::SinPart).unwrap();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let eta = 0.2 + 4.0 * next();
            let x = -2.0 + 4.0 * next();
            if x == 0.0 {
                continue;
            }
            let d = DilationFactor::new(0.5, 2.0, eta).unwrap();
            let (c, s) = (fc.eval(x).unwrap().re, fs.eval(x).unwrap().re);
            let (cd, sd) = d.apply(c, s);
            assert_relative_eq!(cd, fc.eval(eta * x).unwrap().re, max_relative = 1e-11);
            assert_relative_eq!(sd, fs.eval(eta * x).unwrap().re, max_relative = 1e-11);
        }
    }

    #[test]
    fn rejects_nonpositive_dilation() {
        let f = FunctionSpec::new(0.5, 1.0, Variant::Full).unwrap();
        assert!(f.dilate(0.0).is_err());
        assert!(f.dilate(-2.0).is_err());
    }
}
