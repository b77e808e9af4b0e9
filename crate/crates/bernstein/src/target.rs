//! Target functions consumed by the approximation solvers.

use num_complex::Complex64;

use crate::error::Result;

/// A function to be approximated on an interval.
///
/// Implementations must be pure: repeated evaluation at the same point
/// returns the same value, and evaluation is safe from multiple threads.
pub trait TargetFn: Sync {
    fn eval(&self, x: f64) -> Result<Complex64>;

    /// Whether the target is known to be real-valued. Real targets get the
    /// continuum Remez path for p = infinity; complex ones are solved on a grid.
    fn is_real(&self) -> bool {
        false
    }

    /// Whether the target is known to be even, f(-x) = f(x).
    fn is_even(&self) -> bool {
        false
    }
}

/// A real-valued target built from a closure.
pub struct RealTarget<F: Fn(f64) -> f64 + Sync> {
    f: F,
    even: bool,
}

impl<F: Fn(f64) -> f64 + Sync> RealTarget<F> {
    pub fn new(f: F) -> Self {
        Self { f, even: false }
    }

    pub fn even(f: F) -> Self {
        Self { f, even: true }
    }
}

impl<F: Fn(f64) -> f64 + Sync> TargetFn for RealTarget<F> {
    fn eval(&self, x: f64) -> Result<Complex64> {
        Ok(Complex64::new((self.f)(x), 0.0))
    }

    fn is_real(&self) -> bool {
        true
    }

    fn is_even(&self) -> bool {
        self.even
    }
}

/// A complex-valued target built from a closure.
pub struct ComplexTarget<F: Fn(f64) -> Complex64 + Sync> {
    f: F,
    even: bool,
}

impl<F: Fn(f64) -> Complex64 + Sync> ComplexTarget<F> {
    pub fn new(f: F) -> Self {
        Self { f, even: false }
    }

    pub fn even(f: F) -> Self {
        Self { f, even: true }
    }
}

impl<F: Fn(f64) -> Complex64 + Sync> TargetFn for ComplexTarget<F> {
    fn eval(&self, x: f64) -> Result<Complex64> {
        Ok((self.f)(x))
    }

    fn is_even(&self) -> bool {
        self.even
    }
}

/// The target x -> f(eta * x) for a base target f.
pub struct DilatedTarget<'a> {
    base: &'a dyn TargetFn,
    eta: f64,
}

impl<'a> DilatedTarget<'a> {
    pub fn new(base: &'a dyn TargetFn, eta: f64) -> Self {
        Self { base, eta }
    }
}

impl TargetFn for DilatedTarget<'_> {
    fn eval(&self, x: f64) -> Result<Complex64> {
        self.base.eval(self.eta * x)
    }

    fn is_real(&self) -> bool {
        self.base.is_real()
    }

    fn is_even(&self) -> bool {
        self.base.is_even()
    }
}
