//! Polynomial representation in Chebyshev or monomial basis, conversion,
//! evaluation, and the sup-norm coefficient bound check.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Monomial conversion beyond this degree is too ill-conditioned to trust.
pub const MONOMIAL_DEGREE_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    ChebyshevFirstKind,
    Monomial,
}

/// A polynomial of degree at most `degree` with complex coefficients.
///
/// Chebyshev coefficients refer to T_k(t) with t the affine image of x
/// mapping `reference_interval` onto [-1, 1]; monomial coefficients are
/// plain powers of x. Trailing zero coefficients are kept — the degree is
/// the representation bound, not the exact degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    degree: usize,
    coeffs: Vec<Complex64>,
    basis: Basis,
    reference_interval: (f64, f64),
}

impl Polynomial {
    pub fn new(
        coeffs: Vec<Complex64>,
        basis: Basis,
        reference_interval: (f64, f64),
    ) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("polynomial needs at least one coefficient".into()));
        }
        let (lo, hi) = reference_interval;
        if !(lo < hi) {
            return Err(Error::Domain(format!("invalid reference interval [{lo}, {hi}]")));
        }
        Ok(Self {
            degree: coeffs.len() - 1,
            coeffs,
            basis,
            reference_interval,
        })
    }

    /// The zero polynomial of the given representation degree.
    pub fn zero(degree: usize, basis: Basis, reference_interval: (f64, f64)) -> Self {
        Self {
            degree,
            coeffs: vec![Complex64::new(0.0, 0.0); degree + 1],
            basis,
            reference_interval,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn reference_interval(&self) -> (f64, f64) {
        self.reference_interval
    }

    /// Maps x to the canonical coordinate t in [-1, 1].
    fn to_canonical(&self, x: f64) -> f64 {
        let (lo, hi) = self.reference_interval;
        (2.0 * x - (lo + hi)) / (hi - lo)
    }

    /// Evaluates at x: Clenshaw recurrence in the Chebyshev basis, Horner in
    /// the monomial basis.
    pub fn eval(&self, x: f64) -> Complex64 {
        match self.basis {
            Basis::Monomial => {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in self.coeffs.iter().rev() {
                    acc = acc * x + c;
                }
                acc
            }
            Basis::ChebyshevFirstKind => {
                let t = self.to_canonical(x);
                let mut b1 = Complex64::new(0.0, 0.0);
                let mut b2 = Complex64::new(0.0, 0.0);
                for c in self.coeffs.iter().skip(1).rev() {
                    let b0 = 2.0 * t * b1 - b2 + c;
                    b2 = b1;
                    b1 = b0;
                }
                self.coeffs[0] + t * b1 - b2
            }
        }
    }

    /// The same function re-expressed in monomial coefficients of x.
    pub fn to_monomial(&self) -> Result<Polynomial> {
        if self.degree > MONOMIAL_DEGREE_CAP {
            return Err(Error::DegreeTooLarge(self.degree));
        }
        let coeffs = match self.basis {
            Basis::Monomial => self.coeffs.clone(),
            Basis::ChebyshevFirstKind => {
                // Chebyshev -> monomial in t via the T recurrence, then
                // compose with the affine map t = s x + u.
                let n = self.degree;
                let zero = Complex64::new(0.0, 0.0);
                let mut in_t = vec![zero; n + 1];
                let mut t_prev = vec![0.0; n + 1]; // T_0
                let mut t_cur = vec![0.0; n + 1]; // T_1
                t_prev[0] = 1.0;
                if n >= 1 {
                    t_cur[1] = 1.0;
                }
                for (k, c) in self.coeffs.iter().enumerate() {
                    let tk = if k == 0 { &t_prev } else { &t_cur };
                    for (acc, b) in in_t.iter_mut().zip(tk) {
                        *acc += c * *b;
                    }
                    if k >= 1 && k < n {
                        // T_{k+1} = 2 t T_k - T_{k-1}
                        let mut next = vec![0.0; n + 1];
                        for j in 0..n {
                            next[j + 1] += 2.0 * t_cur[j];
                        }
                        for j in 0..=n {
                            next[j] -= t_prev[j];
                        }
                        t_prev = t_cur;
                        t_cur = next;
                    }
                }
                let (lo, hi) = self.reference_interval;
                let s = 2.0 / (hi - lo);
                let u = -(lo + hi) / (hi - lo);
                compose_affine(&in_t, s, u)
            }
        };
        Polynomial::new(coeffs, Basis::Monomial, self.reference_interval)
    }

    /// The same function re-expressed in the Chebyshev basis on the same
    /// interval. Exact up to roundoff: the monomial coefficients are first
    /// pulled back to the canonical coordinate, then fed through a Horner
    /// scheme in Chebyshev representation (t T_0 = T_1,
    /// t T_j = (T_{j+1} + T_{j-1}) / 2), which only involves dyadic factors.
    pub fn to_chebyshev(&self) -> Result<Polynomial> {
        if self.basis == Basis::ChebyshevFirstKind {
            return Ok(self.clone());
        }
        let n = self.degree;
        let (lo, hi) = self.reference_interval;
        // q(t) = p(half * t + mid): monomial coefficients in t.
        let q = compose_affine(&self.coeffs, 0.5 * (hi - lo), 0.5 * (lo + hi));
        let zero = Complex64::new(0.0, 0.0);
        let mut b = vec![zero; n + 1];
        for c in q.iter().rev() {
            // b <- t * b + c in the T representation.
            let mut nb = vec![zero; n + 1];
            for j in 0..=n {
                if b[j] == zero {
                    continue;
                }
                if j == 0 {
                    if n >= 1 {
                        nb[1] += b[0];
                    }
                } else {
                    nb[j - 1] += 0.5 * b[j];
                    if j + 1 <= n {
                        nb[j + 1] += 0.5 * b[j];
                    }
                }
            }
            nb[0] += c;
            b = nb;
        }
        Polynomial::new(b, Basis::ChebyshevFirstKind, self.reference_interval)
    }
}

/// Coefficients of p(s x + u) given monomial coefficients of p(t).
fn compose_affine(coeffs: &[Complex64], s: f64, u: f64) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut out = vec![zero; coeffs.len()];
    // Horner: out = ((c_n (sx+u) + c_{n-1}) (sx+u) + ...)
    for c in coeffs.iter().rev() {
        // out = out * (s x + u) + c
        let mut next = vec![zero; coeffs.len()];
        for j in 0..coeffs.len() {
            if out[j] != zero {
                next[j] += out[j] * u;
                if j + 1 < coeffs.len() {
                    next[j + 1] += out[j] * s;
                }
            }
        }
        next[0] += c;
        out = next;
    }
    out
}

/// One row of the sup-norm coefficient bound report: |c_k| against
/// n^k / k! * sup_norm.
#[derive(Debug, Clone, Serialize)]
pub struct CoeffBoundRow {
    pub k: usize,
    pub magnitude: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Per-coefficient report of the check |c_k| <= n^k / k! * sup_norm for a
/// polynomial on [-1, 1] with supplied sup norm.
#[derive(Debug, Clone, Serialize)]
pub struct CoeffBoundReport {
    pub rows: Vec<CoeffBoundRow>,
    pub pass: bool,
}

pub fn coeff_bound_check(p: &Polynomial, sup_norm: f64) -> Result<CoeffBoundReport> {
    let mono = p.to_monomial()?;
    let n = mono.degree();
    let mut rows = Vec::with_capacity(n + 1);
    let mut bound = sup_norm; // n^0 / 0! * sup
    let mut pass = true;
    // Small slack absorbs the roundoff of the basis conversion at the
    // equality cases (e.g. T_n itself attains the bound at k = n... only
    // k=1 of T_3; exact equality must not flip to fail).
    let slack = 1.0 + 1e-9;
    for (k, c) in mono.coeffs().iter().enumerate() {
        if k > 0 {
            bound *= n as f64 / k as f64;
        }
        let magnitude = c.norm();
        let ok = magnitude <= bound * slack + 1e-14;
        pass &= ok;
        rows.push(CoeffBoundRow {
            k,
            magnitude,
            bound,
            pass: ok,
        });
    }
    Ok(CoeffBoundReport { rows, pass })
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = ser.serialize_struct("Polynomial", 4)?;
        s.serialize_field("basis", &self.basis)?;
        s.serialize_field("interval", &self.reference_interval)?;
        s.serialize_field("degree", &self.degree)?;
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        s.serialize_field("coeffs", &pairs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            basis: Basis,
            interval: (f64, f64),
            degree: usize,
            coeffs: Vec<[f64; 2]>,
        }
        let raw = Raw::deserialize(de)?;
        if raw.coeffs.len() != raw.degree + 1 {
            return Err(D::Error::custom("coeffs length must be degree + 1"));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        Polynomial::new(coeffs, raw.basis, raw.interval).map_err(D::Error::custom)
    }
}
