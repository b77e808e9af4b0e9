//! Scalar machinery: L_p quasinorms on graded grids, the complex gamma
//! function, and bracketed root finding.

mod gamma;
mod quadrature;
mod roots;

pub use gamma::complex_gamma;
pub use quadrature::{gauss_legendre, lp_quasinorm, QuadratureGrid};
pub use roots::bracketed_root;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integrability exponent p in [1, inf] with its derived triangle exponent
/// p~ = min{1, p}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PNorm {
    Finite(f64),
    Infinity,
}

impl PNorm {
    /// Builds a finite exponent; rejects p < 1 (no convergent solver exists
    /// for quasinorm exponents below 1).
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() {
            if p > 0.0 {
                return Ok(PNorm::Infinity);
            }
            return Err(Error::UnsupportedExponent(p));
        }
        if p < 1.0 {
            return Err(Error::UnsupportedExponent(p));
        }
        Ok(PNorm::Finite(p))
    }

    pub fn infinity() -> Self {
        PNorm::Infinity
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PNorm::Infinity)
    }

    pub fn value(&self) -> f64 {
        match self {
            PNorm::Finite(p) => *p,
            PNorm::Infinity => f64::INFINITY,
        }
    }

    /// The exponent making the triangle inequality hold for the quasinorm.
    /// With p >= 1 this is always 1; retained to keep the contract explicit.
    pub fn p_tilde(&self) -> f64 {
        match self {
            PNorm::Finite(p) => p.min(1.0),
            PNorm::Infinity => 1.0,
        }
    }

    /// The scaling exponent 1/p (0 for p = infinity).
    pub fn inv(&self) -> f64 {
        match self {
            PNorm::Finite(p) => 1.0 / p,
            PNorm::Infinity => 0.0,
        }
    }
}

impl Serialize for PNorm {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PNorm::Finite(p) => ser.serialize_f64(*p),
            PNorm::Infinity => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PNorm {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(p) => PNorm::new(p).map_err(D::Error::custom),
            Raw::Str(s) if s == "inf" => Ok(PNorm::Infinity),
            Raw::Str(s) => Err(D::Error::custom(format!("invalid p: {s}"))),
        }
    }
}

/// Parses a p value from CLI-style text: "1", "2", "inf", or any real >= 1.
impl std::str::FromStr for PNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(PNorm::Infinity);
        }
        let p: f64 = s
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse p from {s:?}")))?;
        PNorm::new(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_tilde_is_min_of_one_and_p() {
        assert_eq!(PNorm::new(1.0).unwrap().p_tilde(), 1.0);
        assert_eq!(PNorm::new(2.0).unwrap().p_tilde(), 1.0);
        assert_eq!(PNorm::Infinity.p_tilde(), 1.0);
    }

    #[test]
    fn rejects_sub_one_exponents() {
        assert!(matches!(
            PNorm::new(0.5),
            Err(Error::UnsupportedExponent(_))
        ));
    }

    #[test]
    fn parses_inf() {
        assert!("inf".parse::<PNorm>().unwrap().is_infinite());
        assert_eq!("2".parse::<PNorm>().unwrap().value(), 2.0);
    }
}
