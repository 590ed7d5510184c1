//! Lebesgue exponents and conjugate pairs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A Lebesgue exponent `p ∈ [1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const INFINITY: Exponent = Exponent(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::Domain(format!("exponent p = {p} must lie in [1, ∞]")));
        }
        Ok(Self(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        if self.is_infinite() {
            0.0
        } else {
            1.0 / self.0
        }
    }

    /// `1 − 1/p`, the power applied to the dual profile in every
    /// `L^p → L^∞` formula.
    pub fn dual_power(self) -> f64 {
        1.0 - self.reciprocal()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if matches!(t.as_str(), "inf" | "infinity" | "∞") {
            return Ok(Self::INFINITY);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse exponent '{s}'")))?;
        Self::new(p)
    }
}

/// A conjugate pair `(p, q)` with `1/p + 1/q = 1`.
///
/// Both members are produced from a single constructor so every profile
/// call made with the pair sees the same representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conjugate {
    p: f64,
    q: f64,
}

impl Conjugate {
    /// Builds the pair from `p ∈ (1, ∞]`; `p = ∞` gives `q = 1`.
    pub fn from_p(p: f64) -> Result<Self> {
        if p.is_nan() || p <= 1.0 {
            return Err(Error::Domain(format!("conjugate pair needs p > 1, got {p}")));
        }
        let q = if p.is_infinite() { 1.0 } else { p / (p - 1.0) };
        Ok(Self { p, q })
    }

    /// Builds the pair from `q ∈ [1, ∞)`; `q = 1` gives `p = ∞`.
    pub fn from_q(q: f64) -> Result<Self> {
        if q.is_nan() || q < 1.0 || q.is_infinite() {
            return Err(Error::Domain(format!("conjugate pair needs q ∈ [1, ∞), got {q}")));
        }
        let p = if q == 1.0 { f64::INFINITY } else { q / (q - 1.0) };
        Ok(Self { p, q })
    }

    pub fn p(self) -> f64 {
        self.p
    }

    pub fn q(self) -> f64 {
        self.q
    }

    /// `1 − 1/p`, which equals `1/q`.
    pub fn dual_power(self) -> f64 {
        1.0 / self.q
    }
}
