//! Operator norms: the closed-form catalog, interpolation bounds, extremal
//! lower bounds, the `L²` mode analysis and the `p = 2` counterexamples.

mod catalog;
mod counterexamples;
mod extremal;
mod modes;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::operators::OperatorId;

pub use catalog::{
    catalan, closed_form_norm, dostanic_bound, j0_zero, j0star_finiteness_bound, kalaj_bound, riesz_thorin_bound,
};
pub use counterexamples::{
    boundary_growth, cauchy_divergence_fit, counterexample, counterexample_l2_norm_sqr, fatou_kernel,
    fatou_positivity, linear_fit, subharmonic_laplacian, Counterexample, CounterexampleId, DivergenceFit,
    CAUCHY_CENTER,
};
pub use extremal::{extremal_function, extremal_lp_norm, lower_bound_via_extremal, sampled_lower_bound};
pub use modes::{
    l2_norm_numeric, mode_best_constant, mode_function, mode_reduce, rayleigh_grid_maximum, ModeReduction,
    RayleighMaximum,
};

/// Target space of a norm query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// `L^p → L^p`
    SameP,
    /// `L^p → L^∞`
    LInfinity,
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "same" | "same_p" | "samep" => Ok(Target::SameP),
            "linf" | "l_infinity" | "linfinity" | "inf" => Ok(Target::LInfinity),
            other => Err(Error::Domain(format!("unknown target {other:?}"))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::SameP => "same",
            Target::LInfinity => "linf",
        })
    }
}

/// `‖operator‖_{L^p → target}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormQuery {
    pub operator: OperatorId,
    pub source_p: Exponent,
    pub target: Target,
}

impl NormQuery {
    /// Validates the exponent/target combination. `L^p → L^∞` is only
    /// meaningful for `p > 2`: for `p ≤ 2` none of the operators maps into
    /// `L^∞` (see [`counterexample`]).
    pub fn new(operator: OperatorId, source_p: Exponent, target: Target) -> Result<Self> {
        if target == Target::LInfinity && source_p.value() <= 2.0 {
            return Err(Error::Domain(format!(
                "{operator} does not map L^{source_p} into L^inf for p ≤ 2"
            )));
        }
        Ok(Self { operator, source_p, target })
    }

    /// `L^∞ → L^∞` and `L^∞ → same` are one and the same query.
    pub fn is_infinite_endpoint(&self) -> bool {
        self.source_p.is_infinite()
    }
}

/// How a reported number relates to the true norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    ExactNorm,
    UpperBound,
    LowerBound,
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormKind::ExactNorm => "EXACT",
            NormKind::UpperBound => "UPPER_BOUND",
            NormKind::LowerBound => "LOWER_BOUND",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormResult {
    pub value: f64,
    pub kind: NormKind,
    pub provenance: String,
    pub error_estimate: f64,
}

impl NormResult {
    pub(crate) fn new(value: f64, kind: NormKind, provenance: impl Into<String>, error_estimate: f64) -> Self {
        Self { value, kind, provenance: provenance.into(), error_estimate: error_estimate.max(0.0) }
    }
}
