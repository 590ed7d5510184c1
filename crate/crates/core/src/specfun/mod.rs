//! Scalar special functions.
//!
//! Everything here is a pure function of its arguments. Gamma ratios and
//! Pochhammer products are carried in log space with signs tracked apart,
//! so coefficients such as `Γ(1+m−q/2) / Γ(−q/2)` stay finite for large `m`.

mod constants;
mod gamma;
mod hypergeometric;

pub use constants::{
    bessel_j0, bessel_j0_smallest_zero, bessel_j1, catalan_constant, catalan_partial_sum,
    riemann_zeta,
};
pub use gamma::{gamma, gautschi_interval, ln_gamma, ln_gamma_signed, pochhammer_log};
pub use hypergeometric::{gauss_2f1_at_1, hyp_pfq, HypergeometricSpec, TERM_CAP};

/// A truncated series together with a bound on what was left out.
///
/// The limit lies in `[value − tail_bound, value + tail_bound]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

impl SeriesValue {
    pub fn lower(&self) -> f64 {
        self.value - self.tail_bound
    }

    pub fn upper(&self) -> f64 {
        self.value + self.tail_bound
    }

    /// True when `x` is inside the enclosure widened by `slack`.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        (x - self.value).abs() <= self.tail_bound + slack
    }

    /// Applies a monotone map to the value and propagates the bound by the
    /// width of the mapped enclosure.
    pub fn map_monotone(&self, f: impl Fn(f64) -> f64) -> SeriesValue {
        let v = f(self.value);
        let a = f(self.lower());
        let b = f(self.upper());
        SeriesValue {
            value: v,
            terms_used: self.terms_used,
            tail_bound: (a - v).abs().max((b - v).abs()),
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Sum of absolute values, used to size rounding allowances.
    pub(crate) fn abs_sum(&self) -> f64 {
        self.abs
    }
}
