//! Generalized hypergeometric series `pFq` on `[0, 1]`.

use crate::error::{Error, Result};

use super::gamma::ln_gamma_signed;
use super::{CompensatedSum, SeriesValue};

/// Hard cap on the number of series terms summed by [`hyp_pfq`].
pub const TERM_CAP: usize = 10_000_000;

const MIN_TERMS: usize = 50;
const FIRST_CHECKPOINT: usize = 64;
const MAX_RICHARDSON_COLUMNS: usize = 8;

/// Parameters of `pFq[a₁…a_p; b₁…b_q; x]` with real `x ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec {
    upper: Vec<f64>,
    lower: Vec<f64>,
    argument: f64,
}

impl HypergeometricSpec {
    pub fn new(upper: Vec<f64>, lower: Vec<f64>, argument: f64) -> Result<Self> {
        if upper.iter().chain(&lower).any(|v| !v.is_finite()) {
            return Err(Error::Domain("hypergeometric parameters must be finite".into()));
        }
        if let Some(b) = lower.iter().find(|&&b| b <= 0.0 && b == b.round()) {
            return Err(Error::Domain(format!("lower parameter {b} is a nonpositive integer")));
        }
        if !(0.0..=1.0).contains(&argument) {
            return Err(Error::Domain(format!("argument {argument} outside [0, 1]")));
        }
        let spec = Self { upper, lower, argument };
        if !spec.terminates() && argument > 0.0 {
            let (p, q) = (spec.upper.len(), spec.lower.len());
            if p > q + 1 {
                return Err(Error::Divergence(format!("{p}F{q} diverges for every x > 0")));
            }
            if p == q + 1 && argument == 1.0 && spec.excess() <= 0.0 {
                return Err(Error::Divergence(format!(
                    "{p}F{q} at x = 1 needs Σb − Σa > 0, got {}",
                    spec.excess()
                )));
            }
        }
        Ok(spec)
    }

    /// Shorthand for `2F1(a, b; c; x)`.
    pub fn gauss(a: f64, b: f64, c: f64, x: f64) -> Result<Self> {
        Self::new(vec![a, b], vec![c], x)
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    /// `Σ lower − Σ upper`; the terms at `x = 1` decay like `n^{−1−excess}`.
    pub fn excess(&self) -> f64 {
        self.lower.iter().sum::<f64>() - self.upper.iter().sum::<f64>()
    }

    fn terminates(&self) -> bool {
        self.upper.iter().any(|&a| a <= 0.0 && a == a.round())
    }

    /// `|t_{n+1} / t_n|`.
    fn ratio(&self, n: f64) -> f64 {
        let num: f64 = self.upper.iter().map(|a| (a + n).abs()).product();
        let den: f64 = self.lower.iter().map(|b| (b + n).abs()).product();
        num / den * self.argument / (n + 1.0)
    }

    /// Sampled supremum of the term ratio over `[n, ∞)`.
    fn ratio_sup(&self, n: usize) -> f64 {
        let limit = if self.upper.len() == self.lower.len() + 1 { self.argument } else { 0.0 };
        let mut sup = limit;
        let mut m = n as f64;
        for k in 0..120 {
            sup = sup.max(self.ratio(m));
            m = if k < 8 { m + 1.0 } else { m * 1.4 };
        }
        sup
    }
}

/// Term generator: carries `ln |t_n|` and the sign of `t_n`.
struct Terms<'a> {
    spec: &'a HypergeometricSpec,
    n: usize,
    ln_abs: f64,
    sign: f64,
    ln_x: f64,
    dead: bool,
}

impl<'a> Terms<'a> {
    fn new(spec: &'a HypergeometricSpec) -> Self {
        Self { spec, n: 0, ln_abs: 0.0, sign: 1.0, ln_x: spec.argument.ln(), dead: false }
    }

    /// Returns `t_n` and advances to `n + 1`.
    fn next_term(&mut self) -> f64 {
        let t = if self.dead { 0.0 } else { self.sign * self.ln_abs.exp() };
        if !self.dead {
            let n = self.n as f64;
            if self.spec.argument == 0.0 {
                self.dead = true;
            }
            let mut step = self.ln_x - (n + 1.0).ln();
            for &a in &self.spec.upper {
                let f = a + n;
                if f == 0.0 {
                    self.dead = true;
                }
                step += f.abs().ln();
                self.sign *= f.signum();
            }
            for &b in &self.spec.lower {
                let f = b + n;
                step -= f.abs().ln();
                self.sign *= f.signum();
            }
            self.ln_abs += step;
        }
        self.n += 1;
        t
    }
}

/// Sums `pFq` with a tail bound `≤ tol · max(1, |value|)`.
///
/// Two regimes:
///
/// - `x < 1` (or `p ≤ q`): terms are summed until the stopping rule
///   `|t_n| < tol·|S|`, `n ≥ 50` fires, then the remainder is bounded by a
///   geometric majorant built from the supremum of the term ratio beyond `n`.
/// - `x = 1`, `p = q + 1`: the terms decay algebraically like `n^{−1−s}` with
///   `s = Σb − Σa`, so partial sums at `64·2^k` terms are Richardson
///   extrapolated with the known exponents `s, s+1, s+2, …`; the bound is the
///   disagreement between the last two extrapolation levels (doubled).
///
/// Terminating series (some `a_i` a nonpositive integer) are summed exactly.
pub fn hyp_pfq(spec: &HypergeometricSpec, tol: f64) -> Result<SeriesValue> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let unit = spec.argument == 1.0 && spec.upper.len() == spec.lower.len() + 1;
    if unit && !spec.terminates() {
        sum_unit_argument(spec, tol)
    } else {
        sum_geometric(spec, tol)
    }
}

fn sum_geometric(spec: &HypergeometricSpec, tol: f64) -> Result<SeriesValue> {
    let mut terms = Terms::new(spec);
    let mut sum = CompensatedSum::default();
    loop {
        let t = terms.next_term();
        sum.add(t);
        let used = terms.n;
        let value = sum.value();
        let rounding = 4.0 * f64::EPSILON * sum.abs_sum();
        if terms.dead {
            return Ok(SeriesValue { value, terms_used: used, tail_bound: rounding });
        }
        let target = tol * value.abs().max(1.0);
        if used >= MIN_TERMS && t.abs() < tol * value.abs().max(f64::MIN_POSITIVE) {
            let rho = spec.ratio_sup(used - 1);
            if rho < 1.0 {
                let tail = 2.0 * t.abs() * rho / (1.0 - rho) + rounding;
                if tail <= target {
                    return Ok(SeriesValue { value, terms_used: used, tail_bound: tail });
                }
            }
        }
        if used >= TERM_CAP {
            let rho = spec.ratio_sup(used - 1);
            let bound = if rho < 1.0 { 2.0 * t.abs() * rho / (1.0 - rho) } else { f64::INFINITY };
            return Err(Error::Precision { value, bound, terms: used });
        }
    }
}

fn sum_unit_argument(spec: &HypergeometricSpec, tol: f64) -> Result<SeriesValue> {
    let s = spec.excess();
    let mut terms = Terms::new(spec);
    let mut sum = CompensatedSum::default();
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut checkpoint = FIRST_CHECKPOINT;
    let mut best: Option<SeriesValue> = None;
    loop {
        while terms.n < checkpoint {
            sum.add(terms.next_term());
        }
        let row_index = table.len();
        let mut row = vec![sum.value()];
        let mut amplification = 1.0;
        if row_index > 0 {
            let prev = &table[row_index - 1];
            let cols = (row_index).min(MAX_RICHARDSON_COLUMNS);
            for j in 1..=cols {
                let f = 2f64.powf(s + (j - 1) as f64);
                let v = (f * row[j - 1] - prev[j - 1]) / (f - 1.0);
                amplification *= (f + 1.0) / (f - 1.0);
                row.push(v);
            }
        }
        if row.len() >= 3 {
            let j = row.len() - 1;
            let prev = &table[row_index - 1];
            let diff = (row[j] - row[j - 1]).abs().max((row[j] - prev[j - 1]).abs());
            let rounding = 8.0 * f64::EPSILON * sum.abs_sum() * amplification;
            let candidate = SeriesValue {
                value: row[j],
                terms_used: terms.n,
                tail_bound: 2.0 * diff + rounding,
            };
            if candidate.tail_bound <= tol * candidate.value.abs().max(1.0) {
                return Ok(candidate);
            }
            if best.map_or(true, |b| candidate.tail_bound < b.tail_bound) {
                best = Some(candidate);
            }
        }
        table.push(row);
        if checkpoint * 2 > TERM_CAP {
            let b = best.unwrap_or(SeriesValue {
                value: sum.value(),
                terms_used: terms.n,
                tail_bound: f64::INFINITY,
            });
            return Err(Error::Precision { value: b.value, bound: b.tail_bound, terms: b.terms_used });
        }
        checkpoint *= 2;
    }
}

/// Gauss's summation `2F1(a, b; c; 1) = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b))`,
/// valid for `c − a − b > 0`.
pub fn gauss_2f1_at_1(a: f64, b: f64, c: f64) -> Result<f64> {
    let excess = c - a - b;
    if !(excess > 0.0) {
        return Err(Error::Divergence(format!("2F1 at 1 needs c − a − b > 0, got {excess}")));
    }
    if c <= 0.0 && c == c.round() {
        return Err(Error::Domain(format!("c = {c} is a nonpositive integer")));
    }
    let is_pole = |x: f64| x <= 0.0 && x == x.round();
    // 1/Γ vanishes at the poles, which makes the whole sum zero.
    if is_pole(c - a) || is_pole(c - b) {
        return Ok(0.0);
    }
    let (lc, sc) = ln_gamma_signed(c)?;
    let (le, se) = ln_gamma_signed(excess)?;
    let (la, sa) = ln_gamma_signed(c - a)?;
    let (lb, sb) = ln_gamma_signed(c - b)?;
    Ok(sc * se * sa * sb * (lc + le - la - lb).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::ln_gamma;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_argument_is_one() {
        let spec = HypergeometricSpec::gauss(0.3, 0.8, 1.5, 0.0).unwrap();
        let v = hyp_pfq(&spec, 1e-12).unwrap();
        assert_eq!(v.value, 1.0);
        assert_eq!(v.terms_used, 1);
    }

    #[test]
    fn gauss_identity_four_over_pi() {
        let spec = HypergeometricSpec::gauss(0.5, 0.5, 2.0, 1.0).unwrap();
        let v = hyp_pfq(&spec, 1e-12).unwrap();
        assert!((v.value - 4.0 / PI).abs() < 1e-10, "{v:?}");
        assert!(v.contains(4.0 / PI, 1e-14));
        assert!((gauss_2f1_at_1(0.5, 0.5, 2.0).unwrap() - 1.273_239_544_7).abs() < 1e-10);
    }

    #[test]
    fn gauss_closed_form_examples() {
        let q = 1.5;
        let direct = (ln_gamma(0.5).unwrap() - 2.0 * ln_gamma(1.25).unwrap()).exp();
        let g = gauss_2f1_at_1(q / 2.0, q / 2.0, 2.0).unwrap();
        assert!((g - direct).abs() < 1e-13);
        // mpmath: Γ(1/2)/Γ(5/4)²
        assert!((g - 2.157_410_404_753_517).abs() < 1e-12);
        assert_eq!(gauss_2f1_at_1(0.0, 0.7, 1.9).unwrap(), 1.0);
        assert!(matches!(gauss_2f1_at_1(1.0, 1.0, 2.0), Err(Error::Divergence(_))));
        // Chu–Vandermonde: 2F1(−2, b; c; 1) = (c−b)_2/(c)_2
        let v = gauss_2f1_at_1(-2.0, 0.5, 3.0).unwrap();
        assert!((v - (2.5 * 3.5) / (3.0 * 4.0)).abs() < 1e-13);
    }

    #[test]
    fn catalan_series_via_3f2() {
        // (2/3)·3F2(3/2, 1/2, 1/2; 1, 5/2; 1) = (1 + 2G)/π
        let spec = HypergeometricSpec::new(vec![1.5, 0.5, 0.5], vec![1.0, 2.5], 1.0).unwrap();
        let v = hyp_pfq(&spec, 1e-11).unwrap();
        let expected = (1.0 + 2.0 * 0.915_965_594_177_219) / PI;
        assert!((2.0 / 3.0 * v.value - expected).abs() < 1e-9, "{v:?}");
        assert!(v.contains(1.5 * expected, 1e-12));
        // independent oracle: 2Σ (Γ(n+½)/(n!Γ(½)))² / (2n+3) with the
        // n^{-2} tail handled by averaging partial sums at N and 2N
        let mut c = 1.0f64;
        let mut s = 0.0;
        let n_max = 2_000_000;
        let mut s_half = 0.0;
        for n in 0..n_max {
            s += 2.0 * c * c / (2.0 * n as f64 + 3.0);
            if n + 1 == n_max / 2 {
                s_half = s;
            }
            c *= (n as f64 + 0.5) / (n as f64 + 1.0);
        }
        // tail ~ C/N: extrapolate
        let extrap = 2.0 * s - s_half;
        assert!((extrap - expected).abs() < 1e-9, "{extrap} vs {expected}");
    }

    #[test]
    fn terminating_series_is_exact() {
        // 2F1(−3, 1; 1; x) = (1−x)^3
        let spec = HypergeometricSpec::gauss(-3.0, 1.0, 1.0, 0.4).unwrap();
        let v = hyp_pfq(&spec, 1e-14).unwrap();
        assert!((v.value - 0.6f64.powi(3)).abs() < 1e-15);
        let spec = HypergeometricSpec::gauss(-3.0, 2.0, 1.0, 1.0).unwrap();
        assert!((hyp_pfq(&spec, 1e-14).unwrap().value - gauss_2f1_at_1(-3.0, 2.0, 1.0).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(matches!(HypergeometricSpec::gauss(1.0, 1.0, -2.0, 0.5), Err(Error::Domain(_))));
        assert!(matches!(HypergeometricSpec::gauss(1.0, 1.0, 1.5, 1.0), Err(Error::Divergence(_))));
        assert!(matches!(HypergeometricSpec::gauss(1.0, 1.0, 1.5, 1.2), Err(Error::Domain(_))));
        assert!(matches!(
            HypergeometricSpec::new(vec![1.0, 1.0, 1.0], vec![1.0], 0.5),
            Err(Error::Divergence(_))
        ));
        let spec = HypergeometricSpec::gauss(0.5, 0.5, 2.0, 0.5).unwrap();
        assert!(hyp_pfq(&spec, 0.0).is_err());
    }

    #[test]
    fn geometric_regime_matches_closed_forms() {
        // 2F1(1, 1; 2; x) = −ln(1−x)/x
        let x = 0.9;
        let spec = HypergeometricSpec::gauss(1.0, 1.0, 2.0, x).unwrap();
        let v = hyp_pfq(&spec, 1e-13).unwrap();
        let exact = -(1.0 - x as f64).ln() / x;
        assert!((v.value - exact).abs() <= v.tail_bound + 1e-14, "{v:?} {exact}");
        // 1F0(a;;x) = (1−x)^{−a}
        let spec = HypergeometricSpec::new(vec![0.7], vec![], 0.5).unwrap();
        let v = hyp_pfq(&spec, 1e-13).unwrap();
        assert!((v.value - 0.5f64.powf(-0.7)).abs() <= v.tail_bound + 1e-14);
        // 0F0(;;1) = e
        let spec = HypergeometricSpec::new(vec![], vec![], 1.0).unwrap();
        let v = hyp_pfq(&spec, 1e-14).unwrap();
        assert!((v.value - std::f64::consts::E).abs() < 1e-14);
    }

    #[test]
    fn unreachable_tolerance_is_precision_error() {
        // terms ~ n^{-1.001}: extrapolation cannot certify 1e-15 within the cap
        let spec = HypergeometricSpec::gauss(0.4995, 0.5, 1.0, 1.0).unwrap();
        match hyp_pfq(&spec, 1e-15) {
            Err(Error::Precision { value, bound, .. }) => {
                assert!(value.is_finite() && bound > 0.0);
            }
            other => panic!("expected precision error, got {other:?}"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn unit_argument_agrees_with_gauss(a in 0.05f64..1.5, b in 0.05f64..1.5, extra in 0.25f64..2.0) {
            let c = a + b + extra;
            let spec = HypergeometricSpec::gauss(a, b, c, 1.0).unwrap();
            let series = hyp_pfq(&spec, 1e-9).unwrap();
            let closed = gauss_2f1_at_1(a, b, c).unwrap();
            prop_assert!((series.value - closed).abs() <= series.tail_bound + 1e-10,
                "a={} b={} c={} series={:?} closed={}", a, b, c, series, closed);
        }
    }
}
