//! Log-gamma, signed gamma and Pochhammer symbols.

use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

fn ln_gamma_lanczos(x: f64) -> f64 {
    // valid for x >= 0.5
    let x = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    HALF_LN_TWO_PI + (x + 0.5) * t.ln() - t + a.ln()
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma requires finite x > 0, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if x < 0.5 {
        // reflection: Γ(x)Γ(1−x) = π / sin(πx), sin(πx) > 0 on (0, ½)
        return Ok(PI.ln() - (PI * x).sin().ln() - ln_gamma_lanczos(1.0 - x));
    }
    Ok(ln_gamma_lanczos(x))
}

/// `(ln |Γ(x)|, sign Γ(x))` for any real `x` that is not a nonpositive integer.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() || (x <= 0.0 && x == x.round()) {
        return Err(Error::Domain(format!("Γ has a pole at x = {x}")));
    }
    if x > 0.0 {
        return Ok((ln_gamma(x)?, 1.0));
    }
    let s = (PI * x).sin();
    let ln_abs = PI.ln() - s.abs().ln() - ln_gamma(1.0 - x)?;
    Ok((ln_abs, s.signum()))
}

/// `Γ(x)` for real `x` off the poles.
pub fn gamma(x: f64) -> Result<f64> {
    let (l, s) = ln_gamma_signed(x)?;
    Ok(s * l.exp())
}

/// `ln (q)_n = ln Γ(q + n) − ln Γ(q)` for `q > 0`.
///
/// Short products are summed directly so that small `n` stays exact to
/// rounding; longer ones go through `ln_gamma`.
pub fn pochhammer_log(q: f64, n: u64) -> Result<f64> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::Domain(format!("pochhammer_log requires q > 0, got {q}")));
    }
    if n == 0 {
        return Ok(0.0);
    }
    if n <= 32 {
        return Ok((0..n).map(|k| (q + k as f64).ln()).sum());
    }
    Ok(ln_gamma(q + n as f64)? - ln_gamma(q)?)
}

/// Gautschi's sandwich for `Γ(n + q/2) / n!`, valid for `1 ≤ q ≤ 2`, `n ≥ 1`:
/// returns `((n+1)^{q/2−1}, n^{q/2−1})`.
pub fn gautschi_interval(q: f64, n: u64) -> Result<(f64, f64)> {
    if !(1.0..=2.0).contains(&q) {
        return Err(Error::Domain(format!("Gautschi bounds need 1 ≤ q ≤ 2, got {q}")));
    }
    if n == 0 {
        return Err(Error::Domain("Gautschi bounds need n ≥ 1".into()));
    }
    let e = q / 2.0 - 1.0;
    let n = n as f64;
    Ok(((n + 1.0).powf(e), n.powf(e)))
}
