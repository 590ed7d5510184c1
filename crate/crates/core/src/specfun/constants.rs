//! Bessel `J₀` and its first zero, Catalan's constant, Riemann `ζ`.

use crate::error::{Error, Result};

use super::SeriesValue;

/// `J₀(x) = Σ (−1)^k (x/2)^{2k} / (k!)²`, summed until terms drop below
/// rounding. Intended for moderate `|x|` (the series cancels badly past ~20).
pub fn bessel_j0(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -y / (k * k);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            return sum;
        }
    }
}

/// `J₁(x) = Σ (−1)^k (x/2)^{2k+1} / (k!(k+1)!)`; `J₀' = −J₁`.
pub fn bessel_j1(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = 0.5 * x;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -y / (k * (k + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            return sum;
        }
    }
}

/// Smallest positive zero `j₀` of `J₀`, by Newton iteration from `2.4`.
pub fn bessel_j0_smallest_zero() -> f64 {
    let mut x = 2.4;
    for _ in 0..50 {
        let step = bessel_j0(x) / -bessel_j1(x);
        x -= step;
        if step.abs() < 1e-15 * x {
            break;
        }
    }
    x
}

/// Catalan's constant `Σ (−1)^k / (2k+1)²` with `tail_bound ≤ tol`.
///
/// Uses the Cohen–Rodriguez Villegas–Zagier acceleration for alternating
/// series. The coefficients are moments of a positive measure on `[0, 1]`
/// (`1/(2k+1)² = ∫₀¹ x^k (−ln x)/(4√x) dx`), which gives the error bound
/// `2 a₀ / (3+√8)^n` after `n` terms.
pub fn catalan_constant(tol: f64) -> Result<SeriesValue> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let base = 3.0 + 8f64.sqrt();
    let mut n = 1usize;
    while 2.0 / base.powi(n as i32) + 1e-16 * n as f64 > tol && n < 60 {
        n += 1;
    }
    let mut d = base.powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..n {
        c = b - c;
        let a_k = 1.0 / ((2 * k + 1) as f64).powi(2);
        s += c * a_k;
        let (kf, nf) = (k as f64, n as f64);
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    Ok(SeriesValue {
        value: s / d,
        terms_used: n,
        tail_bound: 2.0 / base.powi(n as i32) + 1e-16 * n as f64,
    })
}

/// Raw alternating partial sum of Catalan's series with the
/// alternating-series remainder bound `1/(2·terms+1)²`.
pub fn catalan_partial_sum(terms: usize) -> Result<SeriesValue> {
    if terms == 0 {
        return Err(Error::Domain("a partial sum needs at least one term".into()));
    }
    let value = (0..terms)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign / ((2 * k + 1) as f64).powi(2)
        })
        .sum();
    Ok(SeriesValue { value, terms_used: terms, tail_bound: 1.0 / ((2 * terms + 1) as f64).powi(2) })
}

// B_{2k} / (2k)! for k = 1..=8
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// Riemann `ζ(s)` for real `s > 1`, by Euler–Maclaurin summation with 16
/// direct terms and eight Bernoulli corrections.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::Domain(format!("ζ(s) requires s > 1, got {s}")));
    }
    if s.is_infinite() {
        return Ok(1.0);
    }
    const N: usize = 16;
    let n = N as f64;
    let mut sum: f64 = (1..N).map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // (s)_{2k−1} N^{−s−2k+1}
    let mut rising = s;
    let mut power = n.powf(-s - 1.0);
    for (k, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        sum += c * rising * power;
        let m = 2.0 * k as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        power /= n * n;
    }
    Ok(sum)
}
