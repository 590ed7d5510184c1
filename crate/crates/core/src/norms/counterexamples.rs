//! `L²` inputs whose images are unbounded: none of `𝔠`, `𝔍₀`, `𝔍₀*` maps
//! `L²` into `L^∞`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::operators::FieldFn;
use crate::quadrature::{integrate_centered, truncated_singular_integral, DiskPoint, DiskRule, Integral, RadialMap};

/// Center `b` of the Cauchy counterexample.
pub const CAUCHY_CENTER: f64 = 0.25;

/// Radius below which the `L²` integrands are replaced by their leading
/// term, integrated in closed form.
const L2_INNER: f64 = 1e-10;

/// Inner cutoff of the boundary-centered rule for the growth integrals.
const GROWTH_INNER: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CounterexampleId {
    /// `g(w) = 1/((b̄ − w̄) log(3/|b − w|))`
    CauchyP2,
    /// `g(w) = 1/((1 − w) log(3/|1 − w|))`
    J0P2,
    /// `g₁(w) = w/((1 − w) log(3/|1 − w|))`
    J0StarP2,
}

impl CounterexampleId {
    pub const ALL: [CounterexampleId; 3] =
        [CounterexampleId::CauchyP2, CounterexampleId::J0P2, CounterexampleId::J0StarP2];

    pub fn name(self) -> &'static str {
        match self {
            CounterexampleId::CauchyP2 => "CAUCHY_P2",
            CounterexampleId::J0P2 => "J0_P2",
            CounterexampleId::J0StarP2 => "J0STAR_P2",
        }
    }
}

impl fmt::Display for CounterexampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CounterexampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "CAUCHY_P2" => Ok(CounterexampleId::CauchyP2),
            "J0_P2" => Ok(CounterexampleId::J0P2),
            "J0STAR_P2" | "J0_STAR_P2" => Ok(CounterexampleId::J0StarP2),
            other => Err(Error::Domain(format!("unknown counterexample {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub id: CounterexampleId,
    pub f: FieldFn,
    /// `2/log(3/2)`, bounding `‖f‖₂²`.
    pub l2_bound: f64,
    pub divergence_law: &'static str,
}

fn log3(d: f64) -> f64 {
    (3.0 / d).ln()
}

pub fn counterexample(id: CounterexampleId) -> Counterexample {
    let l2_bound = 2.0 / 1.5f64.ln();
    let one = Complex64::new(1.0, 0.0);
    match id {
        CounterexampleId::CauchyP2 => {
            let b = Complex64::new(CAUCHY_CENTER, 0.0);
            let f = FieldFn::new(move |w: Complex64| {
                let d = b - w;
                one / (d.conj() * log3(d.norm()))
            })
            .with_singularity(DiskPoint::real(CAUCHY_CENTER).expect("center inside the disk"), 1.0)
            .expect("order 1 is admissible");
            Counterexample {
                id,
                f,
                l2_bound,
                divergence_law: "truncated |C[g](b)| over |w-b| > eps grows like 2 log log(3/eps)",
            }
        }
        CounterexampleId::J0P2 => Counterexample {
            id,
            f: FieldFn::new(move |w: Complex64| one / ((one - w) * log3((one - w).norm()))),
            l2_bound,
            divergence_law: "Re J0[g](r) increases without bound as r -> 1",
        },
        CounterexampleId::J0StarP2 => Counterexample {
            id,
            f: FieldFn::new(move |w: Complex64| w / ((one - w) * log3((one - w).norm()))),
            l2_bound,
            divergence_law: "Re J0*[g1](r) increases without bound as r -> 1",
        },
    }
}

/// `‖g‖₂²`: polar quadrature centered at the singular point for
/// `|w − c| > 1e−10`, plus the inner disk in closed form. Around an interior
/// center the inner piece is `2/log(3/δ)`, around the boundary point `1` it
/// is the half-disk value `1/log(3/δ)`.
pub fn counterexample_l2_norm_sqr(id: CounterexampleId) -> Result<Integral> {
    let ce = counterexample(id);
    let (center, inner) = match id {
        CounterexampleId::CauchyP2 => (DiskPoint::real(CAUCHY_CENTER)?, 2.0 / log3(L2_INNER)),
        _ => (DiskPoint::real(1.0)?, 1.0 / log3(L2_INNER)),
    };
    let rule = DiskRule::default();
    let f = &ce.f;
    let outer = integrate_centered(
        |w| Complex64::new(f.eval(w).norm_sqr(), 0.0),
        center,
        RadialMap::Log { inner: L2_INNER },
        rule.radial_nodes(),
        rule.angular_nodes(),
    )?;
    // the leading-term replacement inside δ is accurate to O(δ)
    Ok(Integral::new(outer.value + inner, outer.abs_error_estimate + L2_INNER))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceFit {
    pub epsilons: Vec<f64>,
    pub values: Vec<f64>,
    /// `2 log log(3/ε)` per level.
    pub transformed: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
}

/// Least-squares line `y ≈ slope·x + intercept`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::Domain("linear fit needs two equally long series of length ≥ 2".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("linear fit needs distinct abscissae".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Truncated `|𝔠[g](b)| = ∫_{|w−b|>ε} dA/(|w − b|² log(3/|w − b|))` on a
/// decreasing `ε` ladder, fitted against `2 log log(3/ε)`; the slope is `1`.
pub fn cauchy_divergence_fit(epsilons: &[f64]) -> Result<DivergenceFit> {
    let ce = counterexample(CounterexampleId::CauchyP2);
    let b = DiskPoint::real(CAUCHY_CENTER)?;
    let bv = b.value();
    let f = &ce.f;
    let values = truncated_singular_integral(|w| f.eval(w) / (w - bv), b, epsilons)?;
    let transformed: Vec<f64> = epsilons.iter().map(|&e| 2.0 * log3(e).ln()).collect();
    let (slope, intercept) = linear_fit(&transformed, &values)?;
    Ok(DivergenceFit { epsilons: epsilons.to_vec(), values, transformed, slope, intercept })
}

/// `G(t, ρ, r) = Re(r/((1 − r w̄)(1 − w) log(3/|1 − w|)))` at `w = ρ e^{it}`:
///
/// `r(1 + rρ² − ρ(1+r)cos t) / ((1 + r²ρ² − 2rρ cos t)(1 + ρ² − 2ρ cos t) log(3/√(1 + ρ² − 2ρ cos t)))`
pub fn fatou_kernel(t: f64, rho: f64, r: f64) -> f64 {
    let c = t.cos();
    let num = r * (1.0 + r * rho * rho - rho * (1.0 + r) * c);
    let a = 1.0 + r * r * rho * rho - 2.0 * r * rho * c;
    let b = 1.0 + rho * rho - 2.0 * rho * c;
    num / (a * b * log3(b.sqrt()))
}

/// Smallest `G(t, ρ, r)` over `n` uniform samples of
/// `(t, ρ, r) ∈ [0, 2π) × (0, 1) × (0, 1)`.
pub fn fatou_positivity<R: Rng + ?Sized>(rng: &mut R, n: usize) -> f64 {
    (0..n)
        .map(|_| {
            let t = rng.gen_range(0.0..2.0 * PI);
            let rho = rng.gen_range(f64::EPSILON..1.0);
            let r = rng.gen_range(f64::EPSILON..1.0);
            fatou_kernel(t, rho, r)
        })
        .fold(f64::INFINITY, f64::min)
}

/// `Re 𝔍₀[g](r)` (`J0_P2`) or `Re 𝔍₀*[g₁](r)` (`J0STAR_P2`) at
/// `r = 1 − 10^{−k}`, by polar quadrature centered at the boundary point `1`.
/// Both integrands are positive, so the values increase with `k`.
pub fn boundary_growth(id: CounterexampleId, ks: &[u32]) -> Result<Vec<(f64, f64)>> {
    let star = match id {
        CounterexampleId::J0P2 => false,
        CounterexampleId::J0StarP2 => true,
        CounterexampleId::CauchyP2 => {
            return Err(Error::Unsupported("CAUCHY_P2 diverges at an interior point; use the ε ladder".into()))
        }
    };
    if ks.is_empty() || ks.iter().any(|&k| !(1..=12).contains(&k)) {
        return Err(Error::Domain("growth levels k must lie in 1..=12".into()));
    }
    let one = DiskPoint::real(1.0)?;
    let rule = DiskRule::default();
    ks.par_iter()
        .map(|&k| {
            let r = 1.0 - 10f64.powi(-(k as i32));
            // G in complex form; the (t, ρ) form cancels catastrophically near w = 1
            let integrand = |w: Complex64| {
                let one = Complex64::new(1.0, 0.0);
                let d = one - w;
                let g = (r / ((one - r * w.conj()) * d * log3(d.norm()))).re;
                Complex64::new(if star { w.norm_sqr() / r * g } else { g }, 0.0)
            };
            let v = integrate_centered(
                integrand,
                one,
                RadialMap::Log { inner: GROWTH_INNER },
                rule.radial_nodes(),
                rule.angular_nodes(),
            )?;
            Ok((r, v.value.re))
        })
        .collect()
}

/// `Δ_z |g_z(w)|²` for `g_z(w) = w (1 − z̄w)^{−1} (log(3/|1 − z w̄|))^{−1}`:
/// `16|w|⁴ A / (C⁴ |1 − z w̄|⁴)` with `C = log|1 − z w̄|² − log 9` and
/// `A = (C + 2)² + 2`.
pub fn subharmonic_laplacian(z: Complex64, w: Complex64) -> f64 {
    let u = (Complex64::new(1.0, 0.0) - z * w.conj()).norm_sqr();
    let c = u.ln() - 9f64.ln();
    let a = (c + 2.0).powi(2) + 2.0;
    16.0 * w.norm_sqr().powi(2) * a / (c.powi(4) * u * u)
}
