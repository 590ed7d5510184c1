//! `𝔍₀*` on angular modes `f_d(r) e^{idt}`.
//!
//! By the residue theorem only the `k = d − 1` term of the kernel series
//! survives the angular integral, so `𝔍₀*[f_d e^{idt}](z) = 2 A_d z^{d−1}`
//! with `A_d = ∫₀¹ r^{d+1} f_d(r) dr`, and `0` for `d < 1`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{NormKind, NormResult};
use crate::error::{Error, Result};
use crate::operators::FieldFn;
use crate::quadrature::GaussLegendre;

const REDUCTION_NODES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeReduction {
    pub d: i64,
    /// `2 A_d`, or `0` when `d < 1`.
    pub coefficient: f64,
}

impl ModeReduction {
    /// `2 A_d z^{d−1}`.
    pub fn image(&self, z: Complex64) -> Complex64 {
        if self.d < 1 {
            return Complex64::new(0.0, 0.0);
        }
        self.coefficient * z.powu((self.d - 1) as u32)
    }
}

pub fn mode_reduce(d: i64, f_d: impl Fn(f64) -> f64) -> ModeReduction {
    if d < 1 {
        return ModeReduction { d, coefficient: 0.0 };
    }
    let gl = GaussLegendre::new(REDUCTION_NODES);
    let a_d = gl.integrate(0.0, 1.0, |r| r.powi(d as i32 + 1) * f_d(r));
    ModeReduction { d, coefficient: 2.0 * a_d }
}

/// `w = r e^{it} ↦ f_d(r) e^{idt}`.
pub fn mode_function(d: i64, f_d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> FieldFn {
    FieldFn::new(move |w: Complex64| {
        let (r, t) = w.to_polar();
        f_d(r) * Complex64::from_polar(1.0, d as f64 * t)
    })
}

/// `sup ‖𝔍₀*[g]‖²/‖g‖²` over mode-`d` inputs: `1/(d(d+1))`, attained by
/// `f_d(r) = r^d`.
pub fn mode_best_constant(d: u32) -> Result<(f64, impl Fn(f64) -> f64 + Send + Sync + Copy)> {
    if d < 1 {
        return Err(Error::Domain("modes with d < 1 are annihilated; the constant is 0".into()));
    }
    let df = d as f64;
    Ok((1.0 / (df * (df + 1.0)), move |r: f64| r.powi(d as i32)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RayleighMaximum {
    pub d: u32,
    pub value: f64,
    /// Radial grid (Gauss–Legendre nodes on `(0, 1)`).
    pub nodes: Vec<f64>,
    /// Maximizing `f_d` on the grid, scaled to `f_d(r_max) = r_max^d`.
    pub maximizer: Vec<f64>,
    pub iterations: usize,
}

/// Maximizes `(4A_d²/d) / (2∫₀¹ r f_d² dr)` over `f_d` sampled on an
/// `n`-point grid.
///
/// With `u_i = √(ω_i r_i) f_i` the quotient is `uᵀ(2/d)vvᵀu / uᵀu` for
/// `v_i = √ω_i r_i^{d+½}`; power iteration on that rank-one form.
pub fn rayleigh_grid_maximum(d: u32, n: usize) -> Result<RayleighMaximum> {
    if d < 1 {
        return Err(Error::Domain("Rayleigh maximization needs d ≥ 1".into()));
    }
    if n < 2 {
        return Err(Error::Configuration("radial grid needs at least 2 points".into()));
    }
    let gl = GaussLegendre::new(n);
    let (nodes, weights): (Vec<f64>, Vec<f64>) = gl.iter().unzip();
    let df = d as f64;
    let v: Vec<f64> = nodes.iter().zip(&weights).map(|(r, w)| w.sqrt() * r.powf(df + 0.5)).collect();
    let apply = |u: &[f64]| -> Vec<f64> {
        let dot: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
        v.iter().map(|a| 2.0 / df * a * dot).collect()
    };
    let mut u = vec![1.0; n];
    let mut value = 0.0;
    let mut iterations = 0;
    for it in 1..=50 {
        iterations = it;
        let next = apply(&u);
        let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        let uu: f64 = u.iter().map(|x| x * x).sum();
        let rq = u.iter().zip(&next).map(|(a, b)| a * b).sum::<f64>() / uu;
        u = next.iter().map(|x| x / norm).collect();
        let done = (rq - value).abs() <= 1e-15 * rq;
        value = rq;
        if done {
            break;
        }
    }
    let mut maximizer: Vec<f64> = u.iter().zip(nodes.iter().zip(&weights)).map(|(x, (r, w))| x / (w * r).sqrt()).collect();
    let last = nodes.len() - 1;
    let s = nodes[last].powf(df) / maximizer[last];
    maximizer.iter_mut().for_each(|x| *x *= s);
    Ok(RayleighMaximum { d, value, nodes, maximizer, iterations })
}

/// `‖𝔍₀*‖₂` as the square root of the largest mode constant over
/// `d = 1..=max_d`, each found by grid maximization.
pub fn l2_norm_numeric(max_d: u32) -> Result<NormResult> {
    if max_d < 1 {
        return Err(Error::Domain("max_d must be at least 1".into()));
    }
    let mut best: f64 = 0.0;
    let mut prev = f64::INFINITY;
    for d in 1..=max_d {
        let m = rayleigh_grid_maximum(d, 1000)?.value;
        if m > prev {
            return Err(Error::Precision { value: m, bound: prev, terms: d as usize });
        }
        prev = m;
        best = best.max(m);
    }
    let value = best.sqrt();
    Ok(NormResult::new(
        value,
        NormKind::ExactNorm,
        "L^2 norm of J0*, largest angular-mode constant 1/(d(d+1)) at d = 1",
        (value - FRAC_1_SQRT_2).abs(),
    ))
}
