//! Unit-norm inputs that (nearly) attain the `L^p → L^∞` norms, and
//! sampled lower bounds from random polynomials.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use super::{NormKind, NormQuery, NormResult, Target};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::operators::{apply, FieldFn, OperatorId};
use crate::poly::Poly;
use crate::profiles::{profile_k, profile_m, profile_n};
use crate::quadrature::{integrate_disk, integrate_disk_singular, DiskPoint, DiskRule, Singularity};

fn unsupported(op: OperatorId, p: Exponent) -> Error {
    Error::Unsupported(format!("no extremal family for {op} at p = {p}; need p > 2"))
}

/// Extremal family for `(op, p)` concentrated at `b`:
///
/// - `CAUCHY`: `K_p(|b|)^{−1/p} (w − b)/|w − b|^q`
/// - `J0`: `M_q(|b|)^{−1/p} (b̄/(1 − w b̄)) |(1 − w b̄)/b̄|^{(p−2)/(p−1)}`, `b ≠ 0`
/// - `J0_STAR`: `N_q(|b|)^{−1/p} (w/(1 − b̄ w)) |(1 − b̄ w)/w|^{(p−2)/(p−1)}`
///
/// At `p = ∞` the exponent `(p−2)/(p−1)` becomes `1` and the functions are
/// unimodular.
pub fn extremal_function(op: OperatorId, p: Exponent, b: DiskPoint) -> Result<FieldFn> {
    if !(p.value() > 2.0) {
        return Err(unsupported(op, p));
    }
    if !b.is_interior() {
        return Err(Error::Domain(format!("extremal center {} must lie inside the disk", b.value())));
    }
    let bv = b.value();
    let rho = b.modulus();
    let (inv_p, q, expo) = if p.is_infinite() {
        (0.0, 1.0, 1.0)
    } else {
        let pv = p.value();
        (1.0 / pv, pv / (pv - 1.0), (pv - 2.0) / (pv - 1.0))
    };
    match op {
        OperatorId::Cauchy => {
            let k = profile_k(p.value(), rho)?;
            let c = k.powf(-inv_p);
            let f = FieldFn::new(move |w: Complex64| {
                let d = w - bv;
                let m = d.norm();
                if m == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    d * (c / m.powf(q))
                }
            });
            if p.is_infinite() {
                Ok(f)
            } else {
                f.with_singularity(b, q - 1.0)
            }
        }
        OperatorId::J0 => {
            if rho == 0.0 {
                return Err(Error::Domain("the J0 family degenerates at b = 0".into()));
            }
            let c = profile_m(q, rho)?.powf(-inv_p);
            let bc = bv.conj();
            Ok(FieldFn::new(move |w: Complex64| {
                let t = Complex64::new(1.0, 0.0) - w * bc;
                bc / t * ((t / bc).norm().powf(expo) * c)
            }))
        }
        OperatorId::J0Star => {
            let c = profile_n(q, rho, 1e-14)?.value.powf(-inv_p);
            let bc = bv.conj();
            Ok(FieldFn::new(move |w: Complex64| {
                let m = w.norm();
                if m == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let t = Complex64::new(1.0, 0.0) - bc * w;
                w / t * ((t.norm() / m).powf(expo) * c)
            }))
        }
        _ => Err(unsupported(op, p)),
    }
}

/// Largest value of `f` over `n_r × n_t` polar points,
/// `r` running through `[0, 1]` inclusive.
fn grid_sup(f: impl Fn(Complex64) -> f64, n_r: usize, n_t: usize) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..=n_r {
        let r = i as f64 / n_r as f64;
        for j in 0..n_t {
            let w = Complex64::from_polar(r, 2.0 * PI * j as f64 / n_t as f64);
            best = best.max(f(w));
        }
    }
    best
}

/// Half the largest distance from a point of the closed disk to the
/// `n_r × n_t` grid used by [`grid_sup`].
fn grid_radius(n_r: usize, n_t: usize) -> f64 {
    let dr = 1.0 / n_r as f64;
    let dt = 2.0 * PI / n_t as f64;
    0.5 * (dr * dr + dt * dt).sqrt()
}

/// `‖f‖_p`. A declared singularity of order `s` is integrated as order
/// `s p`; `p = ∞` is a grid supremum.
pub fn extremal_lp_norm(f: &FieldFn, p: Exponent, rule: &DiskRule) -> Result<f64> {
    if p.is_infinite() {
        return Ok(grid_sup(|w| f.eval(w).norm(), 400, 2048));
    }
    let pv = p.value();
    let g = |w: Complex64| Complex64::new(f.eval(w).norm().powf(pv), 0.0);
    let integral = match f.singularity() {
        Some((c, order)) => {
            let r = match rule.singularity() {
                Singularity::None => rule.clone().with_singularity(Singularity::Mobius { center: c })?,
                _ => rule.clone().centered_at(c),
            };
            integrate_disk_singular(g, c, order * pv, &r)?
        }
        None => integrate_disk(g, rule)?,
    };
    Ok(integral.value.re.powf(1.0 / pv))
}

/// `|op[f](b)|` for the extremal family at `b`, a lower bound for
/// `‖op‖_{L^p → L^∞}`.
///
/// `CAUCHY` is evaluated with a singular rule at `b` (Möbius when `rule`
/// has none); `J0`/`J0_STAR` use `rule` widened to resolve `b`.
pub fn lower_bound_via_extremal(op: OperatorId, p: Exponent, b: DiskPoint, rule: &DiskRule) -> Result<NormResult> {
    let f = extremal_function(op, p, b)?;
    let r = match op {
        OperatorId::Cauchy => match rule.singularity() {
            Singularity::None => rule.clone().with_singularity(Singularity::Mobius { center: b })?,
            _ => rule.clone().centered_at(b),
        },
        _ => rule.clone().resolving(b),
    };
    let v = apply(op, &f, b, &r)?;
    Ok(NormResult::new(
        v.value.norm(),
        NormKind::LowerBound,
        format!("extremal family for {op} at p = {p} concentrated at b = {}", b.value()),
        v.abs_error_estimate,
    ))
}

/// Upper bound for `sup |P|` over the closed disk from a grid maximum plus
/// the gradient bound `Σ |c_{ab}| (a + b)` times the grid radius.
fn poly_sup_upper(p: &Poly, n_r: usize, n_t: usize) -> f64 {
    let lip: f64 = p.terms().map(|(a, b, c)| c.norm() * (a + b) as f64).sum();
    grid_sup(|w| p.eval(w).norm(), n_r, n_t) + lip * grid_radius(n_r, n_t)
}

fn poly_lp(p: &Poly, e: f64, rule: &DiskRule) -> Result<(f64, f64)> {
    let i = integrate_disk(|w| Complex64::new(p.eval(w).norm().powf(e), 0.0), rule)?;
    let v = i.value.re;
    Ok((v.powf(1.0 / e), i.abs_error_estimate / (e * v.max(f64::MIN_POSITIVE))))
}

/// Largest ratio `‖op P‖ / ‖P‖_p` over `n` random polynomials of total
/// degree `≤ degree`, using the exact images of [`Poly::image`].
///
/// `‖P‖_∞` is bounded from above (grid maximum plus a Lipschitz margin) and
/// `‖op P‖_∞` from below (grid maximum), so `L^∞` ratios never overshoot.
pub fn sampled_lower_bound<R: Rng + ?Sized>(
    query: &NormQuery,
    rng: &mut R,
    n: usize,
    degree: u32,
) -> Result<NormResult> {
    if n == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let rule = DiskRule::new(128, 256, Singularity::None)?;
    let p = query.source_p;
    let mut best = 0.0;
    let mut best_err = 0.0;
    let mut done = 0;
    while done < n {
        let poly = Poly::random(rng, degree, degree as usize + 2);
        if poly.is_zero() {
            continue;
        }
        done += 1;
        let image = poly.image(query.operator);
        let (den, den_rel) = if p.is_infinite() {
            (poly_sup_upper(&poly, 200, 1024), 0.0)
        } else if p.value() == 2.0 {
            (poly.l2_norm_sqr().sqrt(), 0.0)
        } else {
            poly_lp(&poly, p.value(), &rule)?
        };
        let target_infinite = p.is_infinite() || query.target == Target::LInfinity;
        let (num, num_rel) = if target_infinite {
            (grid_sup(|w| image.eval(w).norm(), 200, 1024), 0.0)
        } else if p.value() == 2.0 {
            (image.l2_norm_sqr().sqrt(), 0.0)
        } else if image.is_zero() {
            (0.0, 0.0)
        } else {
            poly_lp(&image, p.value(), &rule)?
        };
        let ratio = num / den;
        if ratio > best {
            best = ratio;
            best_err = ratio * (num_rel + den_rel);
        }
    }
    Ok(NormResult::new(
        best,
        NormKind::LowerBound,
        format!("best of {n} random polynomials of degree ≤ {degree}"),
        best_err,
    ))
}
