//! Integrable point singularities and truncated singular integrals.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

use super::{rounding_floor, DiskPoint, DiskRule, GaussLegendre, Integral, Singularity};

/// Radial coordinate used by [`integrate_centered`] along each ray from the
/// center to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialMap {
    /// Gauss–Legendre in `ρ ∈ (0, R)`.
    Linear,
    /// `ρ = inner · (R/inner)^u`: resolves many decades above `inner`, and
    /// excludes the disk `ρ < inner`.
    Log { inner: f64 },
    /// `ρ = R u^{1/(2−s)}`: cancels a `ρ^{−s}` singularity at the center.
    Power { s: f64 },
}

/// Distance from `c` to the unit circle along direction `e` (`|e| = 1`).
fn ray_length(c: Complex64, e: Complex64) -> f64 {
    let beta = (c.conj() * e).re;
    let slack = (1.0 - c.norm_sqr()).max(0.0);
    -beta + (beta * beta + slack).sqrt()
}

fn centered_sum<F>(
    f: &F,
    center: Complex64,
    map: RadialMap,
    radial: usize,
    angular: usize,
) -> Result<(Complex64, f64)>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let gl = GaussLegendre::new(radial);
    let on_boundary = center.norm_sqr() >= 1.0 - 1e-14;
    // Interior centers see the whole circle of directions (trapezoid);
    // boundary centers only the half facing into the disk (Gauss–Legendre).
    let directions: Vec<(f64, f64)> = if on_boundary {
        let start = center.arg() + 0.5 * PI;
        GaussLegendre::new(angular).iter().map(|(x, w)| (start + PI * x, PI * w)).collect()
    } else {
        let d = 2.0 * PI / angular as f64;
        (0..angular).map(|j| (d * j as f64, d)).collect()
    };
    let rows: Vec<(Complex64, f64)> = directions
        .par_iter()
        .map(|&(phi, dphi)| {
            let e = Complex64::from_polar(1.0, phi);
            let big_r = ray_length(center, e);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut abs = 0.0;
            let lo = match map {
                RadialMap::Log { inner } => inner,
                _ => 0.0,
            };
            if big_r <= lo {
                return Ok((acc, abs));
            }
            for (u, w) in gl.iter() {
                // ρ and the weight of ρ dρ in u
                let (rho, jac) = match map {
                    RadialMap::Linear => (big_r * u, big_r * big_r * u),
                    RadialMap::Log { inner } => {
                        let span = (big_r / inner).ln();
                        let rho = inner * (span * u).exp();
                        (rho, rho * rho * span)
                    }
                    RadialMap::Power { s } => {
                        let k = 1.0 / (2.0 - s);
                        (big_r * u.powf(k), big_r * big_r * k * u.powf(2.0 * k - 1.0))
                    }
                };
                let node = center + e * rho;
                let v = f(node);
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::Evaluation { re: node.re, im: node.im });
                }
                acc += v * (w * jac);
                abs += v.norm() * w * jac;
            }
            Ok((acc * (dphi / PI), abs * (dphi / PI)))
        })
        .collect::<Result<_>>()?;
    Ok(rows.iter().fold((Complex64::new(0.0, 0.0), 0.0), |(a, b), (v, m)| (a + v, b + m)))
}

/// `∫ f dA` over `𝔻` (minus `|w − c| < inner` for the log map) in polar
/// coordinates centered at `c`, which may lie on the unit circle.
///
/// The error estimate compares against half the nodes in each direction.
pub fn integrate_centered<F>(
    f: F,
    center: DiskPoint,
    map: RadialMap,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<Integral>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    if let RadialMap::Log { inner } = map {
        if !(inner > 0.0) {
            return Err(Error::Domain(format!("log radial map needs inner > 0, got {inner}")));
        }
    }
    if radial_nodes < 2 || angular_nodes < 2 {
        return Err(Error::Configuration("centered rule needs at least 2 nodes per direction".into()));
    }
    let c = center.value();
    let (value, mass) = centered_sum(&f, c, map, radial_nodes, angular_nodes)?;
    let (coarse, _) = centered_sum(&f, c, map, radial_nodes / 2, angular_nodes / 2)?;
    Ok(Integral::new(value, (value - coarse).norm() + rounding_floor(mass)))
}

/// Below this radius in the recentered variable the offset `w − b` is
/// swamped by the rounding of `w`; nodes there are evaluated at this radius
/// on the same ray and rescaled by the declared `|w − b|^{−s}` behaviour.
const MOBIUS_SAFE_RADIUS: f64 = 1e-7;

/// Sum, absolute mass, and a bound on the error from rounding `w` near `b`.
fn mobius_sum<F>(f: &F, b: Complex64, s: f64, radial: usize, angular: usize) -> Result<(Complex64, f64, f64)>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let gl = GaussLegendre::new(radial);
    let k = 1.0 / (2.0 - s);
    let dtheta = 2.0 * PI / angular as f64;
    let one_minus = 1.0 - b.norm_sqr();
    let scale = one_minus.powi(2);
    let one = Complex64::new(1.0, 0.0);
    let rows: Vec<(Complex64, f64, f64)> = gl
        .nodes()
        .par_iter()
        .zip(gl.weights().par_iter())
        .map(|(&u, &w)| {
            let r = u.powf(k);
            let weight = 2.0 * k * u.powf(2.0 * k - 1.0) * w / angular as f64;
            let r_eval = r.max(MOBIUS_SAFE_RADIUS);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut abs = 0.0;
            let mut noise = 0.0;
            for j in 0..angular {
                let t = dtheta * j as f64;
                let a = Complex64::from_polar(r, t);
                let denom = one - b.conj() * a;
                let jac = scale / denom.norm_sqr().powi(2);
                let dist = r * one_minus / denom.norm();
                let (node, v) = if r_eval > r {
                    let ae = Complex64::from_polar(r_eval, t);
                    let de = one - b.conj() * ae;
                    let dist_e = r_eval * one_minus / de.norm();
                    let node = (b - ae) / de;
                    (node, f(node) * (dist_e / dist).powf(s) * jac)
                } else {
                    let node = (b - a) / denom;
                    (node, f(node) * jac)
                };
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::Evaluation { re: node.re, im: node.im });
                }
                acc += v;
                abs += v.norm();
                noise += v.norm() * s * f64::EPSILON / (dist * r_eval / r);
            }
            Ok((acc * weight, abs * weight, noise * weight))
        })
        .collect::<Result<_>>()?;
    Ok(rows.iter().fold((Complex64::new(0.0, 0.0), 0.0, 0.0), |(a, b, c), (v, m, n)| (a + v, b + m, c + n)))
}

/// `∫_𝔻 f dA` where `f(w)·|w − b|^s` is bounded near `b`, `0 < s < 2`.
///
/// - `MOBIUS`: substitute `w = (b − a)/(1 − b̄a)`, which moves `b` to the
///   origin; the radius is then mapped by `r = u^{1/(2−s)}` so that the
///   `r^{1−s}` weight becomes constant.
/// - `ANNULUS_EXCLUDE(ε)`: integrate over `|w − b| > ε, ε/2, ε/4` and
///   Richardson-extrapolate with exponents `2 − s` and `3 − s`. `ε` is
///   capped at `(1 − |b|)/2` so the excluded disk stays inside `𝔻`.
pub fn integrate_disk_singular<F>(f: F, b: DiskPoint, s: f64, rule: &DiskRule) -> Result<Integral>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    if s.is_nan() || s <= 0.0 {
        return Err(Error::Domain(format!("singularity exponent must be positive, got {s}")));
    }
    if s >= 2.0 {
        return Err(Error::NonIntegrable(s));
    }
    if !b.is_interior() {
        return Err(Error::Domain(format!("singular point {} must be interior", b.value())));
    }
    match rule.singularity() {
        Singularity::None => Err(Error::Configuration(
            "singular integration needs a MOBIUS or ANNULUS_EXCLUDE strategy".into(),
        )),
        Singularity::Mobius { center } => {
            if (center.value() - b.value()).norm() > 1e-12 {
                return Err(Error::Configuration(format!(
                    "Möbius rule centered at {} but singularity is at {}",
                    center.value(),
                    b.value()
                )));
            }
            let (value, mass, noise) = mobius_sum(&f, b.value(), s, rule.radial_nodes(), rule.angular_nodes())?;
            let (hr, ha) = rule.halved();
            let (coarse, _, _) = mobius_sum(&f, b.value(), s, hr, ha)?;
            Ok(Integral::new(value, (value - coarse).norm() + rounding_floor(mass) + noise))
        }
        Singularity::AnnulusExclude { epsilon } => {
            let eps = epsilon.min(0.5 * (1.0 - b.modulus()));
            let level = |e: f64| {
                integrate_centered(&f, b, RadialMap::Log { inner: e }, rule.radial_nodes(), rule.angular_nodes())
            };
            let i0 = level(eps)?;
            let i1 = level(0.5 * eps)?;
            let i2 = level(0.25 * eps)?;
            let f1 = 2f64.powf(2.0 - s);
            let f2 = 2f64.powf(3.0 - s);
            let r1a = (i1.value * f1 - i0.value) / (f1 - 1.0);
            let r1b = (i2.value * f1 - i1.value) / (f1 - 1.0);
            let r2 = (r1b * f2 - r1a) / (f2 - 1.0);
            let amplification = (f1 + 1.0) / (f1 - 1.0) * (f2 + 1.0) / (f2 - 1.0);
            let err = (r2 - r1b).norm() + amplification * i2.abs_error_estimate;
            Ok(Integral::new(r2, err))
        }
    }
}

/// `∫_{𝔻 ∩ {|w − b| > ε}} |f| dA` for each `ε` in a strictly decreasing
/// ladder inside `(0, 0.5)`. `b` may lie on the unit circle.
pub fn truncated_singular_integral<F>(f: F, b: DiskPoint, epsilon_list: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    if epsilon_list.is_empty() {
        return Err(Error::Domain("empty epsilon ladder".into()));
    }
    if epsilon_list.iter().any(|&e| !(e > 0.0 && e < 0.5)) {
        return Err(Error::Domain("every epsilon must lie in (0, 0.5)".into()));
    }
    if epsilon_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Domain("epsilon ladder must be strictly decreasing".into()));
    }
    let rule = DiskRule::default();
    let abs_f = |w: Complex64| Complex64::new(f(w).norm(), 0.0);
    epsilon_list
        .iter()
        .map(|&eps| {
            integrate_centered(abs_f, b, RadialMap::Log { inner: eps }, rule.radial_nodes(), rule.angular_nodes())
                .map(|i| i.value.re)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mobius(b: DiskPoint) -> DiskRule {
        DiskRule::default().with_singularity(Singularity::Mobius { center: b }).unwrap()
    }

    fn annulus(eps: f64) -> DiskRule {
        DiskRule::default().with_singularity(Singularity::AnnulusExclude { epsilon: eps }).unwrap()
    }

    fn radial_power(b: Complex64, s: f64) -> impl Fn(Complex64) -> Complex64 + Sync {
        move |w: Complex64| Complex64::new((w - b).norm().powf(-s), 0.0)
    }

    #[test]
    fn origin_examples() {
        let o = DiskPoint::origin();
        for rule in [mobius(o), annulus(0.01)] {
            let v = integrate_disk_singular(radial_power(o.value(), 1.0), o, 1.0, &rule).unwrap();
            assert!((v.value - 2.0).norm() < 1e-10, "{v:?}");
            let v = integrate_disk_singular(radial_power(o.value(), 4.0 / 3.0), o, 4.0 / 3.0, &rule).unwrap();
            assert!((v.value - 3.0).norm() < 1e-9, "{v:?}");
        }
    }

    // The angular mean of 1/|re^{iθ} − b| is 1/(hi·AGM(1, √(1 − (lo/hi)²))),
    // a complete elliptic integral; the radial integral is graded toward the
    // logarithmic kink at r = b.
    fn inverse_distance_oracle(b: f64) -> f64 {
        let agm = |mut x: f64, mut y: f64| {
            for _ in 0..64 {
                if (x - y).abs() <= 1e-16 * x {
                    break;
                }
                (x, y) = (0.5 * (x + y), (x * y).sqrt());
            }
            x
        };
        let mean = |r: f64| {
            let (lo, hi) = if r < b { (r, b) } else { (b, r) };
            1.0 / (hi * agm(1.0, (1.0 - (lo / hi).powi(2)).sqrt().max(1e-300)))
        };
        let gl = GaussLegendre::new(200);
        let inner = gl.integrate(0.0, 1.0, |u| {
            let r = b * (1.0 - u.powi(4));
            2.0 * r * mean(r) * 4.0 * b * u.powi(3)
        });
        let outer = gl.integrate(0.0, 1.0, |u| {
            let r = b + (1.0 - b) * u.powi(4);
            2.0 * r * mean(r) * 4.0 * (1.0 - b) * u.powi(3)
        });
        inner + outer
    }

    #[test]
    fn off_center_inverse_distance() {
        let b = DiskPoint::real(0.3).unwrap();
        let oracle = inverse_distance_oracle(0.3);
        for rule in [mobius(b), annulus(0.05)] {
            let v = integrate_disk_singular(radial_power(b.value(), 1.0), b, 1.0, &rule).unwrap();
            assert!((v.value.re - oracle).abs() < 1e-9, "{} vs {oracle}", v.value.re);
        }
    }

    #[test]
    fn strategies_agree_on_random_singular_integrands() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let r: f64 = rng.gen_range(0.0..0.7);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let s: f64 = rng.gen_range(0.2..1.8);
            let b = DiskPoint::from_complex(Complex64::from_polar(r, t)).unwrap();
            let bv = b.value();
            let f = move |w: Complex64| (Complex64::new(1.0, 0.0) + 0.5 * w.conj() + w * w) * (w - bv).norm().powf(-s);
            let m = integrate_disk_singular(f, b, s, &mobius(b)).unwrap();
            let a = integrate_disk_singular(f, b, s, &annulus(0.05)).unwrap();
            let tol = 2.0 * (m.abs_error_estimate + a.abs_error_estimate);
            assert!((m.value - a.value).norm() <= tol, "b={bv} s={s}: {:?} vs {:?}", m, a);
        }
    }

    #[test]
    fn configuration_errors() {
        let b = DiskPoint::real(0.2).unwrap();
        let f = radial_power(b.value(), 1.0);
        assert!(matches!(integrate_disk_singular(&f, b, 2.0, &mobius(b)), Err(Error::NonIntegrable(_))));
        assert!(matches!(integrate_disk_singular(&f, b, 1.0, &DiskRule::default()), Err(Error::Configuration(_))));
        assert!(matches!(
            integrate_disk_singular(f, b, 1.0, &mobius(DiskPoint::origin())),
            Err(Error::Configuration(_))
        ));
    }

    #[test]
    fn centered_rule_on_boundary_has_unit_mass() {
        let one = |_| Complex64::new(1.0, 0.0);
        let c = DiskPoint::real(1.0).unwrap();
        let v = integrate_centered(one, c, RadialMap::Linear, 64, 128).unwrap();
        assert!((v.value.re - 1.0).abs() < 1e-12, "{v:?}");
        let c = DiskPoint::from_complex(Complex64::from_polar(1.0, 2.0)).unwrap();
        let v = integrate_centered(|w: Complex64| w * w.conj(), c, RadialMap::Linear, 64, 128).unwrap();
        assert!((v.value.re - 0.5).abs() < 1e-12);
        let c = DiskPoint::new(0.3, -0.4).unwrap();
        let v = integrate_centered(one, c, RadialMap::Linear, 64, 128).unwrap();
        assert!((v.value.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn truncated_integrals() {
        let b = DiskPoint::real(0.25).unwrap();
        let eps = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
        // non-integrable 1/(ρ² log(3/ρ)): grows without bound
        let bv = b.value();
        let log_kernel = move |w: Complex64| {
            let d = (w - bv).norm();
            Complex64::new(1.0 / (d * d * (3.0 / d).ln()), 0.0)
        };
        let v = truncated_singular_integral(log_kernel, b, &eps).unwrap();
        assert!(v.windows(2).all(|w| w[1] > w[0]));
        // successive increments equal 2·Δ log log(3/ε) exactly
        for (i, w) in v.windows(2).enumerate() {
            let law = 2.0 * ((3.0 / eps[i + 1]).ln().ln() - (3.0 / eps[i]).ln().ln());
            assert!((w[1] - w[0] - law).abs() < 1e-8);
        }
        // bounded integrand: values converge
        let bounded = |w: Complex64| w + 2.0;
        let v = truncated_singular_integral(bounded, b, &eps).unwrap();
        let diffs: Vec<f64> = v.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(diffs[0].abs() > 1e3 * diffs[2].abs(), "{diffs:?}");
        assert!(diffs.last().unwrap().abs() < 1e-9, "{diffs:?}");
        assert!(truncated_singular_integral(bounded, b, &[1e-3, 1e-2]).is_err());
        assert!(truncated_singular_integral(bounded, b, &[0.7]).is_err());
    }
}
