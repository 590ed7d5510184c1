//! Radial profile functions.
//!
//! With `q = p/(p−1)` the conjugate exponent and `c_n(β) = Γ(n+β)/(n!Γ(β))`:
//!
//! | profile | integral | closed form |
//! |---|---|---|
//! | `K_p(ρ)` | `∫ dA(w)/|w − z|^q` | `2(1−ρ²)^{2−q} ₂F₁[1−q/2, 2−q/2; 1; ρ²]/(2−q)` |
//! | `M_q(ρ)` | `∫ |z|^q/|1 − w̄z|^q dA(w)` | `₂F₁[q/2, q/2; 2; ρ²] ρ^q` |
//! | `N_q(ρ)` | `∫ |w|^q/|1 − zw̄|^q dA(w)` | `2 Σ c_n(q/2)² ρ^{2n}/(2n+q+2)` |
//!
//! `I₁ = N₁` and `I₂ = M₁`. `A(p) = N_q(1)`.

use crate::error::{Error, Result};
use crate::specfun::{
    gamma, gauss_2f1_at_1, hyp_pfq, ln_gamma, riemann_zeta, HypergeometricSpec, SeriesValue, TERM_CAP,
};

/// Largest admissible `q`; the K and N profiles blow up as `q → 2`.
pub const Q_MAX: f64 = 2.0 - 1e-6;

/// Working tolerance for profiles returned as plain reals.
const REAL_TOL: f64 = 1e-14;

/// Which profile, and its exponent (`p` for K, `q` for M, N, F, `β` for the
/// angular mean).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileId {
    K(f64),
    M(f64),
    N(f64),
    F(f64),
    AngularMean(f64),
}

impl ProfileId {
    /// `I₁` of the Bergman-type lemmas.
    pub const I1: ProfileId = ProfileId::N(1.0);
    /// `I₂` of the Bergman-type lemmas.
    pub const I2: ProfileId = ProfileId::M(1.0);

    pub fn validate(self) -> Result<()> {
        match self {
            ProfileId::K(p) => q_of_p(p).map(|_| ()),
            ProfileId::M(q) | ProfileId::N(q) | ProfileId::F(q) => check_q(q),
            ProfileId::AngularMean(beta) if beta > 0.0 && beta.is_finite() => Ok(()),
            ProfileId::AngularMean(beta) => Err(Error::Domain(format!("β must be positive, got {beta}"))),
        }
    }

    /// Evaluates the profile at `rho` (at `t = ρ` for F).
    pub fn evaluate(self, rho: f64, tol: f64) -> Result<SeriesValue> {
        let exact = |v: f64| SeriesValue { value: v, terms_used: 0, tail_bound: REAL_TOL * v.abs().max(1.0) };
        match self {
            ProfileId::K(p) => profile_k(p, rho).map(exact),
            ProfileId::M(q) => profile_m(q, rho).map(exact),
            ProfileId::N(q) => profile_n(q, rho, tol),
            ProfileId::F(q) => profile_f(q, rho).map(exact),
            ProfileId::AngularMean(beta) => angular_power_mean(rho, beta, tol),
        }
    }
}

fn check_q(q: f64) -> Result<()> {
    if !(1.0..=Q_MAX).contains(&q) {
        return Err(Error::Domain(format!(
            "q = {q} outside [1, 2 − 1e−6]; profiles blow up as q → 2"
        )));
    }
    Ok(())
}

fn q_of_p(p: f64) -> Result<f64> {
    if p.is_nan() || p <= 2.0 {
        return Err(Error::Domain(format!("p must exceed 2, got {p}")));
    }
    let q = if p.is_infinite() { 1.0 } else { p / (p - 1.0) };
    check_q(q)?;
    Ok(q)
}

fn check_rho(rho: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Domain(format!("ρ = {rho} outside [0, 1]")));
    }
    Ok(())
}

/// `Σ c_n(β)² ρ^{2n}`, the mean of `|1 − ρe^{iθ}|^{−2β}` over the circle.
pub fn angular_power_mean(rho: f64, beta: f64, tol: f64) -> Result<SeriesValue> {
    ProfileId::AngularMean(beta).validate()?;
    check_rho(rho)?;
    if rho == 1.0 {
        if 2.0 * beta >= 1.0 {
            return Err(Error::Divergence(format!(
                "angular mean at ρ = 1 diverges for 2β = {} ≥ 1",
                2.0 * beta
            )));
        }
        let v = gauss_2f1_at_1(beta, beta, 1.0)?;
        return Ok(SeriesValue { value: v, terms_used: 0, tail_bound: REAL_TOL * v });
    }
    hyp_pfq(&HypergeometricSpec::gauss(beta, beta, 1.0, rho * rho)?, tol)
}

/// `F(t) = (1−t)^{2−q} ₂F₁[1−q/2, 2−q/2; 1; t]`, decreasing from `F(0) = 1`.
///
/// Evaluated through the Euler transform `₂F₁[q/2, q/2 − 1; 1; t]`, which
/// converges on all of `[0, 1]`.
pub fn profile_f(q: f64, t: f64) -> Result<f64> {
    check_q(q)?;
    check_rho(t)?;
    let (a, b) = (0.5 * q, 0.5 * q - 1.0);
    if t == 1.0 {
        return gauss_2f1_at_1(a, b, 1.0);
    }
    if q == 1.0 {
        return Ok(elliptic_e_normalized(t));
    }
    // Near t = 1 the series decays only like n^{q−3}; switch to the
    // connection formula in 1 − t unless q is so close to 1 that its two
    // halves cancel.
    if t > 0.9 && q - 1.0 > 1e-4 {
        let s = 2.0 - q;
        let x = 1.0 - t;
        let regular = hyp_pfq(&HypergeometricSpec::gauss(a, b, 1.0 - s, x)?, REAL_TOL)?.value;
        let singular = hyp_pfq(&HypergeometricSpec::gauss(1.0 - a, 1.0 - b, 1.0 + s, x)?, REAL_TOL)?.value;
        let coef = gamma(q - 2.0)? / (gamma(a)? * gamma(b)?);
        return Ok(gauss_2f1_at_1(a, b, 1.0)? * regular + coef * x.powf(s) * singular);
    }
    Ok(hyp_pfq(&HypergeometricSpec::gauss(a, b, 1.0, t)?, REAL_TOL)?.value)
}

/// `₂F₁(½, −½; 1; t) = (2/π)E(√t)` by the arithmetic-geometric mean.
fn elliptic_e_normalized(t: f64) -> f64 {
    let (mut a, mut b) = (1.0f64, (1.0 - t).sqrt());
    let mut sum = 0.5 * t;
    let mut pow = 0.5;
    for _ in 0..64 {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let c = 0.5 * (a - b);
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
        pow *= 2.0;
        sum += pow * c * c;
    }
    (1.0 - sum) / a
}

/// `₂F₁(½, ½; 2; t) = 4(E − (1−t)K)/(πt)` by the arithmetic-geometric mean.
fn half_half_two(t: f64) -> f64 {
    let (mut a, mut b) = (1.0f64, (1.0 - t).sqrt());
    let mut sum = 0.5 * t;
    let mut pow = 0.5;
    for _ in 0..64 {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let c = 0.5 * (a - b);
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
        pow *= 2.0;
        sum += pow * c * c;
    }
    2.0 * (t - sum) / (t * a)
}

/// `H(t) = 2₂F₁[1−q/2, 2−q/2; 1; t] − (2−q/2)(1−t)₂F₁[2−q/2, 3−q/2; 2; t]`,
/// so that `F'(t) = ½(q−2)(1−t)^{1−q}H(t)`. Defined for `t < 1`.
pub fn profile_h(q: f64, t: f64) -> Result<f64> {
    check_q(q)?;
    if !(0.0..1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} outside [0, 1)")));
    }
    let first = hyp_pfq(&HypergeometricSpec::gauss(1.0 - 0.5 * q, 2.0 - 0.5 * q, 1.0, t)?, REAL_TOL)?;
    let second = hyp_pfq(&HypergeometricSpec::gauss(2.0 - 0.5 * q, 3.0 - 0.5 * q, 2.0, t)?, REAL_TOL)?;
    Ok(2.0 * first.value - (2.0 - 0.5 * q) * (1.0 - t) * second.value)
}

/// Taylor coefficient `a_m` of `H`, nonnegative for `q ∈ [1, 2)`.
pub fn h_coefficient(q: f64, m: u64) -> Result<f64> {
    check_q(q)?;
    let m = m as f64;
    let h = 0.5 * q;
    // Γ(−q/2) < 0 on (0, 2): its magnitude via Γ(1−q/2) = (−q/2)Γ(−q/2).
    let ln_abs_gamma_neg = ln_gamma(1.0 - h)? - h.ln();
    let ln = ln_gamma(1.0 + m - h)? + ln_gamma(2.0 + m - h)?
        - ln_gamma(1.0 + m)?
        - ln_gamma(2.0 + m)?
        - ln_gamma(2.0 - h)?
        - ln_abs_gamma_neg;
    Ok(ln.exp())
}

/// `K_p(ρ) = ∫ dA(w)/|w − z|^q` for `|z| = ρ`; decreasing, `K_p(0) = 2/(2−q)`.
pub fn profile_k(p: f64, rho: f64) -> Result<f64> {
    let q = q_of_p(p)?;
    Ok(2.0 * profile_f(q, rho * rho)? / (2.0 - q))
}

/// `M_q(ρ) = ρ^q ₂F₁[q/2, q/2; 2; ρ²]`; increasing, `M_q(1) = Γ(2−q)/Γ²(2−q/2)`.
pub fn profile_m(q: f64, rho: f64) -> Result<f64> {
    check_q(q)?;
    check_rho(rho)?;
    if rho == 0.0 {
        return Ok(0.0);
    }
    let h = 0.5 * q;
    let x = rho * rho;
    let f = if rho == 1.0 {
        gauss_2f1_at_1(h, h, 2.0)?
    } else if x > 0.9 && q == 1.0 {
        half_half_two(x)
    } else if x > 0.9 && q - 1.0 > 1e-4 {
        // connection formula in 1 − x, with c − a − b = 2 − q
        let s = 2.0 - q;
        let y = 1.0 - x;
        let regular = hyp_pfq(&HypergeometricSpec::gauss(h, h, 1.0 - s, y)?, REAL_TOL)?.value;
        let singular = hyp_pfq(&HypergeometricSpec::gauss(2.0 - h, 2.0 - h, 1.0 + s, y)?, REAL_TOL)?.value;
        let coef = gamma(-s)? / gamma(h)?.powi(2);
        gauss_2f1_at_1(h, h, 2.0)? * regular + coef * y.powf(s) * singular
    } else {
        hyp_pfq(&HypergeometricSpec::gauss(h, h, 2.0, x)?, REAL_TOL)?.value
    };
    Ok(rho.powf(q) * f)
}

/// `N_q(ρ) = 2 Σ c_n(q/2)² ρ^{2n}/(2n+q+2)`; increasing in `ρ`.
///
/// Interior points sum the series directly with the geometric remainder
/// bound `t_N ρ²/(1−ρ²)` (valid because `c_n(q/2)` is nonincreasing).
/// `ρ = 1` is delegated to [`a_p_constant`]'s `₃F₂` route.
pub fn profile_n(q: f64, rho: f64, tol: f64) -> Result<SeriesValue> {
    check_q(q)?;
    check_rho(rho)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if rho == 1.0 {
        return n_at_one(q, tol);
    }
    let beta = 0.5 * q;
    let x = rho * rho;
    let mut c = 1.0f64;
    let mut xn = 1.0f64;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 0..TERM_CAP {
        let nf = n as f64;
        let term = 2.0 * c * c * xn / (2.0 * nf + q + 2.0);
        let t = sum + term;
        comp += (sum - t) + term;
        sum = t;
        let tail = term * x / (1.0 - x);
        if tail <= tol {
            let value = sum + comp;
            return Ok(SeriesValue {
                value,
                terms_used: n + 1,
                tail_bound: tail + 4.0 * f64::EPSILON * nf.max(1.0).sqrt() * value,
            });
        }
        c *= (nf + beta) / (nf + 1.0);
        xn *= x;
    }
    Err(Error::Precision { value: sum + comp, bound: f64::INFINITY, terms: TERM_CAP })
}

fn n_at_one(q: f64, tol: f64) -> Result<SeriesValue> {
    let h = 0.5 * q;
    let spec = HypergeometricSpec::new(vec![1.0 + h, h, h], vec![1.0, 2.0 + h], 1.0)?;
    // hyp_pfq's bound is relative to max(1, |value|); the ₃F₂ is at most ~2.
    let f = hyp_pfq(&spec, 0.5 * tol)?;
    Ok(SeriesValue {
        value: 2.0 * f.value / (2.0 + q),
        terms_used: f.terms_used,
        tail_bound: 2.0 * f.tail_bound / (2.0 + q),
    })
}

/// `N_q(1)` by direct summation of `2 Σ c_n(q/2)²/(2n+q+2)`, independent of
/// the `₃F₂` route.
///
/// Gautschi's inequality `(n+1)^{β−1} ≤ Γ(n+β)/n! ≤ n^{β−1}` brackets every
/// omitted term between `(n+2)^{q−3}/Γ²(β)` and `n^{q−3}/Γ²(β)`, and integral
/// comparison brackets the remainder. The value is the midpoint.
pub fn n_boundary_direct(q: f64, tol: f64) -> Result<SeriesValue> {
    check_q(q)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let beta = 0.5 * q;
    let ln_gb = ln_gamma(beta)?;
    let g2 = (2.0 * ln_gb).exp();
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut c = 1.0f64;
    let mut checkpoint = 64usize;
    let mut half_width = f64::INFINITY;
    for n in 0..TERM_CAP {
        let nf = n as f64;
        if n % 1024 == 0 && n > 0 {
            // reseed the product recurrence to stop drift
            c = (ln_gamma(nf + beta)? - ln_gamma(nf + 1.0)? - ln_gb).exp();
        }
        let term = 2.0 * c * c / (2.0 * nf + q + 2.0);
        let t = sum + term;
        comp += (sum - t) + term;
        sum = t;
        c *= (nf + beta) / (nf + 1.0);
        if n + 1 == checkpoint {
            let big_n = nf;
            let upper = (big_n + 0.5).powf(q - 2.0) / ((2.0 - q) * g2);
            let lower = (big_n + 3.0).powf(q - 2.0) / ((2.0 - q) * g2);
            half_width = 0.5 * (upper - lower);
            let partial = sum + comp;
            let rounding = 1e-13 * partial;
            if half_width + rounding <= tol {
                return Ok(SeriesValue {
                    value: partial + 0.5 * (upper + lower),
                    terms_used: n + 1,
                    tail_bound: half_width + rounding,
                });
            }
            checkpoint *= 2;
        }
    }
    Err(Error::Precision { value: sum + comp, bound: half_width, terms: TERM_CAP })
}

/// Upper bound `2(1/(2+q) + ζ(3−q)/(2Γ²(q/2)))` on `A(p)`.
pub fn a_p_zeta_bound(p: f64) -> Result<f64> {
    let q = q_of_p(p)?;
    Ok(2.0 * (1.0 / (2.0 + q) + riemann_zeta(3.0 - q)? / (2.0 * gamma(0.5 * q)?.powi(2))))
}

/// `A(p) = 2 ₃F₂[1+q/2, q/2, q/2; 1, 2+q/2; 1]/(2+q) = N_q(1)`, checked
/// against [`a_p_zeta_bound`].
pub fn a_p_constant(p: f64, tol: f64) -> Result<SeriesValue> {
    let q = q_of_p(p)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let a = n_at_one(q, tol)?;
    let bound = a_p_zeta_bound(p)?;
    if a.lower() > bound {
        return Err(Error::BoundViolated { value: a.value, bound });
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{
        integrate_centered, integrate_disk, integrate_disk_singular, DiskPoint, DiskRule, RadialMap, Singularity,
    };
    use crate::specfun::{catalan_constant, gauss_2f1_at_1};
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    const PS: [f64; 4] = [2.5, 3.0, 4.0, 10.0];

    fn q(p: f64) -> f64 {
        p / (p - 1.0)
    }

    #[test]
    fn angular_mean_examples() {
        for beta in [0.3, 0.5, 1.0, 2.5] {
            assert_eq!(angular_power_mean(0.0, beta, 1e-12).unwrap().value, 1.0);
        }
        for rho in [0.1, 0.5, 0.9] {
            let v = angular_power_mean(rho, 1.0, 1e-14).unwrap();
            assert!((v.value - 1.0 / (1.0 - rho * rho)).abs() < 1e-12);
        }
        let m = 4096;
        let trap: f64 = (0..m)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / m as f64;
                1.0 / (Complex64::new(1.0, 0.0) - Complex64::from_polar(0.5, t)).norm()
            })
            .sum::<f64>()
            / m as f64;
        let v = angular_power_mean(0.5, 0.5, 1e-10).unwrap();
        assert!((v.value - trap).abs() < 1e-8);
        assert!(matches!(angular_power_mean(1.0, 0.5, 1e-10), Err(Error::Divergence(_))));
        let v = angular_power_mean(1.0, 0.2, 1e-10).unwrap();
        assert!((v.value - gamma(0.6).unwrap() / gamma(0.8).unwrap().powi(2)).abs() < 1e-13);
    }

    #[test]
    fn k_examples() {
        assert!((profile_k(4.0, 0.0).unwrap() - 3.0).abs() < 1e-13);
        // 2∫₀¹ r^{−1/3} dr = 3
        let gl = crate::quadrature::GaussLegendre::new(64);
        let radial = gl.integrate(0.0, 1.0, |u| 2.0 * 3.0 * u * u * (u * u * u).powf(-1.0 / 3.0));
        assert!((radial - 3.0).abs() < 1e-12);
        for p in [3.0, 10.0] {
            assert!((profile_k(p, 0.0).unwrap() - 2.0 / (2.0 - q(p))).abs() < 1e-13);
        }
        let b = DiskPoint::real(0.3).unwrap();
        let rule = DiskRule::default().with_singularity(Singularity::AnnulusExclude { epsilon: 0.05 }).unwrap();
        let quad = integrate_disk_singular(|w: Complex64| Complex64::new((w - 0.3).norm().powf(-1.5), 0.0), b, 1.5, &rule)
            .unwrap();
        assert!((profile_k(3.0, 0.3).unwrap() - quad.value.re).abs() < 1e-5);
        assert!(matches!(profile_k(2.0, 0.1), Err(Error::Domain(_))));
        assert!(matches!(profile_k(1.5, 0.1), Err(Error::Domain(_))));
    }

    // Original form 2(1−ρ²)^{2−q} ₂F₁[1−q/2, 2−q/2; 1; ρ²]/(2−q), interior only.
    fn k_original(p: f64, rho: f64) -> f64 {
        let q = q(p);
        let f = hyp_pfq(&HypergeometricSpec::gauss(1.0 - 0.5 * q, 2.0 - 0.5 * q, 1.0, rho * rho).unwrap(), 1e-15)
            .unwrap();
        2.0 * (1.0 - rho * rho).powf(2.0 - q) * f.value / (2.0 - q)
    }

    // Möbius-substituting w ↦ (z − u)/(1 − z̄u) and expanding |1 − z̄u|^{q−4}
    // by Parseval: K = (1−ρ²)^{2−q} Σ c_n(2−q/2)² ρ^{2n} · 2/(2n+2−q).
    fn k_parseval(p: f64, rho: f64) -> f64 {
        let q = q(p);
        let beta = 2.0 - 0.5 * q;
        let mut c = 1.0f64;
        let mut xn = 1.0f64;
        let mut s = 0.0;
        for n in 0..200_000 {
            let nf = n as f64;
            s += c * c * xn * 2.0 / (2.0 * nf + 2.0 - q);
            c *= (nf + beta) / (nf + 1.0);
            xn *= rho * rho;
        }
        (1.0 - rho * rho).powf(2.0 - q) * s
    }

    #[test]
    fn k_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let p = PS[rng.gen_range(0..4)];
            let rho: f64 = rng.gen_range(0.05..0.95);
            let k = profile_k(p, rho).unwrap();
            assert!((k - k_original(p, rho)).abs() < 1e-11 * k, "p={p} ρ={rho}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = PS[rng.gen_range(0..4)];
            let rho: f64 = rng.gen_range(0.0..0.95);
            let k = profile_k(p, rho).unwrap();
            assert!((k - k_parseval(p, rho)).abs() < 1e-11 * k, "p={p} ρ={rho}");
        }
        // boundary closed form
        let qq = q(3.0);
        let closed =
            2.0 / (2.0 - qq) * gamma(2.0 - qq).unwrap() / (gamma(1.0 - qq / 2.0).unwrap() * gamma(2.0 - qq / 2.0).unwrap());
        assert!((profile_k(3.0, 1.0).unwrap() - closed).abs() < 1e-12);
        // approach to the boundary is like (1 − ρ²)^{2−q}
        let gap = profile_k(3.0, 1.0 - 1e-9).unwrap() - profile_k(3.0, 1.0).unwrap();
        assert!(gap > 0.0 && gap < 1e-3, "{gap}");
    }

    #[test]
    fn m_examples_and_routes() {
        for qq in [1.0, 1.3, 1.9] {
            assert_eq!(profile_m(qq, 0.0).unwrap(), 0.0);
        }
        assert!((profile_m(1.0, 1.0).unwrap() - 4.0 / PI).abs() < 1e-14);
        let v = profile_m(1.5, 1.0).unwrap();
        assert!((v - 2.157_410_404_753_517).abs() < 1e-12, "{v}");
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let qq: f64 = rng.gen_range(1.0..1.95);
            let rho: f64 = rng.gen_range(0.05..0.95);
            // ρ^q Σ c_n² ρ^{2n}/(n+1)
            let mut c = 1.0f64;
            let mut s = 0.0;
            for n in 0..20_000 {
                let nf = n as f64;
                s += c * c * rho.powi(2 * n) / (nf + 1.0);
                c *= (nf + 0.5 * qq) / (nf + 1.0);
            }
            let series = rho.powf(qq) * s;
            assert!((profile_m(qq, rho).unwrap() - series).abs() < 1e-12, "q={qq} ρ={rho}");
        }
    }

    #[test]
    fn n_examples() {
        for qq in [1.0, 1.5, 1.9] {
            let v = profile_n(qq, 0.0, 1e-12).unwrap();
            assert!((v.value - 2.0 / (qq + 2.0)).abs() < 1e-15);
        }
        let alpha = catalan_constant(1e-15).unwrap().value;
        let v = profile_n(1.0, 1.0, 1e-6).unwrap();
        assert!(v.contains((1.0 + 2.0 * alpha) / PI, 1e-12), "{v:?}");
        assert!(((1.0 + 2.0 * alpha) / PI - 0.901_431_694_245_428).abs() < 1e-13);
        let v = profile_n(1.5, 1.0, 1e-6).unwrap();
        let a = a_p_constant(3.0, 1e-6).unwrap();
        let d = n_boundary_direct(1.5, 1e-6).unwrap();
        assert!((v.value - a.value).abs() <= v.tail_bound + a.tail_bound);
        assert!((v.value - d.value).abs() <= v.tail_bound + d.tail_bound, "{v:?} {d:?}");
    }

    #[test]
    fn n_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let qq: f64 = rng.gen_range(1.0..1.95);
            let rho: f64 = rng.gen_range(0.05..0.95);
            let direct = profile_n(qq, rho, 1e-13).unwrap();
            let h = 0.5 * qq;
            let spec = HypergeometricSpec::new(vec![1.0 + h, h, h], vec![1.0, 2.0 + h], rho * rho).unwrap();
            let pfq = hyp_pfq(&spec, 1e-14).unwrap();
            let closed = 2.0 * pfq.value / (2.0 + qq);
            assert!((direct.value - closed).abs() <= direct.tail_bound + pfq.tail_bound + 1e-13);
        }
        for p in PS {
            let qq = q(p);
            let a = a_p_constant(p, 1e-7).unwrap();
            let d = n_boundary_direct(qq, 1e-7).unwrap();
            assert!((a.value - d.value).abs() <= a.tail_bound + d.tail_bound, "p={p}: {a:?} {d:?}");
        }
    }

    #[test]
    fn a_p_values_and_bound() {
        let expected = [(2.5, 2.430_254_196), (3.0, 1.576_226_761), (4.0, 1.197_946_480), (10.0, 0.962_471_966)];
        for (p, v) in expected {
            let a = a_p_constant(p, 1e-10).unwrap();
            assert!((a.value - v).abs() < 2e-9, "p={p}: {a:?}");
            assert!(a.upper() < a_p_zeta_bound(p).unwrap());
        }
        assert!((a_p_zeta_bound(3.0).unwrap() - 2.311_103_025).abs() < 1e-8);
        let alpha = catalan_constant(1e-15).unwrap().value;
        let a = a_p_constant(1e6, 1e-8).unwrap();
        assert!((a.value - (1.0 + 2.0 * alpha) / PI).abs() < 1e-5);
        assert!(matches!(a_p_constant(2.0, 1e-8), Err(Error::Domain(_))));
        // p = 4 against a term-by-term sum with an explicit integral tail
        let qq = 4.0 / 3.0;
        let beta = 2.0 / 3.0;
        let mut c = 1.0f64;
        let mut s = 0.0;
        let n_max = 200_000;
        for n in 0..n_max {
            let nf = n as f64;
            s += 2.0 * c * c / (2.0 * nf + qq + 2.0);
            c *= (nf + beta) / (nf + 1.0);
        }
        // c_n² ≈ n^{2β−2}/Γ(β)², term ≈ n^{q−3}/Γ(β)²
        let tail = (n_max as f64).powf(qq - 2.0) / ((2.0 - qq) * gamma(beta).unwrap().powi(2));
        let a = a_p_constant(4.0, 1e-10).unwrap();
        assert!((a.value - (s + tail)).abs() < 1e-8, "{} vs {}", a.value, s + tail);
    }

    #[test]
    fn f_and_h() {
        for qq in [1.0, 1.5, 1.99] {
            assert!((profile_f(qq, 0.0).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!(profile_f(1.2, 0.5).unwrap() < profile_f(1.2, 0.25).unwrap());
        for m in 0..=200 {
            assert!(h_coefficient(1.5, m).unwrap() >= 0.0);
        }
        assert!((h_coefficient(1.0, 0).unwrap() - 0.5).abs() < 1e-14);
        assert!(h_coefficient(1.5, 3).unwrap() > 0.0);
        let (l, s) = crate::specfun::ln_gamma_signed(-0.75).unwrap();
        assert!(s < 0.0 && l.is_finite());
        // H as a power series, and F' = ½(q−2)(1−t)^{1−q}H
        for qq in [1.0, 1.4, 1.8] {
            for t in [0.1f64, 0.4, 0.7] {
                let series: f64 = (0..400).map(|m| h_coefficient(qq, m).unwrap() * t.powi(m as i32)).sum();
                let h = profile_h(qq, t).unwrap();
                assert!((series - h).abs() < 1e-10 * h, "q={qq} t={t}");
                let d = 1e-5;
                let fd = (profile_f(qq, t + d).unwrap() - profile_f(qq, t - d).unwrap()) / (2.0 * d);
                let formula = 0.5 * (qq - 2.0) * (1.0 - t).powf(1.0 - qq) * h;
                assert!((fd - formula).abs() < 1e-7, "q={qq} t={t}");
            }
        }
        // both sides of the switch to the 1 − t expansion
        for qq in [1.0, 1.00005, 1.3, 1.9] {
            let below = profile_f(qq, 0.9).unwrap();
            let above = profile_f(qq, 0.9 + 1e-12).unwrap();
            assert!((below - above).abs() < 1e-11, "q={qq}");
            let series = hyp_pfq(&HypergeometricSpec::gauss(qq / 2.0, qq / 2.0 - 1.0, 1.0, 0.95).unwrap(), 1e-13).unwrap();
            assert!((profile_f(qq, 0.95).unwrap() - series.value).abs() < 1e-12 + series.tail_bound, "q={qq}");
        }
        assert!((profile_f(1.0, 0.3).unwrap() - 0.920_146_705_054_900_8).abs() < 1e-14);
        // F(1) by Gauss after the Euler transform
        let closed = gauss_2f1_at_1(0.75, -0.25, 1.0).unwrap();
        assert!((profile_f(1.5, 1.0).unwrap() - closed).abs() < 1e-15);
    }

    #[test]
    fn monotonicity() {
        let grid: Vec<f64> = (0..100).map(|i| i as f64 / 99.0).collect();
        for p in PS {
            let k: Vec<f64> = grid.iter().map(|&r| profile_k(p, r).unwrap()).collect();
            assert!(k.windows(2).all(|w| w[1] < w[0]), "K_{p}");
            let qq = q(p);
            let m: Vec<f64> = grid.iter().map(|&r| profile_m(qq, r).unwrap()).collect();
            assert!(m.windows(2).all(|w| w[1] > w[0]), "M_{qq}");
            let n: Vec<f64> = grid.iter().map(|&r| profile_n(qq, r, 1e-10).unwrap().value).collect();
            assert!(n.windows(2).all(|w| w[1] > w[0]), "N_{qq}");
        }
    }

    #[test]
    fn aliases() {
        assert_eq!(ProfileId::I1, ProfileId::N(1.0));
        assert_eq!(ProfileId::I2, ProfileId::M(1.0));
        let alpha = catalan_constant(1e-15).unwrap().value;
        let i1 = ProfileId::I1.evaluate(1.0, 1e-8).unwrap();
        assert!(i1.contains((1.0 + 2.0 * alpha) / PI, 1e-12));
        let i2 = ProfileId::I2.evaluate(1.0, 1e-8).unwrap();
        assert!((i2.value - 4.0 / PI).abs() < 1e-13);
        assert!(ProfileId::K(2.0).validate().is_err());
        assert!(ProfileId::M(2.0).validate().is_err());
        assert!(ProfileId::N(0.9).validate().is_err());
        assert!(ProfileId::AngularMean(0.0).validate().is_err());
        assert!(ProfileId::F(1.0 + 0.5).validate().is_ok());
    }

    #[test]
    fn quadrature_equivalence() {
        let rule = DiskRule::default();
        for rho in [0.1, 0.3, 0.5, 0.7, 0.8] {
            let z = Complex64::new(rho, 0.0);
            for qq in [1.0, 1.5] {
                let m = integrate_disk(|w: Complex64| Complex64::new(rho.powf(qq) / (1.0 - w.conj() * z).norm().powf(qq), 0.0), &rule)
                    .unwrap();
                assert!((m.value.re - profile_m(qq, rho).unwrap()).abs() < 1e-5, "M q={qq} ρ={rho}");
                let n = integrate_disk(|w: Complex64| Complex64::new((w.norm() / (1.0 - z * w.conj()).norm()).powf(qq), 0.0), &rule)
                    .unwrap();
                assert!((n.value.re - profile_n(qq, rho, 1e-12).unwrap().value).abs() < 1e-5, "N q={qq} ρ={rho}");
            }
            for p in [3.0, 10.0] {
                let qq = q(p);
                let b = DiskPoint::real(rho).unwrap();
                let k = integrate_centered(|w: Complex64| Complex64::new((w - z).norm().powf(-qq), 0.0), b, RadialMap::Power { s: qq }, 128, 256)
                    .unwrap();
                assert!((k.value.re - profile_k(p, rho).unwrap()).abs() < 1e-5, "K p={p} ρ={rho}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn conjugate_coherence(p in 2.01f64..1e4) {
            let c = crate::Conjugate::from_p(p).unwrap();
            prop_assert!((1.0 / c.p() + 1.0 / c.q() - 1.0).abs() < 1e-15);
            let a = profile_k(p, 0.0).unwrap();
            prop_assert!((a - 2.0 / (2.0 - c.q())).abs() < 1e-9 * a);
        }

        #[test]
        fn f_decreasing(qq in 1.0f64..1.99, t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
            let (lo, hi) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
            prop_assume!(hi - lo > 1e-6);
            prop_assert!(profile_f(qq, hi).unwrap() <= profile_f(qq, lo).unwrap());
        }
    }

    #[test]
    fn m_near_the_boundary() {
        // mpmath reference values of ρ^q ₂F₁(q/2, q/2; 2; ρ²)
        let cases = [
            (1.0, 0.96, 1.16104068791725),
            (1.0, 0.999, 1.26815131853406),
            (1.0, 0.999999, 1.27323006230743),
            (1.25, 0.96, 1.30925928621363),
            (1.25, 0.999, 1.53151308094634),
            (1.5, 0.999999, 2.15407351433273),
            (1.75, 0.96, 1.92775889735107),
            (1.75, 0.999, 3.21609293580025),
            (1.75, 0.999999, 3.93280671086136),
        ];
        for (q, rho, want) in cases {
            let got = profile_m(q, rho).unwrap();
            assert!((got - want).abs() < 1e-12 * want, "q={q} rho={rho}: {got} vs {want}");
        }
        // both sides of the switch at ρ² = 0.9
        for q in [1.0, 1.3, 1.9] {
            let below = profile_m(q, (0.9f64 - 1e-12).sqrt()).unwrap();
            let above = profile_m(q, (0.9f64 + 1e-12).sqrt()).unwrap();
            assert!((below - above).abs() < 1e-10 * below, "q={q}: {below} vs {above}");
        }
    }
}
