use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

use super::{NormKind, NormQuery, NormResult, Target};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::operators::OperatorId;
use crate::profiles::a_p_constant;
use crate::specfun::{bessel_j0_smallest_zero, catalan_constant, gamma};

/// Catalan's constant `α`.
pub fn catalan() -> f64 {
    static ALPHA: OnceLock<f64> = OnceLock::new();
    *ALPHA.get_or_init(|| catalan_constant(1e-15).expect("positive tolerance").value)
}

/// Smallest positive zero `j₀` of the Bessel function `J₀`.
pub fn j0_zero() -> f64 {
    static J0: OnceLock<f64> = OnceLock::new();
    *J0.get_or_init(bessel_j0_smallest_zero)
}

fn rounding(v: f64) -> f64 {
    8.0 * f64::EPSILON * v.abs()
}

fn exact(v: f64, provenance: &str) -> NormResult {
    NormResult::new(v, NormKind::ExactNorm, provenance, rounding(v))
}

fn upper(v: f64, provenance: &str) -> NormResult {
    NormResult::new(v, NormKind::UpperBound, provenance, rounding(v))
}

/// `‖𝔠‖_p ≤ 2 j₀^{−2(1−1/p)}` for `p ≤ 2` and `2 j₀^{−2/p}` for `p ≥ 2`.
pub fn dostanic_bound(p: Exponent) -> f64 {
    let j0 = j0_zero();
    let r = p.reciprocal();
    if p.value() <= 2.0 {
        2.0 * j0.powf(-2.0 * (1.0 - r))
    } else {
        2.0 * j0.powf(-2.0 * r)
    }
}

/// `‖C_Δ‖_p ≤ 2 j₀^{−2(1−1/p)}` for `p ≤ 2` and `(4/3)(2j₀/3)^{−2/p}` for
/// `p ≥ 2`; equality at `p ∈ {1, 2, ∞}`.
pub fn kalaj_bound(p: Exponent) -> f64 {
    let j0 = j0_zero();
    let r = p.reciprocal();
    if p.value() <= 2.0 {
        2.0 * j0.powf(-2.0 * (1.0 - r))
    } else {
        4.0 / 3.0 * (2.0 * j0 / 3.0).powf(-2.0 * r)
    }
}

/// `‖𝔍₀*‖_p ≤ 4^{1/p} π^{−1} (1+2α)^{1−1/p}` from the Schur test with the
/// `I₁` and `I₂` bounds.
pub fn j0star_finiteness_bound(p: Exponent) -> f64 {
    let r = p.reciprocal();
    4f64.powf(r) / PI * (1.0 + 2.0 * catalan()).powf(1.0 - r)
}

/// Interpolation between `‖𝔍₀*‖₁ = 4/π`, `‖𝔍₀*‖₂ = √(1/2)` and
/// `‖𝔍₀*‖_∞ = (1+2α)/π`; exact at the three endpoints.
pub fn riesz_thorin_bound(p: Exponent) -> NormResult {
    let r = p.reciprocal();
    let (value, endpoint) = if p.value() >= 2.0 {
        let v = 0.5f64.powf(r) * ((1.0 + 2.0 * catalan()) / PI).powf(1.0 - 2.0 * r);
        (v, p.value() == 2.0 || p.is_infinite())
    } else {
        let v = 0.5f64.powf(1.0 - r) * (4.0 / PI).powf(2.0 * r - 1.0);
        (v, p.value() == 1.0)
    };
    let provenance = "Riesz-Thorin interpolation of the L^1, L^2, L^inf norms of J0*";
    if endpoint {
        exact(value, provenance)
    } else {
        upper(value, provenance)
    }
}

/// Catalog of known constants. Anything not listed is an
/// [`Error::Unsupported`].
pub fn closed_form_norm(query: &NormQuery) -> Result<NormResult> {
    let p = query.source_p;
    let pv = p.value();
    let dual = p.dual_power();
    let unsupported = || {
        Err(Error::Unsupported(format!(
            "no catalog entry for {} from L^{} to {}",
            query.operator,
            p,
            match query.target {
                Target::SameP => format!("L^{p}"),
                Target::LInfinity => "L^inf".to_string(),
            }
        )))
    };
    // L^∞ → L^∞ is the same query under either target label.
    let target = if p.is_infinite() { Target::LInfinity } else { query.target };
    match (query.operator, target) {
        (OperatorId::Cauchy, Target::LInfinity) => {
            if p.is_infinite() {
                return Ok(exact(2.0, "L^inf norm of the Cauchy transform"));
            }
            let v = ((2.0 * pv - 2.0) / (pv - 2.0)).powf(dual);
            Ok(exact(v, "L^p->L^inf norm of the Cauchy transform, Holder bound attained as b->0"))
        }
        (OperatorId::Cauchy, Target::SameP) => {
            if pv == 2.0 {
                Ok(exact(2.0 / j0_zero(), "L^2 norm of the Cauchy transform, 2/j0 (Anderson-Hinkkanen)"))
            } else if pv == 1.0 {
                Ok(exact(2.0, "L^1 norm of the Cauchy transform (Dostanic)"))
            } else {
                Ok(upper(dostanic_bound(p), "Dostanic interpolation bound for the Cauchy transform"))
            }
        }
        (OperatorId::J0, Target::LInfinity) => {
            if p.is_infinite() {
                return Ok(exact(4.0 / PI, "L^inf norm of J0, sup of I2"));
            }
            let base = gamma((pv - 2.0) / (pv - 1.0))? / gamma((3.0 * pv - 4.0) / (2.0 * pv - 2.0))?.powi(2);
            let v = base.powf(dual);
            Ok(NormResult::new(
                v,
                NormKind::ExactNorm,
                "L^p->L^inf norm of J0, M_q(1)^(1-1/p) by Gauss summation",
                1e-13 * v,
            ))
        }
        (OperatorId::J0Star, Target::LInfinity) => {
            if p.is_infinite() {
                let v = (1.0 + 2.0 * catalan()) / PI;
                return Ok(NormResult::new(v, NormKind::ExactNorm, "L^inf norm of J0*, (1+2*Catalan)/pi", 1e-15));
            }
            let a = a_p_constant(pv, 1e-12)?.map_monotone(|x| x.powf(dual));
            Ok(NormResult::new(
                a.value,
                NormKind::ExactNorm,
                "L^p->L^inf norm of J0*, A(p)^(1-1/p) with A(p) a 3F2 at 1",
                a.tail_bound + rounding(a.value),
            ))
        }
        (OperatorId::J0Star, Target::SameP) => {
            if pv == 1.0 {
                Ok(exact(4.0 / PI, "L^1 norm of J0*, dual to the L^inf norm of J0"))
            } else if pv == 2.0 {
                Ok(exact(FRAC_1_SQRT_2, "L^2 norm of J0*, angular mode decomposition"))
            } else {
                let rt = riesz_thorin_bound(p).value;
                let sc = j0star_finiteness_bound(p);
                if rt <= sc {
                    Ok(upper(rt, "Riesz-Thorin interpolation of the L^1, L^2, L^inf norms of J0*"))
                } else {
                    Ok(upper(sc, "Schur test bound 4^(1/p)(1+2*Catalan)^(1-1/p)/pi for J0*"))
                }
            }
        }
        (OperatorId::CDelta, Target::SameP) => {
            let v = kalaj_bound(p);
            if pv == 1.0 || pv == 2.0 {
                Ok(exact(v, "Kalaj bound for C_Delta, attained at this endpoint"))
            } else {
                Ok(upper(v, "Kalaj bound for C_Delta"))
            }
        }
        (OperatorId::CDelta, Target::LInfinity) if p.is_infinite() => {
            Ok(exact(kalaj_bound(p), "Kalaj bound for C_Delta, attained at this endpoint"))
        }
        _ => unsupported(),
    }
}
