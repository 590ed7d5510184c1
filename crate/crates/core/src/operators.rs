//! Pointwise evaluation of the five integral transforms on `𝔻`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quadrature::{integrate_disk, integrate_disk_singular, DiskPoint, DiskRule, Integral, Singularity};

/// Evaluation points for the bounded kernels stay this far inside the circle.
pub const MAX_KERNEL_RADIUS: f64 = 1.0 - 1e-6;

type Eval = dyn Fn(Complex64) -> Complex64 + Send + Sync;

/// A function on the disk, optionally with one declared point singularity
/// `|f(w)| ≲ |w − c|^{−order}`.
#[derive(Clone)]
pub struct FieldFn {
    eval: Arc<Eval>,
    singularity: Option<(DiskPoint, f64)>,
}

impl fmt::Debug for FieldFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldFn").field("singularity", &self.singularity).finish_non_exhaustive()
    }
}

impl FieldFn {
    pub fn new(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self { eval: Arc::new(f), singularity: None }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(move |_| c)
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::new(move |w| p.eval(w))
    }

    /// Declares an integrable singularity of the given order at `center`.
    pub fn with_singularity(mut self, center: DiskPoint, order: f64) -> Result<Self> {
        if !(order > 0.0 && order < 2.0) {
            return Err(Error::Domain(format!("singularity order must lie in (0, 2), got {order}")));
        }
        self.singularity = Some((center, order));
        Ok(self)
    }

    pub fn singularity(&self) -> Option<(DiskPoint, f64)> {
        self.singularity
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        (self.eval)(w)
    }

    /// `α f + β g`; a singularity is kept when only one side declares it or
    /// both agree on the center (the larger order wins).
    pub fn combine(alpha: Complex64, f: &FieldFn, beta: Complex64, g: &FieldFn) -> Result<FieldFn> {
        let singularity = match (f.singularity, g.singularity) {
            (None, s) | (s, None) => s,
            (Some((c1, o1)), Some((c2, o2))) if c1 == c2 => Some((c1, o1.max(o2))),
            _ => {
                return Err(Error::Configuration("cannot combine functions singular at different points".into()))
            }
        };
        let (f, g) = (f.eval.clone(), g.eval.clone());
        Ok(FieldFn { eval: Arc::new(move |w| alpha * f(w) + beta * g(w)), singularity })
    }
}

/// The five transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorId {
    /// `𝔠[f](z) = ∫ f(w)/(w − z) dA(w)`
    Cauchy,
    /// `𝔅[f](z) = ∫ f(w)/(1 − w̄z)² dA(w)`
    Bergman,
    /// `𝔍₀[f](z) = ∫ z f(w)/(1 − w̄z) dA(w)`
    J0,
    /// `𝔍₀*[f](z) = ∫ w̄ f(w)/(1 − w̄z) dA(w)`
    J0Star,
    /// `C_Δ = 𝔍₀* − 𝔠`
    CDelta,
}

impl OperatorId {
    pub const ALL: [OperatorId; 5] =
        [OperatorId::Cauchy, OperatorId::Bergman, OperatorId::J0, OperatorId::J0Star, OperatorId::CDelta];

    pub fn name(self) -> &'static str {
        match self {
            OperatorId::Cauchy => "cauchy",
            OperatorId::Bergman => "bergman",
            OperatorId::J0 => "j0",
            OperatorId::J0Star => "j0star",
            OperatorId::CDelta => "cdelta",
        }
    }

    /// Kernel `k(z, w)` of the bounded operators; `None` for the singular ones.
    pub fn bounded_kernel(self, z: Complex64, w: Complex64) -> Option<Complex64> {
        let d = Complex64::new(1.0, 0.0) - w.conj() * z;
        match self {
            OperatorId::Bergman => Some(1.0 / (d * d)),
            OperatorId::J0 => Some(z / d),
            OperatorId::J0Star => Some(w.conj() / d),
            OperatorId::Cauchy | OperatorId::CDelta => None,
        }
    }

    /// `∂/∂z̄` of the image equals this multiple of `f(z)`.
    pub fn dbar_factor(self) -> f64 {
        match self {
            OperatorId::CDelta => 1.0,
            OperatorId::Cauchy => -1.0,
            _ => 0.0,
        }
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['_', '-', '*'], "").as_str() {
            "cauchy" | "c" => Ok(OperatorId::Cauchy),
            "bergman" | "b" => Ok(OperatorId::Bergman),
            "j0" => Ok(OperatorId::J0),
            "j0star" | "j0adj" => Ok(OperatorId::J0Star),
            "cdelta" | "cd" => Ok(OperatorId::CDelta),
            other => Err(Error::Domain(format!("unknown operator {other:?}"))),
        }
    }
}

/// Rule for a singular integrand at `center`: the caller's strategy if it
/// has one (re-centered), otherwise a Möbius rule with the same node counts.
fn singular_rule(rule: &DiskRule, center: DiskPoint) -> Result<DiskRule> {
    match rule.singularity() {
        Singularity::None => rule.clone().with_singularity(Singularity::Mobius { center }),
        _ => Ok(rule.clone().centered_at(center)),
    }
}

/// `op[f](z)` by quadrature.
///
/// - `CAUCHY` needs a singular strategy in `rule` centered at `z`; the
///   exponent is `1` plus the order of a singularity `f` declares at `z`.
///   A declared singularity elsewhere is not resolved separately.
/// - The bounded kernels need `|z| ≤ 1 − 1e−6` and, for `|z| > 0.9`, at
///   least `64/(1 − |z|)` angular nodes (see [`DiskRule::resolving`]).
pub fn apply(op: OperatorId, f: &FieldFn, z: DiskPoint, rule: &DiskRule) -> Result<Integral> {
    if !z.is_interior() {
        return Err(Error::Domain(format!("evaluation point {} is not inside the disk", z.value())));
    }
    let zv = z.value();
    match op {
        OperatorId::Cauchy => {
            if rule.singularity() == Singularity::None {
                return Err(Error::Configuration("the Cauchy kernel needs a MOBIUS or ANNULUS_EXCLUDE rule".into()));
            }
            let s = match f.singularity {
                Some((c, order)) if (c.value() - zv).norm() < 1e-12 => 1.0 + order,
                _ => 1.0,
            };
            let g = |w: Complex64| f.eval(w) / (w - zv);
            integrate_disk_singular(g, z, s, rule)
        }
        OperatorId::CDelta => {
            let j = apply(OperatorId::J0Star, f, z, rule)?;
            let c = apply(OperatorId::Cauchy, f, z, rule)?;
            Ok(j.minus(&c))
        }
        _ => {
            if z.modulus() > MAX_KERNEL_RADIUS {
                return Err(Error::Domain(format!(
                    "|z| = {} exceeds 1 − 1e−6; use the boundary closed forms",
                    z.modulus()
                )));
            }
            rule.check_resolves(z)?;
            let g = |w: Complex64| op.bounded_kernel(zv, w).unwrap_or_default() * f.eval(w);
            match f.singularity {
                Some((c, order)) => integrate_disk_singular(g, c, order, &singular_rule(rule, c)?),
                None => integrate_disk(g, rule),
            }
        }
    }
}

/// `|⟨𝔍₀f, g⟩ − ⟨f, 𝔍₀*g⟩|` with `⟨u, v⟩ = ∫ u v̄ dA`.
///
/// The outer integral uses `rule`; each inner evaluation uses at least
/// `64` radial and `512` angular nodes, widened further to resolve its
/// point: the kernels have a pole at `1/z̄`, which limits both directions.
pub fn adjoint_pairing_residual(f: &FieldFn, g: &FieldFn, rule: &DiskRule) -> Result<f64> {
    let outer = DiskRule::new(rule.radial_nodes(), rule.angular_nodes(), Singularity::None)?;
    let inner = DiskRule::new(rule.radial_nodes().max(64), rule.angular_nodes().max(512), Singularity::None)?;
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let image = |op: OperatorId, h: &FieldFn, z: Complex64| -> Complex64 {
        let r = DiskPoint::from_complex(z)
            .and_then(|zp| apply(op, h, zp, &inner.clone().resolving(zp)).map(|i| i.value));
        r.unwrap_or_else(|e| {
            failure.lock().unwrap().get_or_insert(e);
            Complex64::new(f64::NAN, 0.0)
        })
    };
    let left = integrate_disk(|z| image(OperatorId::J0, f, z) * g.eval(z).conj(), &outer);
    let right = integrate_disk(|z| f.eval(z) * image(OperatorId::J0Star, g, z).conj(), &outer);
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok((left?.value - right?.value).norm())
}

/// `|∂z̄ C_Δ[f](z) − f(z)|` with central differences of step `h`.
pub fn dbar_identity_residual(f: &FieldFn, z: DiskPoint, h: f64, rule: &DiskRule) -> Result<f64> {
    dbar_residual_for(OperatorId::CDelta, f, z, h, rule)
}

/// `|∂z̄ op[f](z) − κ f(z)|` with `κ` from [`OperatorId::dbar_factor`]:
/// `1` for `C_Δ`, `−1` for `𝔠`, `0` for the holomorphic-valued operators.
///
/// Fails with a precision error when quadrature noise divided by `h`
/// exceeds `1e−3`.
pub fn dbar_residual_for(op: OperatorId, f: &FieldFn, z: DiskPoint, h: f64, rule: &DiskRule) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let zv = z.value();
    if zv.norm() + h >= 1.0 {
        return Err(Error::Domain("finite-difference stencil leaves the disk".into()));
    }
    let at = |dz: Complex64| -> Result<Integral> {
        let p = DiskPoint::from_complex(zv + dz)?;
        let r = if rule.singularity() == Singularity::None {
            rule.clone()
        } else {
            rule.clone().centered_at(p)
        };
        apply(op, f, p, &r.resolving(p))
    };
    let hx = Complex64::new(h, 0.0);
    let hy = Complex64::new(0.0, h);
    let (xp, xm, yp, ym) = (at(hx)?, at(-hx)?, at(hy)?, at(-hy)?);
    let noise = (xp.abs_error_estimate + xm.abs_error_estimate + yp.abs_error_estimate + ym.abs_error_estimate)
        / (2.0 * h);
    if noise > 1e-3 {
        return Err(Error::Precision { value: noise, bound: 1e-3, terms: 4 });
    }
    let dx = (xp.value - xm.value) / (2.0 * h);
    let dy = (yp.value - ym.value) / (2.0 * h);
    let dbar = 0.5 * (dx + Complex64::i() * dy);
    Ok((dbar - op.dbar_factor() * f.eval(zv)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::profile_k;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn mobius_rule() -> DiskRule {
        DiskRule::new(64, 128, Singularity::Mobius { center: DiskPoint::origin() }).unwrap()
    }

    fn plain_rule() -> DiskRule {
        DiskRule::new(64, 128, Singularity::None).unwrap()
    }

    fn point(rng: &mut ChaCha8Rng, rmax: f64) -> DiskPoint {
        let r: f64 = rng.gen_range(0.0..rmax);
        let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        DiskPoint::from_complex(Complex64::from_polar(r, t)).unwrap()
    }

    #[test]
    fn examples() {
        let rule = plain_rule();
        let z = DiskPoint::new(0.4, -0.3).unwrap();
        let one = FieldFn::constant(c(1.0));
        let v = apply(OperatorId::J0, &one, z, &rule).unwrap();
        assert!((v.value - z.value()).norm() < 1e-12);
        let w = FieldFn::new(|w| w);
        let v = apply(OperatorId::J0Star, &w, z, &rule).unwrap();
        assert!((v.value - 0.5).norm() < 1e-12);
        for k in 0..=5 {
            let f = FieldFn::new(move |w: Complex64| w.powu(k));
            let v = apply(OperatorId::Bergman, &f, z, &rule).unwrap();
            assert!((v.value - z.value().powu(k)).norm() < 1e-11, "k={k}");
        }
        // extremal Cauchy family at b = 0, p = 4: |𝔠[f](0)| = K₄(0)^{3/4}
        let q = 4.0 / 3.0;
        let k = profile_k(4.0, 0.0).unwrap();
        let o = DiskPoint::origin();
        let g = FieldFn::new(move |w: Complex64| k.powf(-0.25) * w / w.norm().powf(q))
            .with_singularity(o, q - 1.0)
            .unwrap();
        let v = apply(OperatorId::Cauchy, &g, o, &mobius_rule()).unwrap();
        assert!((v.value.norm() - 3f64.powf(0.75)).abs() < 1e-9, "{v:?}");
        assert!((3f64.powf(0.75) - 2.2795).abs() < 1e-4);
    }

    #[test]
    fn errors() {
        let one = FieldFn::constant(c(1.0));
        let z = DiskPoint::real(0.2).unwrap();
        assert!(matches!(apply(OperatorId::Cauchy, &one, z, &plain_rule()), Err(Error::Configuration(_))));
        assert!(matches!(apply(OperatorId::Cauchy, &one, z, &mobius_rule()), Err(Error::Configuration(_))));
        let edge = DiskPoint::real(1.0).unwrap();
        assert!(matches!(apply(OperatorId::J0, &one, edge, &plain_rule()), Err(Error::Domain(_))));
        let near = DiskPoint::real(0.99).unwrap();
        assert!(matches!(apply(OperatorId::J0, &one, near, &plain_rule()), Err(Error::Configuration(_))));
        let v = apply(OperatorId::J0, &one, near, &plain_rule().resolving(near)).unwrap();
        assert!((v.value - 0.99).norm() < 1e-10);
        assert!(FieldFn::constant(c(1.0)).with_singularity(z, 2.0).is_err());
    }

    #[test]
    fn matches_exact_polynomial_images() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let p = Poly::random(&mut rng, 6, 4);
            let z = point(&mut rng, 0.85);
            let f = FieldFn::from_poly(p.clone());
            for op in OperatorId::ALL {
                let rule = if matches!(op, OperatorId::Cauchy | OperatorId::CDelta) {
                    DiskRule::default().with_singularity(Singularity::Mobius { center: z }).unwrap()
                } else {
                    plain_rule()
                };
                let v = apply(op, &f, z, &rule).unwrap();
                let exact = p.image(op).eval(z.value());
                assert!((v.value - exact).norm() < 1e-9, "{op} at {}: {} vs {exact}", z.value(), v.value);
            }
        }
    }

    #[test]
    fn kernel_series_consistency() {
        // 𝔍₀*[w^{k+1}] = z^k/(k+2) since ∫|w|^{2k+2} dA = 1/(k+2); 𝔍₀*[w̄^k] = 0
        let rule = plain_rule();
        let z = DiskPoint::new(0.5, 0.2).unwrap();
        for k in 0..=8u32 {
            let f = FieldFn::new(move |w: Complex64| w.powu(k + 1));
            let v = apply(OperatorId::J0Star, &f, z, &rule).unwrap();
            assert!((v.value - z.value().powu(k) / (k as f64 + 2.0)).norm() < 1e-8, "k={k}");
            let f = FieldFn::new(move |w: Complex64| w.conj().powu(k));
            let v = apply(OperatorId::J0Star, &f, z, &rule).unwrap();
            assert!(v.value.norm() < 1e-8, "k={k}");
        }
    }

    #[test]
    fn cdelta_decomposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let p = Poly::random(&mut rng, 5, 3);
            let a = rng.gen_range(0.5..2.0);
            let f = FieldFn::new(move |w: Complex64| p.eval(w) * (a * w.re).exp());
            let z = point(&mut rng, 0.8);
            let rule = mobius_rule().centered_at(z);
            let cd = apply(OperatorId::CDelta, &f, z, &rule).unwrap();
            let j = apply(OperatorId::J0Star, &f, z, &rule).unwrap();
            let cc = apply(OperatorId::Cauchy, &f, z, &rule).unwrap();
            let tol = cd.abs_error_estimate + j.abs_error_estimate + cc.abs_error_estimate;
            assert!((cd.value - (j.value - cc.value)).norm() <= tol.max(1e-14));
        }
    }

    #[test]
    fn linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = Poly::random(&mut rng, 5, 4);
        let q = Poly::random(&mut rng, 5, 4);
        let (alpha, beta) = (Complex64::new(0.3, -1.2), Complex64::new(2.0, 0.5));
        let f = FieldFn::from_poly(p);
        let g = FieldFn::from_poly(q);
        let h = FieldFn::combine(alpha, &f, beta, &g).unwrap();
        let z = DiskPoint::new(-0.3, 0.6).unwrap();
        for op in OperatorId::ALL {
            let rule = mobius_rule().centered_at(z);
            let lhs = apply(op, &h, z, &rule).unwrap().value;
            let rhs = alpha * apply(op, &f, z, &rule).unwrap().value + beta * apply(op, &g, z, &rule).unwrap().value;
            assert!((lhs - rhs).norm() < 1e-9, "{op}");
        }
    }

    #[test]
    fn adjoint_pairing() {
        let rule = DiskRule::new(12, 32, Singularity::None).unwrap();
        let w = FieldFn::new(|w| w);
        assert!(adjoint_pairing_residual(&w, &w, &rule).unwrap() <= 1e-8);
        let one = FieldFn::constant(c(1.0));
        assert!(adjoint_pairing_residual(&one, &one, &rule).unwrap() <= 1e-8);
        let f = FieldFn::new(|w: Complex64| w * w * w.conj());
        let g = FieldFn::new(|w: Complex64| w + 0.5 * w.conj());
        assert!(adjoint_pairing_residual(&f, &g, &rule).unwrap() <= 1e-6);
    }

    #[test]
    fn dbar_identities() {
        let rule = mobius_rule();
        let one = FieldFn::constant(c(1.0));
        let z = DiskPoint::new(0.2, 0.1).unwrap();
        assert!(dbar_identity_residual(&one, z, 1e-3, &rule).unwrap() <= 1e-3);
        let w = FieldFn::new(|w| w);
        assert!(dbar_identity_residual(&w, DiskPoint::origin(), 1e-3, &rule).unwrap() <= 1e-3);
        let f = FieldFn::new(|w: Complex64| (w * w.conj()).exp());
        assert!(dbar_residual_for(OperatorId::Cauchy, &f, z, 1e-3, &rule).unwrap() <= 1e-3);
        assert!(dbar_residual_for(OperatorId::Bergman, &f, z, 1e-3, &plain_rule()).unwrap() <= 1e-3);
        // a rule this coarse is all noise at a tiny step
        let coarse = DiskRule::new(8, 16, Singularity::Mobius { center: z }).unwrap();
        let rough = FieldFn::new(|w: Complex64| Complex64::new((40.0 * w.re).sin(), 0.0));
        assert!(matches!(dbar_identity_residual(&rough, z, 1e-9, &coarse), Err(Error::Precision { .. })));
    }

    #[test]
    fn parse_names() {
        for op in OperatorId::ALL {
            assert_eq!(op.name().parse::<OperatorId>().unwrap(), op);
        }
        assert_eq!("J0_STAR".parse::<OperatorId>().unwrap(), OperatorId::J0Star);
        assert!("hilbert".parse::<OperatorId>().is_err());
    }
}
