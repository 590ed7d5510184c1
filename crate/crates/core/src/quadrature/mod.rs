//! Integration over the unit disk with the normalized measure `dA = dx dy / π`.
//!
//! The base rule is a tensor product of Gauss–Legendre in the radius (the
//! Jacobian `r` folded into the integrand) and the trapezoid rule in the
//! angle, which is exact for trigonometric polynomials of degree below the
//! number of angles. Singular integrands go through [`integrate_disk_singular`].

mod gauss_legendre;
mod singular;

pub use gauss_legendre::GaussLegendre;
pub use singular::{
    integrate_centered, integrate_disk_singular, truncated_singular_integral, RadialMap,
};

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// A point of the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(re, im))
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm_sqr() > 1.0 + 4.0 * f64::EPSILON {
            return Err(Error::Domain(format!("{z} is outside the closed unit disk")));
        }
        Ok(Self(z))
    }

    /// A point on the real axis.
    pub fn real(x: f64) -> Result<Self> {
        Self::new(x, 0.0)
    }

    pub fn origin() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn modulus(self) -> f64 {
        self.0.norm()
    }

    pub fn is_interior(self) -> bool {
        self.0.norm_sqr() < 1.0
    }
}

impl From<DiskPoint> for Complex64 {
    fn from(p: DiskPoint) -> Self {
        p.0
    }
}

/// How a rule treats an integrable point singularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Singularity {
    None,
    /// Integrate over `|w − b| > ε` at `ε, ε/2, ε/4` and Richardson-extrapolate.
    AnnulusExclude { epsilon: f64 },
    /// Recenter with the disk automorphism sending `0` to `center`.
    Mobius { center: DiskPoint },
}

/// Polar quadrature rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskRule {
    radial_nodes: usize,
    angular_nodes: usize,
    singularity: Singularity,
}

/// Radius beyond which the `1/(1 − w̄z)` boundary layer governs the angular
/// resolution.
pub const BOUNDARY_LAYER_RADIUS: f64 = 0.9;

impl Default for DiskRule {
    /// 256 radial × 512 angular nodes, no singularity handling.
    fn default() -> Self {
        Self { radial_nodes: 256, angular_nodes: 512, singularity: Singularity::None }
    }
}

impl DiskRule {
    pub fn new(radial_nodes: usize, angular_nodes: usize, singularity: Singularity) -> Result<Self> {
        if radial_nodes < 8 {
            return Err(Error::Configuration(format!("radial_nodes = {radial_nodes} < 8")));
        }
        if angular_nodes < 16 {
            return Err(Error::Configuration(format!("angular_nodes = {angular_nodes} < 16")));
        }
        if let Singularity::AnnulusExclude { epsilon } = singularity {
            if !(epsilon > 0.0 && epsilon < 0.5) {
                return Err(Error::Configuration(format!(
                    "annulus epsilon = {epsilon} must lie in (0, 0.5)"
                )));
            }
        }
        Ok(Self { radial_nodes, angular_nodes, singularity })
    }

    pub fn radial_nodes(&self) -> usize {
        self.radial_nodes
    }

    pub fn angular_nodes(&self) -> usize {
        self.angular_nodes
    }

    pub fn singularity(&self) -> Singularity {
        self.singularity
    }

    pub fn with_singularity(mut self, singularity: Singularity) -> Result<Self> {
        self.singularity = singularity;
        Self::new(self.radial_nodes, self.angular_nodes, singularity)
    }

    /// Moves a Möbius strategy to `center`; other strategies are unchanged.
    pub fn centered_at(mut self, center: DiskPoint) -> Self {
        if let Singularity::Mobius { .. } = self.singularity {
            self.singularity = Singularity::Mobius { center };
        }
        self
    }

    /// Minimum angular nodes for kernels with a `1/(1 − w̄z)` boundary
    /// layer at evaluation point `z`: `64 / (1 − |z|)` once `|z| > 0.9`.
    pub fn required_angular_nodes(z: DiskPoint) -> usize {
        let r = z.modulus();
        if r > BOUNDARY_LAYER_RADIUS {
            (64.0 / (1.0 - r)).ceil() as usize
        } else {
            16
        }
    }

    /// Errors if the rule is too coarse for the boundary layer at `z`.
    pub fn check_resolves(&self, z: DiskPoint) -> Result<()> {
        let need = Self::required_angular_nodes(z);
        if self.angular_nodes < need {
            return Err(Error::Configuration(format!(
                "|z| = {} needs at least {need} angular nodes, rule has {}",
                z.modulus(),
                self.angular_nodes
            )));
        }
        Ok(())
    }

    /// Copy of the rule with enough angular nodes for the boundary layer at `z`.
    pub fn resolving(mut self, z: DiskPoint) -> Self {
        self.angular_nodes = self.angular_nodes.max(Self::required_angular_nodes(z));
        self
    }

    pub(crate) fn halved(&self) -> (usize, usize) {
        ((self.radial_nodes / 2).max(1), (self.angular_nodes / 2).max(1))
    }
}

/// A complex integral and an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub abs_error_estimate: f64,
}

impl Integral {
    pub fn new(value: Complex64, abs_error_estimate: f64) -> Self {
        Self { value, abs_error_estimate: abs_error_estimate.max(0.0) }
    }

    /// `self − other` with errors added.
    pub fn minus(&self, other: &Integral) -> Integral {
        Integral::new(self.value - other.value, self.abs_error_estimate + other.abs_error_estimate)
    }
}

/// Plain tensor-product sum; returns the value and `Σ |f| · weight`.
pub(crate) fn polar_sum<F>(f: &F, radial: usize, angular: usize) -> Result<(Complex64, f64)>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let gl = GaussLegendre::new(radial);
    let dtheta = 2.0 * PI / angular as f64;
    let rows: Vec<(Complex64, f64)> = gl
        .nodes()
        .par_iter()
        .zip(gl.weights().par_iter())
        .map(|(&r, &w)| {
            // (1/π) r dr dθ with Δθ = 2π/M
            let weight = 2.0 * w * r / angular as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            let mut abs = 0.0;
            for j in 0..angular {
                let node = Complex64::from_polar(r, dtheta * j as f64);
                let v = f(node);
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::Evaluation { re: node.re, im: node.im });
                }
                acc += v;
                abs += v.norm();
            }
            Ok((acc * weight, abs * weight))
        })
        .collect::<Result<_>>()?;
    Ok(rows.iter().fold((Complex64::new(0.0, 0.0), 0.0), |(a, b), (v, m)| (a + v, b + m)))
}

/// Rounding allowance relative to `∫|f|`.
pub(crate) fn rounding_floor(abs_mass: f64) -> f64 {
    64.0 * f64::EPSILON * abs_mass
}

/// `∫_𝔻 f dA` by the polar tensor rule; the error estimate is the distance
/// to the same rule with half the nodes in each direction, plus a rounding
/// allowance.
///
/// The singularity field of `rule` is ignored here.
pub fn integrate_disk<F>(f: F, rule: &DiskRule) -> Result<Integral>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let (value, mass) = polar_sum(&f, rule.radial_nodes, rule.angular_nodes)?;
    let (hr, ha) = rule.halved();
    let (coarse, _) = polar_sum(&f, hr, ha)?;
    Ok(Integral::new(value, (value - coarse).norm() + rounding_floor(mass)))
}
