//! Integral operators on the unit disk and their operator norms.
//!
//! The crate covers five transforms acting on functions of the unit disk
//! `𝔻` with the normalized area measure `dA = dx dy / π`:
//!
//! | Operator | Kernel |
//! |----------|--------|
//! | Cauchy transform | `1 / (w − z)` |
//! | Bergman projection | `1 / (1 − w̄z)²` |
//! | `J0` | `z / (1 − w̄z)` |
//! | `J0*` | `w̄ / (1 − w̄z)` |
//! | Dirichlet Cauchy transform `C_Δ` | `1 / (z − w) + w̄ / (1 − w̄z)` |
//!
//! Modules, bottom-up:
//!
//! - [`specfun`]: log-gamma, Pochhammer symbols, generalized hypergeometric
//!   series with tail bounds, Gauss's summation, `j₀`, Catalan's constant, `ζ`.
//! - [`profiles`]: the radial profile functions `K_p`, `M_q`, `N_q`, `F`, the
//!   angular power mean and the constant `A(p)`.
//! - [`quadrature`]: polar Gauss–Legendre rules on the disk, singular
//!   strategies (Möbius recentering and annulus exclusion with Richardson
//!   extrapolation) and truncated singular integrals.
//! - [`operators`]: pointwise application of the transforms, the adjoint
//!   pairing check and the `∂/∂z̄` identities.
//! - [`norms`]: the closed-form norm catalog, interpolation bounds, extremal
//!   functions, the `L²` angular-mode analysis and the `p = 2` counterexamples.

pub mod error;
pub mod exponent;
pub mod norms;
pub mod operators;
pub mod poly;
pub mod profiles;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use exponent::{Conjugate, Exponent};
pub use num_complex::Complex64;
