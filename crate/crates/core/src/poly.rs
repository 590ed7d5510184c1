//! Polynomials in `w` and `w̄` and their exact images under the operators.
//!
//! Monomial images, for `a, b ≥ 0`:
//!
//! | operator | `w^a w̄^b ↦` |
//! |---|---|
//! | `𝔍₀` | `z^{a−b+1}/(a+1)` if `a ≥ b`, else `0` |
//! | `𝔍₀*` | `z^{a−b−1}/(a+1)` if `a > b`, else `0` |
//! | `𝔅` | `(a−b+1) z^{a−b}/(a+1)` if `a ≥ b`, else `0` |
//! | `𝔠` | `(z^{a−b−1}[a > b] − z^a z̄^{b+1})/(b+1)` |

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;

use crate::operators::OperatorId;

/// `Σ c_{ab} w^a w̄^b` with finitely many nonzero coefficients.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(a: u32, b: u32, coef: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, coef);
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, coef: Complex64) {
        let c = self.terms.entry((a, b)).or_insert(Complex64::new(0.0, 0.0));
        *c += coef;
        if *c == Complex64::new(0.0, 0.0) {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Complex64)> + '_ {
        self.terms.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree `a + b`.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        let wc = w.conj();
        self.terms().map(|(a, b, c)| c * w.powu(a) * wc.powu(b)).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero();
        for (a, b, c) in self.terms() {
            out.add_term(a, b, c * s);
        }
        out
    }

    pub fn add(&self, other: &Poly) -> Self {
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.add_term(a, b, c);
        }
        out
    }

    /// `∫_𝔻 |P|² dA`, using `∫ w^a w̄^b dA = δ_{ab}/(a+1)`.
    pub fn l2_norm_sqr(&self) -> f64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (a, b, c) in self.terms() {
            for (a2, b2, c2) in self.terms() {
                // c w^a w̄^b · conj(c2 w^{a2} w̄^{b2}) = c c̄2 w^{a+b2} w̄^{b+a2}
                if a + b2 == b + a2 {
                    total += c * c2.conj() / (a + b2 + 1) as f64;
                }
            }
        }
        total.re
    }

    /// Random polynomial with `n_terms` monomials of total degree ≤ `degree`
    /// and coefficients uniform in the square `[−1, 1]²`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, degree: u32, n_terms: usize) -> Self {
        let mut out = Self::zero();
        for _ in 0..n_terms {
            let a = rng.gen_range(0..=degree);
            let b = rng.gen_range(0..=degree - a);
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            out.add_term(a, b, c);
        }
        out
    }

    /// Exact image `op[P]`, again a polynomial in `z, z̄`.
    pub fn image(&self, op: OperatorId) -> Poly {
        let mut out = Poly::zero();
        for (a, b, c) in self.terms() {
            let af = (a + 1) as f64;
            match op {
                OperatorId::J0 => {
                    if a >= b {
                        out.add_term(a - b + 1, 0, c / af);
                    }
                }
                OperatorId::J0Star => {
                    if a > b {
                        out.add_term(a - b - 1, 0, c / af);
                    }
                }
                OperatorId::Bergman => {
                    if a >= b {
                        out.add_term(a - b, 0, c * ((a - b + 1) as f64) / af);
                    }
                }
                OperatorId::Cauchy => {
                    let bf = (b + 1) as f64;
                    if a > b {
                        out.add_term(a - b - 1, 0, c / bf);
                    }
                    out.add_term(a, b + 1, -c / bf);
                }
                OperatorId::CDelta => {
                    let single = Poly::monomial(a, b, c);
                    out = out
                        .add(&single.image(OperatorId::J0Star))
                        .add(&single.image(OperatorId::Cauchy).scale(Complex64::new(-1.0, 0.0)));
                }
            }
        }
        out
    }
}
