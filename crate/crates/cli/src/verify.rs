//! Verification suites: every row carries its claimed value, tolerance and
//! a citation.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use clap::ValueEnum;
use diskop::norms::{
    boundary_growth, catalan, cauchy_divergence_fit, closed_form_norm, counterexample, counterexample_l2_norm_sqr,
    dostanic_bound, fatou_positivity, l2_norm_numeric, lower_bound_via_extremal, mode_best_constant,
    mode_function, mode_reduce, rayleigh_grid_maximum, riesz_thorin_bound, sampled_lower_bound, CounterexampleId,
    NormQuery, Target,
};
use diskop::operators::{adjoint_pairing_residual, apply, dbar_identity_residual, FieldFn, OperatorId};
use diskop::poly::Poly;
use diskop::profiles::{
    a_p_constant, a_p_zeta_bound, h_coefficient, n_boundary_direct, profile_f, profile_k, profile_m, profile_n,
};
use diskop::quadrature::{integrate_disk, integrate_disk_singular, DiskPoint, DiskRule, Singularity};
use diskop::specfun::{bessel_j0_smallest_zero, catalan_constant, gamma, gauss_2f1_at_1, riemann_zeta};
use diskop::{Complex64, Exponent};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::ReportRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Specfun,
    Profiles,
    Operators,
    Norms,
    Counterexamples,
}

/// Knobs shared by the suites.
#[derive(Debug, Clone)]
pub struct Settings {
    pub seed: u64,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    /// Annulus-exclusion radius; `None` selects Möbius recentering.
    pub epsilon: Option<f64>,
    /// Replaces every row's tolerance when set.
    pub tol: Option<f64>,
}

struct Rows<'a> {
    rows: Vec<ReportRow>,
    settings: &'a Settings,
}

impl<'a> Rows<'a> {
    fn tol(&self, default: f64) -> f64 {
        self.settings.tol.unwrap_or(default)
    }

    fn close(&mut self, label: &str, claimed: f64, computed: diskop::Result<f64>, tol: f64, citation: &str) {
        let tol = self.tol(tol);
        self.rows.push(match computed {
            Ok(v) => ReportRow::close(label, claimed, v, tol, citation),
            Err(e) => ReportRow::failed(label, claimed, &e, citation),
        });
    }

    fn at_most(&mut self, label: &str, bound: f64, computed: diskop::Result<f64>, tol: f64, citation: &str) {
        let tol = self.tol(tol);
        self.rows.push(match computed {
            Ok(v) => ReportRow::at_most(label, bound, v, tol, citation),
            Err(e) => ReportRow::failed(label, bound, &e, citation),
        });
    }

    /// A count of violations that must be zero.
    fn count(&mut self, label: &str, violations: diskop::Result<usize>, citation: &str) {
        self.rows.push(match violations {
            Ok(n) => ReportRow::close(label, 0.0, n as f64, 0.0, citation),
            Err(e) => ReportRow::failed(label, 0.0, &e, citation),
        });
    }
}

fn singular_rule(s: &Settings, center: DiskPoint) -> diskop::Result<DiskRule> {
    let strategy = match s.epsilon {
        Some(epsilon) => Singularity::AnnulusExclude { epsilon },
        None => Singularity::Mobius { center },
    };
    DiskRule::new(s.radial_nodes, s.angular_nodes, strategy)
}

fn plain_rule(s: &Settings) -> diskop::Result<DiskRule> {
    DiskRule::new(s.radial_nodes, s.angular_nodes, Singularity::None)
}

fn e(p: f64) -> Exponent {
    Exponent::new(p).expect("valid exponent literal")
}

fn closed(op: OperatorId, p: f64, target: Target) -> diskop::Result<f64> {
    Ok(closed_form_norm(&NormQuery::new(op, e(p), target)?)?.value)
}

pub fn run(suite: Suite, settings: &Settings) -> Vec<ReportRow> {
    let mut rows = Rows { rows: Vec::new(), settings };
    let all = suite == Suite::All;
    if all || suite == Suite::Specfun {
        specfun(&mut rows);
    }
    if all || suite == Suite::Profiles {
        profiles(&mut rows);
    }
    if all || suite == Suite::Operators {
        operators(&mut rows);
    }
    if all || suite == Suite::Norms {
        norms(&mut rows);
    }
    if all || suite == Suite::Counterexamples {
        counterexamples(&mut rows);
    }
    rows.rows
}

fn specfun(r: &mut Rows) {
    r.close("2F1(1/2,1/2;2;1) = 4/π", 4.0 / PI, gauss_2f1_at_1(0.5, 0.5, 2.0), 1e-10, "Gauss summation at unit argument");
    r.close(
        "Catalan constant α",
        0.915966,
        catalan_constant(1e-15).map(|v| v.value),
        5e-7,
        "alternating series Σ(−1)^k/(2k+1)²",
    );
    r.close("j0 smallest zero of J0", 2.4048256, Ok(bessel_j0_smallest_zero()), 5e-7, "Newton iteration on J0");
    r.close("Γ(1/2) = √π", PI.sqrt(), gamma(0.5), 1e-13, "Lanczos log-gamma");
    r.close("ζ(2) = π²/6", PI * PI / 6.0, riemann_zeta(2.0), 1e-12, "Riemann zeta");
    r.close(
        "Γ(1/2)/Γ(5/4)² = 2F1(3/4,3/4;2;1)",
        gamma(0.5).unwrap_or(f64::NAN) / gamma(1.25).unwrap_or(f64::NAN).powi(2),
        gauss_2f1_at_1(0.75, 0.75, 2.0),
        1e-12,
        "Gauss summation, q = 3/2",
    );
}

fn profiles(r: &mut Rows) {
    let s = r.settings.clone();
    for p in [3.0, 4.0, 10.0] {
        let q = p / (p - 1.0);
        let o = DiskPoint::origin();
        let k0 = singular_rule(&s, o).and_then(|rule| {
            integrate_disk_singular(|w: Complex64| Complex64::new(w.norm().powf(-q), 0.0), o, q, &rule)
                .map(|i| i.value.re)
        });
        r.close(&format!("K_p(0) = 2/(2-q) by singular quadrature, p={p}"), 2.0 / (2.0 - q), k0, 1e-8, "radial profile K_p at the center");
        let gamma_form = gamma(2.0 - q).and_then(|a| gamma(2.0 - q / 2.0).map(|b| a / (b * b)));
        r.close(
            &format!("M_q(1) = Γ(2-q)/Γ²(2-q/2), p={p}"),
            gamma_form.unwrap_or(f64::NAN),
            profile_m(q, 1.0),
            1e-10,
            "Gauss summation of M_q at ρ = 1",
        );
    }
    r.close(
        "I1(1) = N_1(1) = (1+2α)/π, direct series",
        (1.0 + 2.0 * catalan()) / PI,
        n_boundary_direct(1.0, 1e-9).map(|v| v.value),
        1e-6,
        "Catalan evaluation of the I1 integral",
    );
    for p in [2.5, 3.0, 4.0] {
        let q = p / (p - 1.0);
        match (a_p_constant(p, 1e-10), n_boundary_direct(q, 1e-8)) {
            (Ok(a), Ok(d)) => {
                let tol = a.tail_bound + d.tail_bound;
                r.close(&format!("A(p) 3F2 = direct N_q(1) series, p={p}"), d.value, Ok(a.value), tol, "two routes to N_q(1)");
                r.at_most(
                    &format!("A(p) ≤ ζ bound, p={p}"),
                    a_p_zeta_bound(p).unwrap_or(f64::NAN),
                    Ok(a.upper()),
                    0.0,
                    "ζ(3−q) bound on A(p)",
                );
            }
            (Err(err), _) | (_, Err(err)) => {
                r.rows.push(ReportRow::failed(format!("A(p), p={p}"), f64::NAN, &err, "two routes to N_q(1)"))
            }
        }
    }
    for q in [1.0, 1.25, 1.5, 1.75] {
        let p = if q == 1.0 { f64::INFINITY } else { q / (q - 1.0) };
        let grid: Vec<f64> = (0..100).map(|i| i as f64 / 100.0).collect();
        let violations = |vals: diskop::Result<Vec<f64>>, increasing: bool| {
            vals.map(|v| v.windows(2).filter(|w| if increasing { w[1] <= w[0] } else { w[1] >= w[0] }).count())
        };
        let series = |f: &dyn Fn(f64) -> diskop::Result<f64>| grid.iter().map(|&x| f(x)).collect::<diskop::Result<Vec<f64>>>();
        r.count(&format!("K_p decreasing, q={q}"), violations(series(&|x| profile_k(p, x)), false), "monotonicity of K_p");
        r.count(&format!("M_q increasing, q={q}"), violations(series(&|x| profile_m(q, x)), true), "monotonicity of M_q");
        r.count(
            &format!("N_q increasing, q={q}"),
            violations(series(&|x| profile_n(q, x, 1e-13).map(|v| v.value)), true),
            "monotonicity of N_q",
        );
        r.count(&format!("F decreasing, q={q}"), violations(series(&|x| profile_f(q, x)), false), "monotonicity of F");
        r.count(
            &format!("a_m >= 0, q={q}"),
            (0..100u64).map(|m| h_coefficient(q, m)).collect::<diskop::Result<Vec<f64>>>().map(|a| a.iter().filter(|&&x| x < 0.0).count()),
            "Taylor coefficients of H",
        );
    }
}

fn operators(r: &mut Rows) {
    let s = r.settings.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let residual = (|| {
        let rule = DiskRule::new(8, 32, Singularity::None)?;
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let f = FieldFn::from_poly(Poly::random(&mut rng, 4, 4));
            let g = FieldFn::from_poly(Poly::random(&mut rng, 4, 4));
            worst = worst.max(adjoint_pairing_residual(&f, &g, &rule)?);
        }
        Ok(worst)
    })();
    r.close("adjoint pairing <J0 f,g> = <f,J0* g>, 20 seeded pairs", 0.0, residual, 1e-6, "J0* is the adjoint of J0");

    let poly = Poly::monomial(2, 1, Complex64::new(1.0, 0.0)).add(&Poly::monomial(0, 0, Complex64::new(0.5, -0.25)));
    let f = FieldFn::from_poly(poly.clone());
    let z = DiskPoint::new(0.3, -0.2).expect("interior literal");
    for op in OperatorId::ALL {
        let exact = poly.image(op).eval(z.value());
        let numeric = singular_rule(&s, z).and_then(|rule| apply(op, &f, z, &rule)).map(|i| (i.value - exact).norm());
        r.close(&format!("{op}[w^2 conj(w) + c](z) vs exact image"), 0.0, numeric, 1e-8, "monomial images under the kernels");
    }
    let dbar = (|| {
        let rule = DiskRule::new(64, 128, Singularity::Mobius { center: z })?;
        dbar_identity_residual(&f, z, 1e-3, &rule)
    })();
    r.close("dbar C_Delta[f] = f", 0.0, dbar, 1e-4, "C_Delta inverts the dbar derivative");

    let monomials = plain_rule(&s).and_then(|rule| {
        let mut worst: f64 = 0.0;
        for a in 0..=10i32 {
            for b in 0..=10i32 {
                let v = integrate_disk(|w: Complex64| w.powi(a) * w.conj().powi(b), &rule)?.value;
                let exact = if a == b { 1.0 / (a as f64 + 1.0) } else { 0.0 };
                worst = worst.max((v - exact).norm());
            }
        }
        Ok(worst)
    });
    r.close("monomial integrals a,b <= 10", 0.0, monomials, 1e-12, "∫ w^a conj(w)^b dA = δ_ab/(a+1)");
}

fn norms(r: &mut Rows) {
    let s = r.settings.clone();
    let inf = f64::INFINITY;
    for d in 1..=5u32 {
        let label = if d == 1 { "mode d=1 constant = 1/2".to_string() } else { format!("mode d={d} constant = 1/(d(d+1))") };
        let claimed = mode_best_constant(d).map(|c| c.0).unwrap_or(f64::NAN);
        r.close(&label, claimed, rayleigh_grid_maximum(d, 1000).map(|m| m.value), 1e-6, "rank-one Rayleigh quotient of mode d");
    }
    r.close("||J0*||_2 = sqrt(1/2), sup over modes d <= 50", FRAC_1_SQRT_2, l2_norm_numeric(50).map(|n| n.value), 1e-12, "angular mode decomposition");
    let reduction = (|| {
        let rule = plain_rule(&s)?;
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        let mut worst: f64 = 0.0;
        for i in 0..10 {
            let z = DiskPoint::from_complex(Complex64::from_polar(rng.gen_range(0.0..0.85), rng.gen_range(0.0..std::f64::consts::TAU)))?;
            let d = (i % 4) as i64 - 1;
            let f_d = move |x: f64| x.powi(d.unsigned_abs() as i32) * (1.0 + x) * (1.0 + x * x);
            let g = mode_function(d, f_d);
            let v = apply(OperatorId::J0Star, &g, z, &rule.clone().resolving(z))?.value;
            worst = worst.max((v - mode_reduce(d, f_d).image(z.value())).norm());
        }
        Ok(worst)
    })();
    r.close("mode reduction 2A_d z^(d-1) vs quadrature, 10 points", 0.0, reduction, 1e-6, "residue computation on modes");

    r.close("||C||_(4->inf) = 3^(3/4)", 3f64.powf(0.75), closed(OperatorId::Cauchy, 4.0, Target::LInfinity), 1e-12, "Cauchy transform L^p->L^inf");
    r.close("||C||_2 = 2/j0", 2.0 / bessel_j0_smallest_zero(), closed(OperatorId::Cauchy, 2.0, Target::SameP), 1e-15, "Anderson-Hinkkanen");
    r.close("||J0||_inf = 4/π", 4.0 / PI, closed(OperatorId::J0, inf, Target::LInfinity), 1e-15, "sup of I2");
    r.close("||J0*||_inf = (1+2α)/π", 0.901431694245428, closed(OperatorId::J0Star, inf, Target::LInfinity), 1e-12, "Catalan evaluation of I1");
    for (p, want) in [(1.0, 4.0 / PI), (2.0, FRAC_1_SQRT_2), (inf, (1.0 + 2.0 * catalan()) / PI)] {
        r.close(&format!("Riesz-Thorin endpoint p={p}"), want, Ok(riesz_thorin_bound(e(p)).value), 1e-15, "interpolation endpoints");
    }
    for p in [3.0, 4.0, 10.0] {
        let lb = singular_rule(&s, DiskPoint::origin()).and_then(|rule| {
            lower_bound_via_extremal(OperatorId::Cauchy, e(p), DiskPoint::real(0.01)?, &rule).map(|n| n.value)
        });
        let c = closed(OperatorId::Cauchy, p, Target::LInfinity).unwrap_or(f64::NAN);
        r.close(&format!("Cauchy extremal at b=0.01 within 0.5%, p={p}"), c, lb, 0.005 * c, "extremal family attains the closed form");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    for p in [1.5, 3.0, 4.0] {
        let sampled = NormQuery::new(OperatorId::J0Star, e(p), Target::SameP)
            .and_then(|q| sampled_lower_bound(&q, &mut rng, 20, 4))
            .map(|n| n.value);
        r.at_most(&format!("J0* sampled ratio <= Riesz-Thorin, p={p}"), riesz_thorin_bound(e(p)).value, sampled, 0.0, "interpolation upper bound");
    }
    for p in [1.5, 3.0] {
        let sampled = NormQuery::new(OperatorId::Cauchy, e(p), Target::SameP)
            .and_then(|q| sampled_lower_bound(&q, &mut rng, 20, 4))
            .map(|n| n.value);
        r.at_most(&format!("Cauchy sampled ratio <= Dostanic, p={p}"), dostanic_bound(e(p)), sampled, 0.0, "Dostanic upper bound");
    }
}

fn counterexamples(r: &mut Rows) {
    let s = r.settings.clone();
    for id in CounterexampleId::ALL {
        let ce = counterexample(id);
        r.at_most(
            &format!("{id} ||g||_2^2 <= 2/log(3/2)"),
            ce.l2_bound,
            counterexample_l2_norm_sqr(id).map(|i| i.value.re),
            1e-3,
            "L^2 bound of the counterexample",
        );
    }
    match cauchy_divergence_fit(&[1e-2, 1e-3, 1e-4, 1e-5, 1e-6]) {
        Ok(fit) => {
            r.close("CAUCHY_P2 divergence slope vs 2 loglog(3/eps)", 1.0, Ok(fit.slope), 0.1, "truncated Cauchy integral grows like log log");
            for (eps, v) in fit.epsilons.iter().zip(&fit.values) {
                let predicted = fit.intercept + fit.slope * 2.0 * (3.0 / eps).ln().ln();
                r.close(&format!("CAUCHY_P2 truncated value, eps={eps:e}"), predicted, Ok(*v), 1e-3, "log log fit residual");
            }
        }
        Err(err) => r.rows.push(ReportRow::failed("CAUCHY_P2 divergence slope", 1.0, &err, "truncated Cauchy integral")),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let min_g = fatou_positivity(&mut rng, 1000);
    r.rows.push(ReportRow::with_err(
        "J0_P2 Fatou kernel G(t,rho,r) > 0, 1000 samples",
        0.0,
        min_g,
        if min_g > 0.0 { 0.0 } else { -min_g + f64::MIN_POSITIVE },
        0.0,
        "positivity of the Fatou integrand",
    ));
    for id in [CounterexampleId::J0P2, CounterexampleId::J0StarP2] {
        let growth = boundary_growth(id, &[1, 2, 3, 4, 5]).map(|v| v.windows(2).filter(|w| w[1].1 <= w[0].1).count());
        r.count(&format!("{id} Re image increasing at r = 1 - 10^-k, k=1..5"), growth, "unbounded growth toward the boundary");
    }
}
