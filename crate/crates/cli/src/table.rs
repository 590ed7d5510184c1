//! Data tables: interpolation bound, `L^p → L^∞` curves, radial profiles.

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use diskop::norms::{closed_form_norm, riesz_thorin_bound, NormQuery, Target};
use diskop::operators::OperatorId;
use diskop::profiles::profile_k;
use diskop::Exponent;

use crate::report::sig10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Interpolation,
    #[value(name = "lp_linf_curves", alias = "lp-linf-curves")]
    LpLinfCurves,
    Profiles,
}

#[derive(Debug)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// Comma-separated exponents, `inf` allowed.
pub fn parse_grid(s: &str) -> Result<Vec<Exponent>> {
    let grid = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse::<Exponent>().with_context(|| format!("grid entry {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    if grid.is_empty() {
        bail!("empty p grid");
    }
    Ok(grid)
}

pub fn default_grid(kind: TableKind) -> &'static str {
    match kind {
        TableKind::Interpolation => "1,1.5,2,3,4,10,inf",
        TableKind::LpLinfCurves | TableKind::Profiles => "3,4,10,inf",
    }
}

fn p_label(p: Exponent) -> String {
    p.to_string()
}

fn require_above_two(kind: &str, p: Exponent) -> Result<()> {
    if p.value() <= 2.0 {
        bail!("{kind} needs p > 2 (conjugate q < 2), got p = {p}");
    }
    Ok(())
}

pub fn build(kind: TableKind, grid: &[Exponent], op: OperatorId, rho_points: usize) -> Result<Table> {
    let mut rows = Vec::new();
    match kind {
        TableKind::Interpolation => {
            for &p in grid {
                let r = riesz_thorin_bound(p);
                rows.push(vec![p_label(p), sig10(r.value), r.kind.to_string()]);
            }
            Ok(Table { header: vec!["p", "value", "kind"], rows })
        }
        TableKind::LpLinfCurves => {
            for &p in grid {
                require_above_two("an L^p -> L^inf curve", p)?;
                let r = closed_form_norm(&NormQuery::new(op, p, Target::LInfinity)?)?;
                rows.push(vec![p_label(p), sig10(r.value), r.kind.to_string()]);
            }
            Ok(Table { header: vec!["p", "value", "kind"], rows })
        }
        TableKind::Profiles => {
            if rho_points < 2 {
                bail!("--rho-points must be at least 2");
            }
            for &p in grid {
                require_above_two("the profile K_p", p)?;
                for i in 0..rho_points {
                    let rho = i as f64 / (rho_points - 1) as f64;
                    let v = profile_k(p.value(), rho)?;
                    rows.push(vec![p_label(p), sig10(rho), sig10(v), "K_p".into()]);
                }
            }
            Ok(Table { header: vec!["p", "rho", "value", "kind"], rows })
        }
    }
}
