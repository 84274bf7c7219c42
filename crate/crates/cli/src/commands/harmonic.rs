use std::collections::BTreeSet;

use adjoint::Grid;
use harmonic::{bundle_suite, conformal_gauss_field, harmonicity_residual, BundleSuite, SuiteSpec};
use moebius::{sample_points, ChartPoint};
use rayon::prelude::*;
use weierstrass::{isotropy_order, IsotropyOrder};

use super::fmt_c;
use crate::args::HarmonicArgs;
use crate::report::{Check, ReportDocument, Tolerance, Witness};
use crate::surface::Loaded;
use crate::CliError;

pub const PI0_TOL: f64 = 1e-8;
pub const FRENET_TOL: f64 = 1e-6;
pub const PHI_TOL: f64 = 1e-8;
pub const Q_TOL: f64 = 1e-8;
/// Relative `‖[P, P_zz̄]‖ / (‖P‖‖P_zz̄‖)`.
pub const HARMONICITY_TOL: f64 = 1e-3;
const HARMONICITY_STENCIL: usize = 2;

fn isotropy_k(s: &Loaded) -> Result<usize, CliError> {
    let w = s.datum("harmonic")?;
    if let Some(k) = w.k {
        return Ok(k);
    }
    match isotropy_order(w)? {
        IsotropyOrder::Finite(k) => Ok(k),
        IsotropyOrder::Total => Err(CliError::Usage(
            "harmonic needs a surface of finite isotropy order".into(),
        )),
    }
}

fn set_value(set: &BTreeSet<usize>) -> serde_json::Value {
    set.iter().copied().collect::<Vec<_>>().into()
}

fn set_check(
    name: &str,
    set: &BTreeSet<usize>,
    allowed: &[usize],
    used: usize,
    masked: usize,
) -> Check {
    let pass = !set.is_empty() && set.iter().all(|r| allowed.contains(r));
    Check::verdict(
        name,
        pass,
        Tolerance {
            value: None,
            scale: format!("exact, one of {allowed:?}"),
        },
        (!pass).then(|| Witness::note(format!("observed {set:?}"))),
    )
    .with_value(set_value(set))
    .with_samples(used, masked)
}

fn grid_check(s: &Loaded, a: &HarmonicArgs) -> Result<Check, CliError> {
    let src = s.source()?;
    let grid = Grid::centered(a.center, a.size, a.grid);
    let tol = Tolerance::below(HARMONICITY_TOL, "‖[P, P_zz̄]‖ / (‖P‖‖P_zz̄‖)");
    let field = match conformal_gauss_field(src.as_ref(), &grid, 4) {
        Ok(f) => f,
        Err(e) => {
            return Ok(Check::verdict(
                "cgm-harmonicity",
                false,
                tol,
                Some(Witness {
                    note: Some(e.to_string()),
                    ..Witness::at_z(a.center, f64::NAN)
                }),
            ))
        }
    };
    let h = harmonicity_residual(&field, HARMONICITY_STENCIL)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let vals: Vec<(ChartPoint, f64)> = h
        .samples
        .iter()
        .map(|x| (ChartPoint::z(grid.point(x.i, x.j)), x.relative))
        .collect();
    Ok(
        Check::residuals("cgm-harmonicity", &vals, 0, tol).with_value(serde_json::json!({
            "maxAbsolute": h.max_absolute,
        })),
    )
}

pub fn harmonic(s: &Loaded, a: &HarmonicArgs) -> Result<ReportDocument, CliError> {
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let k = isotropy_k(s)?;
    let mut spec = SuiteSpec::new(k);
    if let Some(j) = a.max_steps {
        if j == 0 {
            return Err(CliError::Usage("--max-steps must be positive".into()));
        }
        spec.phi_steps = j;
        spec.q_steps = j;
    }
    let src = s.source()?;
    let points = sample_points(src.as_ref(), a.samples, a.seed);
    let per_point: Vec<(ChartPoint, BundleSuite)> = points
        .par_iter()
        .map(|&p| (p, bundle_suite(src.as_ref(), &[p], &spec)))
        .collect();
    let (ok, masked): (Vec<_>, Vec<_>) = per_point.into_iter().partition(|(_, r)| r.samples == 1);
    let m = masked.len();
    let col = |f: fn(&BundleSuite) -> f64| -> Vec<(ChartPoint, f64)> {
        ok.iter().map(|(p, r)| (*p, f(r))).collect()
    };
    let union = |f: fn(&BundleSuite) -> &BTreeSet<usize>| -> BTreeSet<usize> {
        ok.iter().flat_map(|(_, r)| f(r).iter().copied()).collect()
    };
    let used = ok.len();
    let mut checks = vec![
        Check::residuals(
            "pi0-isotropy",
            &col(|r| r.pi0.isotropy),
            m,
            Tolerance::below(PI0_TOL, "|⟨ψ_a,ψ_b⟩| / (|ψ_a||ψ_b|)"),
        ),
        Check::residuals(
            "pi0-holomorphicity",
            &col(|r| r.pi0.holomorphicity),
            m,
            Tolerance::below(PI0_TOL, "distance of D_z̄ψ from Π₀, relative"),
        ),
        set_check("rank-dfkk", &union(|r| &r.rank_dfkk), &[1, 2], used, m),
        Check::residuals(
            "frenet",
            &col(|r| r.frenet.max_residual()),
            m,
            Tolerance::below(FRENET_TOL, "containment distances, relative"),
        ),
        set_check("rank-dh0", &union(|r| &r.rank_dh0), &[1], used, m),
        Check::residuals(
            "phi-pairing",
            &col(|r| r.phi_max_pairing),
            m,
            Tolerance::below(PHI_TOL, "|⟨φ_i,φ_j⟩|, relative"),
        ),
        Check::residuals(
            "q-isotropy",
            &col(|r| r.q_max_self_pairing),
            m,
            Tolerance::below(Q_TOL, "|⟨Q_j,Q_j⟩|, relative"),
        ),
    ];
    let terminal = union(|r| &r.q_terminal);
    let lengths = union(|r| &r.q_lengths);
    if let Some(c) = checks.last_mut() {
        c.value = Some(serde_json::json!({
            "terminalSteps": set_value(&terminal),
            "chainLengths": set_value(&lengths),
            "phiCollapsed": ok.iter().map(|(_, r)| r.phi_collapsed).sum::<usize>(),
        }));
    }
    if let Some((p, r)) = masked.first() {
        let note = r
            .masked
            .first()
            .map_or_else(String::new, |(_, e)| e.to_string());
        for c in checks.iter_mut().filter(|c| c.samples.used == 0) {
            c.witness = Some(Witness {
                note: Some(note.clone()),
                ..Witness::at(*p, f64::NAN)
            });
        }
    }
    checks.push(grid_check(s, a)?);
    Ok(ReportDocument::new(
        "harmonic",
        format!(
            "{} (k={k}, grid {}x{} at {})",
            s.label,
            a.grid,
            a.grid,
            fmt_c(a.center)
        ),
        checks,
    ))
}
