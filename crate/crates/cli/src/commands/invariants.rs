use moebius::{
    chi0_theta0, invariant_report, sample_points, willmore_energy, ChartPoint, EnergySpec,
};

use super::frames_at;
use crate::args::InvariantsArgs;
use crate::report::{Check, ReportDocument, Tolerance, Witness};
use crate::surface::Loaded;
use crate::CliError;

pub const WILLMORE_TOL: f64 = 1e-6;
pub const INTEGRABILITY_TOL: f64 = 1e-6;
pub const CHI0_TOL: f64 = 1e-8;
pub const THETA0_TOL: f64 = 1e-10;
/// Relative distance of `W/4π` from the nearest integer.
pub const ENERGY_TOL: f64 = 0.01;
const JET_ORDER: usize = 5;

/// Residual columns per sample.
struct Row {
    willmore: f64,
    gauss: f64,
    codazzi: f64,
    ricci: f64,
    chi0: f64,
    theta0: f64,
}

pub fn energy_check(source: &dyn moebius::SurfaceSource) -> Check {
    let tol = Tolerance::below(ENERGY_TOL, "|W/4π − n| / max(1, n)");
    match willmore_energy(source, &EnergySpec::default()) {
        Ok(r) => {
            let pass = r.relative_deviation < ENERGY_TOL;
            Check::verdict(
                "energy-quantization",
                pass,
                tol,
                (!pass).then(|| Witness {
                    value: Some(r.relative_deviation),
                    note: Some(format!("W/4π = {}", r.w_over_4pi)),
                    ..Witness::default()
                }),
            )
            .with_value(serde_json::json!({
                "w": r.w,
                "wOver4pi": r.w_over_4pi,
                "integer": r.nearest_integer,
                "relativeDeviation": r.relative_deviation,
                "coarseW": r.coarse_w,
            }))
        }
        Err(e) => Check::verdict(
            "energy-quantization",
            false,
            tol,
            Some(Witness::note(e.to_string())),
        ),
    }
}

pub fn invariants(s: &Loaded, a: &InvariantsArgs) -> Result<ReportDocument, CliError> {
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let src = s.source()?;
    let points = sample_points(src.as_ref(), a.samples, a.seed);
    let mut rows: Vec<(ChartPoint, Row)> = Vec::new();
    let mut masked = Vec::new();
    for (p, f) in frames_at(src.as_ref(), &points, JET_ORDER) {
        let row = f.map_err(CliError::from).and_then(|f| {
            let r = invariant_report(&f)?;
            let ct = chi0_theta0(&f)?;
            let k = r.kappa_norm.max(1.0);
            Ok(Row {
                willmore: r.willmore_residual / k,
                gauss: r.gauss_residual / (k * k),
                codazzi: r.codazzi_residual / (k * k),
                ricci: r.ricci_residual / (k * k),
                chi0: r.chi0,
                theta0: (ct.theta0 - ct.chi0_self_pairing()).norm() / ct.theta0.norm().max(1.0),
            })
        });
        match row {
            Ok(r) => rows.push((p, r)),
            Err(e) => masked.push((p, e)),
        }
    }
    let col = |f: fn(&Row) -> f64| -> Vec<(ChartPoint, f64)> {
        rows.iter().map(|(p, r)| (*p, f(r))).collect()
    };
    let m = masked.len();
    let mut checks = vec![
        Check::residuals(
            "willmore",
            &col(|r| r.willmore),
            m,
            Tolerance::below(WILLMORE_TOL, "|D_z̄D_z̄κ + (s̄/2)κ| / max(1, |κ|)"),
        ),
        Check::residuals(
            "gauss",
            &col(|r| r.gauss),
            m,
            Tolerance::below(INTEGRABILITY_TOL, "relative to max(1, |κ|²)"),
        ),
        Check::residuals(
            "codazzi",
            &col(|r| r.codazzi),
            m,
            Tolerance::below(INTEGRABILITY_TOL, "relative to max(1, |κ|²)"),
        ),
        Check::residuals(
            "ricci",
            &col(|r| r.ricci),
            m,
            Tolerance::below(INTEGRABILITY_TOL, "relative to max(1, |κ|²)"),
        ),
        Check::residuals(
            "chi0",
            &col(|r| r.chi0),
            m,
            Tolerance::below(CHI0_TOL, "absolute |χ₀|"),
        ),
        Check::residuals(
            "theta0-identity",
            &col(|r| r.theta0),
            m,
            Tolerance::below(THETA0_TOL, "|Θ₀ − ⟨χ₀,χ₀⟩| / max(1, |Θ₀|)"),
        ),
    ];
    if let Some((p, e)) = masked.first() {
        for c in &mut checks {
            if c.samples.used == 0 {
                c.witness = Some(Witness {
                    note: Some(e.to_string()),
                    ..Witness::at(*p, f64::NAN)
                });
            }
        }
    }
    if a.energy {
        checks.push(energy_check(src.as_ref()));
    }
    Ok(ReportDocument::new("invariants", s.label.clone(), checks))
}
