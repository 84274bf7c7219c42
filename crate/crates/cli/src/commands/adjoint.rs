use adjoint::{
    adjoint_field, adjoint_willmore_residual, dual_mu, dual_rho, frame_field, minimal_dual_mu,
    riccati_extend, AdjointError, AdjointSample, Grid, InitialData, STENCIL,
};
use crational::C64;
use moebius::{kappa_norm, sample_points, ChartPoint};

use super::{fmt_c, frames_at};
use crate::args::{parse_complex, AdjointArgs, AdjointMode};
use crate::report::{Check, ReportDocument, Tolerance, Witness};
use crate::surface::Loaded;
use crate::CliError;

pub const DUAL_RHO_TOL: f64 = 1e-6;
pub const THETA_TOL: f64 = 1e-5;
pub const NULL_TOL: f64 = 1e-10;
pub const CONFORMAL_TOL: f64 = 1e-5;
pub const METRIC_TOL: f64 = 1e-5;
/// Differencing-limited bound on the adjoint's own Willmore residual.
pub const ADJOINT_WILLMORE_TOL: f64 = 1e-3;
const IMMERSION_TOL: f64 = 1e-8;
const BLOWUP_TOL: f64 = 1e-6;
const RICCATI_SUBSTEPS: usize = 4;
const WILLMORE_STRIDE: usize = 3;

fn initial_data(init: &[String]) -> Result<(InitialData, String), CliError> {
    match init {
        [] => Ok((
            InitialData::Constant(C64::new(0.7, 0.3)),
            "g-const 0.7,0.3".into(),
        )),
        [kind] if kind == "infinite" => Ok((InitialData::Infinite, "infinite".into())),
        [kind, v] if kind == "g-const" => {
            let g = parse_complex(v).map_err(CliError::Usage)?;
            Ok((InitialData::Constant(g), format!("g-const {v}")))
        }
        other => Err(CliError::Usage(format!(
            "--init expects `g-const RE,IM` or `infinite`, got {other:?}"
        ))),
    }
}

fn dual(s: &Loaded, a: &AdjointArgs) -> Result<Vec<Check>, CliError> {
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let src = s.source()?;
    let points = sample_points(src.as_ref(), a.samples, a.seed);
    let mut rho = Vec::new();
    let mut fit = Vec::new();
    let mut masked: Vec<(ChartPoint, String)> = Vec::new();
    for (p, f) in frames_at(src.as_ref(), &points, 5) {
        let r = f.map_err(AdjointError::from).and_then(|f| {
            let d = dual_mu(&f)?;
            Ok((dual_rho(&f)?.norm(), d.residual / kappa_norm(&f).max(1.0)))
        });
        match r {
            Ok((r, d)) => {
                rho.push((p, r));
                fit.push((p, d));
            }
            Err(e) => masked.push((p, e.to_string())),
        }
    }
    let m = masked.len();
    let mut checks = vec![
        Check::residuals(
            "dual-rho",
            &rho,
            m,
            Tolerance::below(DUAL_RHO_TOL, "absolute |ρ| of the dual"),
        ),
        Check::residuals(
            "dual-fit",
            &fit,
            m,
            Tolerance::below(1e-8, "|D_z̄κ + (μ̄/2)κ| / max(1, |κ|)"),
        ),
    ];
    if let Some((p, e)) = masked.first().filter(|_| rho.is_empty()) {
        for c in &mut checks {
            c.witness = Some(Witness {
                note: Some(e.clone()),
                ..Witness::at(*p, f64::NAN)
            });
        }
    }
    Ok(checks)
}

fn column(samples: &[AdjointSample], f: fn(&AdjointSample) -> f64) -> Vec<(ChartPoint, f64)> {
    samples.iter().map(|s| (ChartPoint::z(s.z), f(s))).collect()
}

fn riccati(s: &Loaded, a: &AdjointArgs) -> Result<(Vec<Check>, String), CliError> {
    let surface = s.minimal("adjoint --mode riccati")?;
    if a.grid < 2 * STENCIL + 1 || a.grid.is_multiple_of(2) {
        return Err(CliError::Usage(format!(
            "--grid must be odd and at least {}",
            2 * STENCIL + 1
        )));
    }
    if !(a.size > 0.0 && a.size.is_finite()) {
        return Err(CliError::Usage("--size must be positive".into()));
    }
    let (init, init_label) = initial_data(&a.init)?;
    let grid = Grid::centered(a.center, a.size, a.grid);
    let frames = frame_field(&surface, &grid, 4)?;
    let mu0 = minimal_dual_mu(surface);
    let base = (a.grid / 2, a.grid / 2);
    let mu = riccati_extend(mu0.as_ref(), &grid, base, &init, RICCATI_SUBSTEPS)?;
    let field = adjoint_field(&frames, &mu, STENCIL, BLOWUP_TOL)?;
    let sm = &field.samples;
    let skipped = field.skipped;
    let mut checks = vec![
        Check::residuals(
            "theta",
            &column(sm, |s| s.theta.norm()),
            skipped,
            Tolerance::below(THETA_TOL, "|μ_z − ½μ² − s|"),
        ),
        Check::residuals(
            "eta-self",
            &column(sm, |s| s.eta_self.norm()),
            skipped,
            Tolerance::below(NULL_TOL, "|⟨η,η⟩|"),
        ),
        Check::residuals(
            "yhat-null",
            &column(sm, |s| s.yhat_null.norm()),
            skipped,
            Tolerance::below(NULL_TOL, "|⟨Ŷ,Ŷ⟩|"),
        ),
        Check::residuals(
            "yhat-y",
            &column(sm, |s| s.yhat_y.norm()),
            skipped,
            Tolerance::below(NULL_TOL, "|⟨Ŷ,Y⟩ + 1|"),
        ),
        Check::residuals(
            "yhat-conformal",
            &column(sm, |s| s.yhat_conformal.norm()),
            skipped,
            Tolerance::below(CONFORMAL_TOL, "|⟨Ŷ_z,Ŷ_z⟩|"),
        ),
        Check::residuals(
            "metric-identity",
            &column(sm, |s| s.metric_identity.norm()),
            skipped,
            Tolerance::below(METRIC_TOL, "|⟨Ŷ_z,Ŷ_z̄⟩ − ½|ρ|² − 4⟨η,η̄⟩|"),
        ),
    ];
    let max_eta = sm.iter().map(|s| s.eta_energy).fold(0.0, f64::max);
    let min_metric = sm.iter().map(|s| s.metric).fold(f64::INFINITY, f64::min);
    if let Some(c) = checks.last_mut() {
        c.value = Some(serde_json::json!({
            "maxEtaEnergy": max_eta,
            "minMetric": min_metric,
        }));
    }
    let tol = Tolerance::below(
        ADJOINT_WILLMORE_TOL,
        "relative to max(1, |κ̂|), immersed points",
    );
    checks.push(
        match adjoint_willmore_residual(&field, STENCIL, WILLMORE_STRIDE, IMMERSION_TOL) {
            Ok(w) => {
                let vals: Vec<(ChartPoint, f64)> = w
                    .relative
                    .iter()
                    .map(|&(z, r)| (ChartPoint::z(z), r))
                    .collect();
                Check::residuals("adjoint-willmore", &vals, w.not_immersed.len(), tol)
            }
            Err(e @ AdjointError::NotImmersed(z)) => Check::verdict(
                "adjoint-willmore",
                false,
                tol,
                Some(Witness {
                    note: Some(e.to_string()),
                    ..Witness::at_z(z, f64::NAN)
                }),
            ),
            Err(e) => return Err(e.into()),
        },
    );
    let label = format!(
        "init {init_label}, grid {}x{} at {} size {}",
        a.grid,
        a.grid,
        fmt_c(a.center),
        a.size
    );
    Ok((checks, label))
}

pub fn adjoint(s: &Loaded, a: &AdjointArgs) -> Result<ReportDocument, CliError> {
    let (checks, detail) = match a.mode {
        AdjointMode::Dual => (dual(s, a)?, "dual".to_string()),
        AdjointMode::Riccati => riccati(s, a)?,
    };
    Ok(ReportDocument::new(
        "adjoint",
        format!("{} ({detail})", s.label),
        checks,
    ))
}
