//! Adjoint data on a grid: `θ`, `ρ`, `η`, `Ŷ` and the metric identities.

use crational::C64;
use moebius::jets;
use moebius::{ChartPoint, MoebiusFrame, SurfaceSource};
use rayon::prelude::*;

use crate::grid::{jet_from_grid, Differ, Grid};
use crate::lift::{adjoint_lift, eta};
use crate::riccati::MuField;
use crate::AdjointError;

/// Frames of `source` at every grid point (`Ỹ` jets of order `order`).
pub fn frame_field(
    source: &dyn SurfaceSource,
    grid: &Grid,
    order: usize,
) -> Result<Vec<MoebiusFrame>, AdjointError> {
    grid.points()
        .into_par_iter()
        .map(|z| Ok(MoebiusFrame::at_point(source, ChartPoint::z(z), order)?))
        .collect()
}

/// Per-point residuals at one interior grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointSample {
    pub i: usize,
    pub j: usize,
    pub z: C64,
    /// `μ_z − ½μ² − s`.
    pub theta: C64,
    /// `μ̄_z − 2⟨κ,κ̄⟩`.
    pub rho: C64,
    /// `⟨η, η⟩`.
    pub eta_self: C64,
    /// `⟨Ŷ, Ŷ⟩`.
    pub yhat_null: C64,
    /// `⟨Ŷ, Y⟩ + 1`.
    pub yhat_y: C64,
    /// `⟨Ŷ_z, Ŷ_z⟩`.
    pub yhat_conformal: C64,
    /// `⟨Ŷ_z, Ŷ_z̄⟩ − ½|ρ|² − 4⟨η, η̄⟩` (the last term vanishes for the dual).
    pub metric_identity: C64,
    /// `4⟨η, η̄⟩`.
    pub eta_energy: f64,
    /// `⟨Ŷ_z, Ŷ_z̄⟩`.
    pub metric: f64,
}

/// All adjoint quantities on a grid.
#[derive(Clone, Debug)]
pub struct AdjointField {
    pub grid: Grid,
    pub yhat: Vec<Vec<C64>>,
    pub samples: Vec<AdjointSample>,
    /// Interior points with `|ρ| < branch_tol`.
    pub branch_set: Vec<C64>,
    /// Interior points skipped because the stencil meets a pole of `μ`.
    pub skipped: usize,
}

/// Maxima of the residual magnitudes over the samples.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AdjointSummary {
    pub theta: f64,
    pub rho: f64,
    pub eta_self: f64,
    pub yhat_null: f64,
    pub yhat_y: f64,
    pub yhat_conformal: f64,
    pub metric_identity: f64,
    pub min_metric: f64,
    pub count: usize,
}

impl AdjointField {
    pub fn summary(&self) -> AdjointSummary {
        let mut s = AdjointSummary {
            min_metric: f64::INFINITY,
            ..Default::default()
        };
        for a in &self.samples {
            s.theta = s.theta.max(a.theta.norm());
            s.rho = s.rho.max(a.rho.norm());
            s.eta_self = s.eta_self.max(a.eta_self.norm());
            s.yhat_null = s.yhat_null.max(a.yhat_null.norm());
            s.yhat_y = s.yhat_y.max(a.yhat_y.norm());
            s.yhat_conformal = s.yhat_conformal.max(a.yhat_conformal.norm());
            s.metric_identity = s.metric_identity.max(a.metric_identity.norm());
            s.min_metric = s.min_metric.min(a.metric);
        }
        s.count = self.samples.len();
        s
    }
}

/// Evaluate `Ŷ` everywhere and the differenced identities at points whose
/// stencil (half-width `r`) fits and avoids poles of `μ`.
pub fn adjoint_field(
    frames: &[MoebiusFrame],
    mu: &MuField,
    r: usize,
    branch_tol: f64,
) -> Result<AdjointField, AdjointError> {
    let grid = &mu.grid;
    if grid.nx < 2 * r + 1 || grid.ny < 2 * r + 1 {
        return Err(AdjointError::GridTooCoarse {
            needed: 2 * r + 1,
            have: grid.nx.min(grid.ny),
        });
    }
    let yhat: Vec<Vec<C64>> = frames
        .iter()
        .zip(&mu.mu)
        .map(|(f, &m)| adjoint_lift(m, f))
        .collect();
    let dim = yhat[0].len();
    let comps: Vec<Vec<C64>> = (0..dim)
        .map(|c| yhat.iter().map(|v| v[c]).collect())
        .collect();
    let mu_bar: Vec<C64> = mu.mu.iter().map(|m| m.conj()).collect();
    let d = Differ::new(grid, r);
    let clean = |i: usize, j: usize| {
        let ri = r as i64;
        (-ri..=ri).all(|a| {
            !mu.blowup[grid.index((i as i64 + a) as usize, j)]
                && !mu.blowup[grid.index(i, (j as i64 + a) as usize)]
        })
    };
    let interior = grid.interior(r);
    let skipped = interior.iter().filter(|&&(i, j)| !clean(i, j)).count();
    let samples: Vec<AdjointSample> = interior
        .into_par_iter()
        .filter(|&(i, j)| clean(i, j))
        .map(|(i, j)| {
            let idx = grid.index(i, j);
            let f = &frames[idx];
            let m = mu.mu[idx];
            let s = f.s.value();
            let theta = d.dz(&mu.mu, i, j) - 0.5 * m * m - s;
            let k = jets::value(&f.kappa);
            let kb: Vec<C64> = k.iter().map(|c| c.conj()).collect();
            let rho = d.dz(&mu_bar, i, j) - 2.0 * minkowski::pair(&k, &kb);
            let e = eta(m, f);
            let yz: Vec<C64> = comps.iter().map(|c| d.dz(c, i, j)).collect();
            let yzb: Vec<C64> = comps.iter().map(|c| d.dzb(c, i, j)).collect();
            let metric = minkowski::pair(&yz, &yzb);
            let eb: Vec<C64> = e.iter().map(|c| c.conj()).collect();
            let eta_energy = 4.0 * minkowski::pair(&e, &eb).re;
            AdjointSample {
                i,
                j,
                z: grid.point(i, j),
                theta,
                rho,
                eta_self: minkowski::pair(&e, &e),
                yhat_null: minkowski::pair(&yhat[idx], &yhat[idx]),
                yhat_y: minkowski::pair(&yhat[idx], &jets::value(&f.y)) + 1.0,
                yhat_conformal: minkowski::pair(&yz, &yz),
                metric_identity: metric - 0.5 * rho.norm_sqr() - eta_energy,
                eta_energy,
                metric: metric.re,
            }
        })
        .collect();
    let branch_set = samples
        .iter()
        .filter(|a| a.rho.norm() < branch_tol)
        .map(|a| a.z)
        .collect();
    Ok(AdjointField {
        grid: grid.clone(),
        yhat,
        samples,
        branch_set,
        skipped,
    })
}

/// Willmore residual of the adjoint surface.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointWillmore {
    /// `|D_z̄D_z̄κ̂ + (ŝ̄/2)κ̂| / max(|κ̂|, 1)` per evaluated point.
    pub relative: Vec<(C64, f64)>,
    pub max_relative: f64,
    /// Points where `Ŷ` is not immersed.
    pub not_immersed: Vec<C64>,
}

/// Default stencil half-width: tenth-order first derivatives.
pub const STENCIL: usize = 5;

/// Jet order of `Ŷ` used by [`adjoint_willmore_residual`].
pub const ADJOINT_JET_ORDER: usize = 5;

/// Rebuild `Ŷ` jets from the grid by finite differences (half-width `r`),
/// renormalize to the canonical lift, and evaluate the Willmore residual at
/// every `stride`-th interior point. Points with `⟨Ŷ_z, Ŷ_z̄⟩ ≤ immersion_tol`
/// count as not immersed; fails with `NotImmersed` if no point is immersed.
pub fn adjoint_willmore_residual(
    field: &AdjointField,
    r: usize,
    stride: usize,
    immersion_tol: f64,
) -> Result<AdjointWillmore, AdjointError> {
    let grid = &field.grid;
    let dim = field.yhat[0].len();
    let comps: Vec<Vec<C64>> = (0..dim)
        .map(|c| field.yhat.iter().map(|v| v[c]).collect())
        .collect();
    let pts: Vec<&AdjointSample> = field
        .samples
        .iter()
        .filter(|a| grid.is_interior(a.i, a.j, r))
        .filter(|a| a.i % stride.max(1) == 0 && a.j % stride.max(1) == 0)
        .collect();
    let results: Vec<Result<(C64, f64), C64>> = pts
        .into_par_iter()
        .map(|a| {
            let (i, j, z) = (a.i, a.j, a.z);
            if a.metric <= immersion_tol {
                return Err(z);
            }
            let y: Vec<_> = comps
                .iter()
                .map(|c| jet_from_grid(grid, c, i, j, ADJOINT_JET_ORDER, r))
                .collect();
            let lift = moebius::canonical_lift(&y, z).map_err(|_| z)?;
            let frame = MoebiusFrame::from_lift(&lift, ChartPoint::z(z)).map_err(|_| z)?;
            let w = moebius::willmore_residual(&frame).map_err(|_| z)?;
            Ok((z, w / moebius::kappa_norm(&frame).max(1.0)))
        })
        .collect();
    let mut out = AdjointWillmore {
        relative: Vec::new(),
        max_relative: 0.0,
        not_immersed: Vec::new(),
    };
    for r in results {
        match r {
            Ok((z, v)) => {
                out.max_relative = out.max_relative.max(v);
                out.relative.push((z, v));
            }
            Err(z) => out.not_immersed.push(z),
        }
    }
    if out.relative.is_empty() {
        let at = out.not_immersed.first().copied().unwrap_or(grid.origin);
        return Err(AdjointError::NotImmersed(at));
    }
    Ok(out)
}
