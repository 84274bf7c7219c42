//! Willmore energy `W = 4∫⟨κ, κ̄⟩ dx dy` over the whole sphere.
//!
//! The density is smooth on the compactified surface, including at the
//! ends. A smooth partition of unity splits `W` into bump integrals around
//! each end and a remainder that vanishes near every end. The remainder is
//! integrated on the two unit disks `|z| ≤ 1` and `|w| ≤ 1`; each bump
//! integral is computed on the annulus `r ≤ |ζ − p| ≤ R₀` for a schedule of
//! excision radii and extrapolated to `r → 0` in powers of `r²`.

use std::f64::consts::PI;

use crational::C64;
use rayon::prelude::*;

use crate::frame::MoebiusFrame;
use crate::residuals::energy_density;
use crate::source::{Chart, ChartPoint, SurfaceSource};
use crate::MoebiusError;

/// Quadrature parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergySpec {
    /// Gauss–Legendre nodes in the radial direction.
    pub radial: usize,
    /// Trapezoid nodes in the angular direction.
    pub angular: usize,
    /// Excision radii, each half the previous.
    pub radii: Vec<f64>,
    /// Upper bound on the bump radius.
    pub max_bump: f64,
    /// Relative agreement required between the run and a coarser rerun.
    pub tol: f64,
}

impl Default for EnergySpec {
    fn default() -> Self {
        EnergySpec {
            radial: 96,
            angular: 384,
            radii: vec![0.1, 0.05, 0.025],
            max_bump: 0.25,
            tol: 1e-3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyReport {
    pub w: f64,
    pub w_over_4pi: f64,
    pub nearest_integer: i64,
    /// `|W/4π − nearest| / max(1, nearest)`.
    pub relative_deviation: f64,
    /// Smooth-part contribution.
    pub smooth: f64,
    pub bumps: Vec<EndBump>,
    /// The same total at a coarser resolution.
    pub coarse_w: f64,
}

/// Bump integral around one end.
#[derive(Clone, Debug, PartialEq)]
pub struct EndBump {
    pub end: ChartPoint,
    /// One value per excision radius.
    pub by_radius: Vec<f64>,
    pub extrapolated: f64,
}

/// Gauss–Legendre nodes and weights on `[a, b]` (Newton on `P_n`).
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n <= 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w));
    }
    out
}

/// `1` on `t ≤ ½`, `0` on `t ≥ 1`, smooth in between.
pub fn bump(t: f64) -> f64 {
    let f = |s: f64| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 };
    let u = 2.0 * (t - 0.5);
    let (a, b) = (f(1.0 - u), f(u));
    a / (a + b)
}

struct Bumps {
    ends: Vec<ChartPoint>,
    radius: f64,
}

impl Bumps {
    fn weight_sum(&self, p: ChartPoint) -> f64 {
        self.ends
            .iter()
            .map(|e| match p.in_chart(e.chart) {
                Some(q) => bump((q - e.at).norm() / self.radius),
                None => {
                    if e.at.norm() == 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                }
            })
            .sum()
    }
}

fn density(source: &dyn SurfaceSource, p: ChartPoint) -> Result<f64, MoebiusError> {
    let frame = MoebiusFrame::at_point(source, p, 3)?;
    Ok(energy_density(&frame))
}

/// `∫_{|ζ|≤1} ρ (1 − Σ χ)` in one chart.
fn smooth_part(
    source: &dyn SurfaceSource,
    chart: Chart,
    bumps: &Bumps,
    radial: usize,
    angular: usize,
) -> Result<f64, MoebiusError> {
    let nodes = gauss_legendre(radial, 0.0, 1.0);
    let parts: Result<Vec<f64>, MoebiusError> = nodes
        .par_iter()
        .map(|&(r, wr)| {
            let mut acc = 0.0;
            for k in 0..angular {
                let th = 2.0 * PI * (k as f64 + 0.5) / angular as f64;
                let p = ChartPoint {
                    chart,
                    at: C64::from_polar(r, th),
                };
                let cut = 1.0 - bumps.weight_sum(p);
                if cut <= 0.0 {
                    continue;
                }
                acc += cut * density(source, p)?;
            }
            Ok(acc * wr * r * 2.0 * PI / angular as f64)
        })
        .collect();
    Ok(parts?.iter().sum())
}

/// `∫_{r ≤ |ζ−p| ≤ R₀} ρ χ_p` in the end's own chart.
fn bump_part(
    source: &dyn SurfaceSource,
    end: ChartPoint,
    radius: f64,
    r: f64,
    radial: usize,
    angular: usize,
) -> Result<f64, MoebiusError> {
    let nodes = gauss_legendre(radial, r, radius);
    let parts: Result<Vec<f64>, MoebiusError> = nodes
        .par_iter()
        .map(|&(t, wt)| {
            let chi = bump(t / radius);
            if chi <= 0.0 {
                return Ok(0.0);
            }
            let mut acc = 0.0;
            for k in 0..angular {
                let th = 2.0 * PI * (k as f64 + 0.5) / angular as f64;
                let p = ChartPoint {
                    chart: end.chart,
                    at: end.at + C64::from_polar(t, th),
                };
                acc += density(source, p)?;
            }
            Ok(chi * acc * wt * t * 2.0 * PI / angular as f64)
        })
        .collect();
    Ok(parts?.iter().sum())
}

/// Richardson extrapolation of `I(r)` sampled at `r, r/2, r/4, …` assuming
/// an expansion in `r²`.
pub fn richardson_r2(values: &[f64]) -> f64 {
    let mut t = values.to_vec();
    let mut factor = 4.0;
    while t.len() > 1 {
        t = t
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        factor *= 4.0;
    }
    t[0]
}

fn bump_radius(ends: &[ChartPoint], max_bump: f64) -> f64 {
    let mut sep = f64::INFINITY;
    for (i, a) in ends.iter().enumerate() {
        for b in &ends[i + 1..] {
            if let Some(q) = b.in_chart(a.chart) {
                sep = sep.min((q - a.at).norm());
            }
        }
    }
    max_bump.min(0.45 * sep)
}

fn total(
    source: &dyn SurfaceSource,
    spec: &EnergySpec,
    radial: usize,
    angular: usize,
) -> Result<(f64, f64, Vec<EndBump>), MoebiusError> {
    let ends = source.ends();
    let radius = bump_radius(&ends, spec.max_bump);
    let bumps = Bumps {
        ends: ends.clone(),
        radius,
    };
    let smooth = smooth_part(source, Chart::Z, &bumps, radial, angular)?
        + smooth_part(source, Chart::W, &bumps, radial, angular)?;
    let mut per_end = Vec::new();
    let mut w = smooth;
    for e in ends {
        let vals: Result<Vec<f64>, MoebiusError> = spec
            .radii
            .iter()
            .map(|&r| {
                bump_part(
                    source,
                    e,
                    radius,
                    r.min(0.5 * radius),
                    radial / 2,
                    angular / 2,
                )
            })
            .collect();
        let vals = vals?;
        let ex = richardson_r2(&vals);
        w += ex;
        per_end.push(EndBump {
            end: e,
            by_radius: vals,
            extrapolated: ex,
        });
    }
    Ok((w, smooth, per_end))
}

/// Willmore energy with a resolution check against a 2/3-resolution rerun.
pub fn willmore_energy(
    source: &dyn SurfaceSource,
    spec: &EnergySpec,
) -> Result<EnergyReport, MoebiusError> {
    let (w, smooth, bumps) = total(source, spec, spec.radial, spec.angular)?;
    let (coarse_w, _, _) = total(source, spec, spec.radial * 2 / 3, spec.angular * 2 / 3)?;
    let scale = w.abs().max(4.0 * PI);
    if (w - coarse_w).abs() > spec.tol * scale {
        return Err(MoebiusError::QuadratureNonconvergent {
            fine: w,
            coarse: coarse_w,
        });
    }
    let w_over_4pi = w / (4.0 * PI);
    let nearest_integer = w_over_4pi.round() as i64;
    let relative_deviation = (w_over_4pi - nearest_integer as f64).abs()
        / (nearest_integer.unsigned_abs().max(1) as f64);
    Ok(EnergyReport {
        w,
        w_over_4pi,
        nearest_integer,
        relative_deviation,
        smooth,
        bumps,
        coarse_w,
    })
}
