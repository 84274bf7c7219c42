//! Extension of a known solution `μ₀` of the co-touch Riccati equation
//! `μ_z = ½μ² + s` to the family `μ = μ₀ + 1/w`, `w_z = −μ₀w − ½`.
//!
//! The equation constrains only the `z`-dependence. Each grid value is
//! obtained by integrating in `z` with `ζ = z̄` frozen at the target's
//! conjugate, which needs `μ₀` on the complexification `(z, ζ)`: first along
//! the base column, then along the target's row. The `ζ`-dependence enters
//! through the data `w(z_base, ζ) = g(ζ)` at the base point.

use std::sync::Arc;

use crational::C64;
use moebius::{ChartPoint, MinimalSurface};
use rayon::prelude::*;

use crate::grid::Grid;
use crate::AdjointError;

/// `μ₀(z, ζ)` on the complexification; `ζ = z̄` recovers the surface.
pub type ComplexifiedMu = dyn Fn(C64, C64) -> Result<C64, AdjointError> + Send + Sync;

/// Data `g(ζ)` at the base point.
#[derive(Clone)]
pub enum InitialData {
    /// `w ≡ ∞`, i.e. `μ = μ₀`.
    Infinite,
    Constant(C64),
    Function(Arc<dyn Fn(C64) -> C64 + Send + Sync>),
}

impl std::fmt::Debug for InitialData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InitialData::Infinite => write!(f, "Infinite"),
            InitialData::Constant(c) => write!(f, "Constant({c})"),
            InitialData::Function(_) => write!(f, "Function(..)"),
        }
    }
}

impl InitialData {
    fn at(&self, zeta: C64) -> Option<C64> {
        match self {
            InitialData::Infinite => None,
            InitialData::Constant(c) => Some(*c),
            InitialData::Function(g) => Some(g(zeta)),
        }
    }
}

/// `μ` on a grid with the `w` values and the blow-up mask (`|w|` below the
/// tolerance: `μ` has a pole there, part of the adjoint's branch locus).
#[derive(Clone, Debug)]
pub struct MuField {
    pub grid: Grid,
    pub mu: Vec<C64>,
    pub w: Vec<Option<C64>>,
    pub blowup: Vec<bool>,
}

/// `|w|` below which a grid value counts as a pole of `μ`.
pub const BLOWUP_TOL: f64 = 1e-8;

/// Classical RK4 for `w_z = −μ₀(z, ζ)w − ½` from `(z0, w0)` to `z1` along
/// the straight segment, `ζ` fixed.
pub fn integrate_w(
    mu0: &ComplexifiedMu,
    zeta: C64,
    z0: C64,
    w0: C64,
    z1: C64,
    steps: usize,
) -> Result<C64, AdjointError> {
    let f = |z: C64, w: C64| -> Result<C64, AdjointError> { Ok(-mu0(z, zeta)? * w - 0.5) };
    let steps = steps.max(1);
    let dz = (z1 - z0) / steps as f64;
    let (mut z, mut w) = (z0, w0);
    for _ in 0..steps {
        let k1 = f(z, w)?;
        let k2 = f(z + 0.5 * dz, w + 0.5 * dz * k1)?;
        let k3 = f(z + 0.5 * dz, w + 0.5 * dz * k2)?;
        let k4 = f(z + dz, w + dz * k3)?;
        w += dz / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        z += dz;
    }
    Ok(w)
}

/// `μ = μ₀ + 1/w` on every grid point, with `w(point(base), ζ) = g(ζ)`.
/// `substeps` RK4 steps per grid cell.
pub fn riccati_extend(
    mu0: &ComplexifiedMu,
    grid: &Grid,
    base: (usize, usize),
    g: &InitialData,
    substeps: usize,
) -> Result<MuField, AdjointError> {
    let cells: Result<Vec<(C64, Option<C64>)>, AdjointError> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % grid.nx, idx / grid.nx);
            let zt = grid.point(i, j);
            let zeta = zt.conj();
            let m0 = mu0(zt, zeta)?;
            let Some(w0) = g.at(zeta) else {
                return Ok((m0, None));
            };
            let (ib, jb) = base;
            let zc = grid.point(ib, j);
            let wc = integrate_w(
                mu0,
                zeta,
                grid.point(ib, jb),
                w0,
                zc,
                substeps * j.abs_diff(jb),
            )?;
            let w = integrate_w(mu0, zeta, zc, wc, zt, substeps * i.abs_diff(ib))?;
            Ok((m0 + 1.0 / w, Some(w)))
        })
        .collect();
    let cells = cells?;
    let blowup = cells
        .iter()
        .map(|(m, w)| !m.is_finite() || w.is_some_and(|w| w.norm() < BLOWUP_TOL))
        .collect();
    Ok(MuField {
        grid: grid.clone(),
        mu: cells.iter().map(|c| c.0).collect(),
        w: cells.iter().map(|c| c.1).collect(),
        blowup,
    })
}

/// The dual `μ₀` of a minimal surface `x = F + conj F` (its mean curvature
/// spheres all pass through `∞`), complexified:
/// `μ₀(z, ζ) = Σ F_i''(z) F̃_i'(ζ) / Σ F_i'(z) F̃_i'(ζ)` with
/// `F̃'(ζ) = conj F'(conj ζ)`.
pub fn minimal_dual_mu(surface: MinimalSurface) -> Arc<ComplexifiedMu> {
    Arc::new(move |z: C64, zeta: C64| {
        let a = surface.f_series(ChartPoint::z(z), 2)?;
        let b = surface.f_series(ChartPoint::z(zeta.conj()), 1)?;
        let mut num = C64::new(0.0, 0.0);
        let mut den = C64::new(0.0, 0.0);
        for (sa, sb) in a.iter().zip(&b) {
            let fb = sb.c[1].conj();
            num += 2.0 * sa.c[2] * fb;
            den += sa.c[1] * fb;
        }
        Ok(num / den)
    })
}
