//! Lorentz-orthogonal projector fields on a grid and the harmonic-map
//! residual `‖[P, ∂_z∂_z̄P]‖`.

use adjoint::grid::{central_weights, Grid};
use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::HarmonicError;

/// Central second differences of half-width 2 (fourth order).
pub const HALF_WIDTH: usize = 2;

/// `η = diag(−1, 1, …, 1)`.
pub fn eta(dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |i, j| match (i, j) {
        (0, 0) => -1.0,
        _ if i == j => 1.0,
        _ => 0.0,
    })
}

/// `P = B G⁻¹ Bᵀ η` for the columns `B` of a nondegenerate real basis,
/// `G = Bᵀ η B`.
pub fn lorentz_projector(basis: &[Vec<f64>]) -> Result<DMatrix<f64>, HarmonicError> {
    let dim = basis.first().map(Vec::len).unwrap_or(0);
    if basis.is_empty() {
        return Ok(DMatrix::zeros(dim, dim));
    }
    let b = DMatrix::from_fn(dim, basis.len(), |i, j| basis[j][i]);
    let e = eta(dim);
    let g = b.transpose() * &e * &b;
    let scale = g.abs().max();
    let lu = g.clone().lu();
    let det = lu.determinant();
    let rows: f64 = (0..g.nrows()).map(|r| g.row(r).norm()).product();
    if scale == 0.0 || det.abs() <= 1e-13 * rows {
        return Err(HarmonicError::NullDirection { index: 0 });
    }
    let ginv = lu
        .try_inverse()
        .ok_or(HarmonicError::NullDirection { index: 0 })?;
    Ok(&b * ginv * b.transpose() * e)
}

/// Projector matrices at every grid point, row-major.
#[derive(Clone, Debug)]
pub struct ProjectorField {
    pub grid: Grid,
    pub p: Vec<DMatrix<f64>>,
}

/// Largest `‖P² − P‖` and `‖ηPᵀη − P‖` over the field, relative to
/// `max(1, ‖P‖)` (Frobenius norms).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectorDefects {
    pub idempotency: f64,
    pub self_adjointness: f64,
}

impl ProjectorField {
    pub fn from_bases(grid: &Grid, bases: &[Vec<Vec<f64>>]) -> Result<Self, HarmonicError> {
        let p = bases
            .par_iter()
            .map(|b| lorentz_projector(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProjectorField {
            grid: grid.clone(),
            p,
        })
    }

    pub fn constant(grid: &Grid, p: DMatrix<f64>) -> Self {
        ProjectorField {
            grid: grid.clone(),
            p: vec![p; grid.len()],
        }
    }

    pub fn defects(&self) -> ProjectorDefects {
        let mut d = ProjectorDefects {
            idempotency: 0.0,
            self_adjointness: 0.0,
        };
        for p in &self.p {
            let e = eta(p.nrows());
            let s = p.norm().max(1.0);
            d.idempotency = d.idempotency.max((p * p - p).norm() / s);
            d.self_adjointness = d
                .self_adjointness
                .max((&e * p.transpose() * &e - p).norm() / s);
        }
        d
    }

    /// `∂_z∂_z̄P = ¼ΔP` at an interior point.
    pub fn laplacian_quarter(&self, i: usize, j: usize, r: usize) -> DMatrix<f64> {
        let w = central_weights(2, r);
        let h2 = self.grid.h * self.grid.h;
        let ri = r as i64;
        let mut acc = DMatrix::zeros(self.p[0].nrows(), self.p[0].ncols());
        for (k, &wk) in (-ri..=ri).zip(&w) {
            let x = self.grid.index((i as i64 + k) as usize, j);
            let y = self.grid.index(i, (j as i64 + k) as usize);
            acc += (&self.p[x] + &self.p[y]) * wk;
        }
        acc / (4.0 * h2)
    }
}

/// Harmonic-map residual at one interior sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarmonicitySample {
    pub i: usize,
    pub j: usize,
    /// `‖[P, P_zz̄]‖`.
    pub absolute: f64,
    /// `‖[P, P_zz̄]‖ / (‖P‖‖P_zz̄‖)`, zero where `P_zz̄ = 0`.
    pub relative: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicityField {
    pub samples: Vec<HarmonicitySample>,
    pub max_absolute: f64,
    pub max_relative: f64,
}

/// `‖[P, ∂_z∂_z̄P]‖` at every interior sample with stencil half-width `r`.
pub fn harmonicity_residual(
    field: &ProjectorField,
    r: usize,
) -> Result<HarmonicityField, HarmonicError> {
    let g = &field.grid;
    if g.nx < 2 * r + 1 || g.ny < 2 * r + 1 {
        return Err(HarmonicError::GridTooCoarse {
            needed: 2 * r + 1,
            have: g.nx.min(g.ny),
        });
    }
    let samples: Vec<HarmonicitySample> = g
        .interior(r)
        .into_par_iter()
        .map(|(i, j)| {
            let p = &field.p[g.index(i, j)];
            let l = field.laplacian_quarter(i, j, r);
            let c = p * &l - &l * p;
            let absolute = c.norm();
            let denom = p.norm() * l.norm();
            HarmonicitySample {
                i,
                j,
                absolute,
                relative: if denom == 0.0 { 0.0 } else { absolute / denom },
            }
        })
        .collect();
    Ok(HarmonicityField {
        max_absolute: samples.iter().map(|s| s.absolute).fold(0.0, f64::max),
        max_relative: samples.iter().map(|s| s.relative).fold(0.0, f64::max),
        samples,
    })
}
