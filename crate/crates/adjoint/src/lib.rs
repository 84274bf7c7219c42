//! Adjoint transforms of Willmore surfaces in the light-cone model.
//!
//! A function `μ` with `θ = μ_z − ½μ² − s = 0` (co-touch) and
//! `⟨η, η⟩ = 0`, `η = D_z̄κ + (μ̄/2)κ` (conformality) defines the adjoint lift
//! `Ŷ = ½|μ|²Y + μ̄Y_z + μY_z̄ + N`, with induced metric
//! `(½|ρ|² + 4⟨η,η̄⟩)|dz|²`, `ρ = μ̄_z − 2⟨κ,κ̄⟩`. For S-Willmore surfaces the dual `μ̄` is read off
//! from `D_z̄κ + (μ̄/2)κ = 0`; [`riccati_extend`] produces further solutions
//! from a known one.

pub mod dual;
pub mod field;
pub mod grid;
pub mod lift;
pub mod riccati;

use crational::{CrationalError, C64};
use moebius::MoebiusError;
use thiserror::Error;

pub use dual::{
    conformal_roots, dual_mu, dual_mu_bar_jet, dual_rho, roots_from_pairings, s_willmore_test,
    DualMu, RootSet, SWillmoreReport,
};
pub use field::{
    adjoint_field, adjoint_willmore_residual, frame_field, AdjointField, AdjointSample,
    AdjointSummary, AdjointWillmore, ADJOINT_JET_ORDER, STENCIL,
};
pub use grid::{Differ, Grid};
pub use lift::{adjoint_lift, eta};
pub use riccati::{
    integrate_w, minimal_dual_mu, riccati_extend, ComplexifiedMu, InitialData, MuField,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AdjointError {
    #[error("umbilic point at {0}: κ = 0")]
    UmbilicPoint(C64),
    #[error("grid too coarse: need {needed} points per side, have {have}")]
    GridTooCoarse { needed: usize, have: usize },
    #[error("adjoint surface not immersed (first at {0})")]
    NotImmersed(C64),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
    #[error(transparent)]
    Exact(#[from] CrationalError),
}
