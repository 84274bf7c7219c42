//! Möbius geometry of conformal immersions `S² ⊃ U → ℝ^ñ` in the light-cone
//! model `ℝ^{ñ+2}_1`.
//!
//! A [`SurfaceSource`] supplies Wirtinger jets of `x`; [`light_cone_lift`]
//! and [`canonical_lift`] produce `Y`; [`MoebiusFrame`] carries
//! `{Y, Y_z, Y_z̄, N}`, the Schwarzian `s` and the Hopf differential `κ`.
//! Residuals of the structure equations, `χ₀`, `Θ₀`, the Willmore energy and
//! the isotropy order are computed from the frame.

pub mod energy;
pub mod frame;
pub mod isotropy;
pub mod jets;
pub mod lift;
pub mod residuals;
pub mod source;

use crational::{CrationalError, C64};
use minkowski::MinkError;
use thiserror::Error;
use weierstrass::WeierstrassError;

pub use energy::{willmore_energy, EndBump, EnergyReport, EnergySpec};
pub use frame::{solve_n_linear, Direction, MoebiusFrame, FRAME_TOL, NORMAL_TOL};
pub use isotropy::{
    frame_isotropy_order, kappa_z_derivatives, moebius_isotropy_order, sample_points,
};
pub use jets::JVec;
pub use lift::{
    canonical_lift, light_cone_lift, light_cone_lift_bounded, CanonicalLift, BRANCH_TOL,
};
pub use residuals::{
    chi0_theta0, codazzi_residual, dz_kappa, dzb_kappa, energy_density, gauss_residual,
    invariant_report, kappa_norm, ricci_residual, willmore_residual, willmore_vector, Chi0Theta0,
    InvariantReport,
};
pub use source::{Chart, ChartPoint, ClosedForm, Inverted, MinimalSurface, SurfaceSource};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MoebiusError {
    #[error("degenerate metric at {at}: 2⟨Ỹ_z,Ỹ_z̄⟩ = {metric:e}")]
    BranchPoint { at: C64, metric: f64 },
    #[error("span{{Y, Re Y_z, Im Y_z, Y_zz̄}} has rank < 4")]
    DegenerateV,
    #[error("vector is not normal: V-component {0:e}")]
    NotNormal(f64),
    #[error("jet order too low: need {needed}, have {have}")]
    OrderTooLow { needed: usize, have: usize },
    #[error("{0} is an end of the surface")]
    AtEnd(C64),
    #[error("quadrature did not converge: {fine} vs {coarse}")]
    QuadratureNonconvergent { fine: f64, coarse: f64 },
    #[error(transparent)]
    Exact(#[from] CrationalError),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error(transparent)]
    Minkowski(#[from] MinkError),
}
