//! Twistor lifts of surfaces in `S^{2m}` at the frame level.
//!
//! A surface in `ℝ^{2m}` is carried to `S^{2m} ⊂ ℝ^{2m+1}` through its
//! light-cone lift (`Y = e^{−ω}(1, x)`), and a lift `F = (x, e₁, …, e_{2m})`
//! is assembled as jets, so derivatives of `x` and of the isotropic vectors
//! `E_j = e_j − i e_{m+j}` are exact. The twistor bundle itself is never
//! materialized: J-holomorphy and normal-horizontality are checked as
//! containment conditions on `I = span{E_j}` and `I₂ = span{E₂, …, E_m}`.

pub mod checks;
pub mod example;
pub mod frame;
pub mod jvec;

use crational::CrationalError;
use harmonic::HarmonicError;
use moebius::MoebiusError;
use thiserror::Error;
use weierstrass::WeierstrassError;

pub use checks::{
    j_holomorphic_check, normal_horizontal_check, transfer_bound, JHolomorphicReport,
    TransferReport, TRANSFER_CONSTANT, TRANSFER_FLOOR,
};
pub use example::{build_totally_isotropic_example, veronese, TotallyIsotropicReport};
pub use frame::{
    adapted_frame, adapted_frame_field, completed_frame, j_matrix, sphere_point, FrameField,
    TwistorCase, TwistorFrame,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwistorError {
    #[error("surface is {order}-isotropic, not totally isotropic")]
    NotTotallyIsotropic { order: usize },
    #[error("twistor lifts need an even ambient dimension, got {0}")]
    OddDimension(usize),
    #[error("isotropic bundle chain does not stabilize at rank {want} (ranks {ranks:?})")]
    Unstabilized { want: usize, ranks: Vec<usize> },
    #[error("frame vectors are degenerate at the basepoint")]
    DegenerateFrame,
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error(transparent)]
    Exact(#[from] CrationalError),
}
