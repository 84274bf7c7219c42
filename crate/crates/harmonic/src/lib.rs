//! Harmonic-map structure of Willmore surfaces in the light-cone model.
//!
//! Bundles are handled pointwise as jet-valued bases, so derivatives of
//! frame-derived bundles are exact: the conformal Gauss map `f₀`, the
//! isotropic holomorphic bundles `Π_j`, `∂`- and `D`-transforms, the
//! Frenet splitting `{f, Z, h}`, the `φ_j` recursion and the `Q_j` chain of
//! `h₀`. Projector fields on grids give the harmonic-map residual
//! `‖[P, ∂_z∂_z̄P]‖` by central differences.

pub mod bundles;
pub mod frenet;
pub mod linalg;
pub mod lines;
pub mod projector;
pub mod samples;
pub mod sequences;
pub mod suite;

use crational::{CrationalError, C64};
use moebius::MoebiusError;
use thiserror::Error;

pub use bundles::{
    bundle_residuals, complement, conformal_gauss, conformal_gauss_jets, d_transform,
    gram_signature, kappa_dz_chain, partial_transform, pi_bundles, BundleResiduals,
};
pub use frenet::{frenet_check, FrenetReport};
pub use lines::{isotropic_line_extract, Branch, LineSplit};
pub use projector::{
    harmonicity_residual, lorentz_projector, HarmonicityField, ProjectorDefects, ProjectorField,
};
pub use samples::{DerivativePath, Mask, SubbundleSamples};
pub use sequences::{
    frenet_data, gauss_maps, phi_sequence, q_sequence, FrenetData, PhiSequence, PhiStep, QChain,
    QStep,
};
pub use suite::{bundle_suite, conformal_gauss_field, BundleSuite, SuiteSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarmonicError {
    #[error("conformal Gauss map is degenerate or not of signature (1,3)")]
    DegenerateV,
    #[error("degenerate pairing on a spanning vector (pivot {index})")]
    NullDirection { index: usize },
    #[error("no clean singular-value gap")]
    AmbiguousRank,
    #[error("bundles span rank {rank} of {dim}")]
    SpanDeficit { rank: usize, dim: usize },
    #[error("D-transform has rank {got}, expected {expected}")]
    RankDrop { expected: usize, got: usize },
    #[error("grid too coarse: need {needed} points per side, have {have}")]
    GridTooCoarse { needed: usize, have: usize },
    #[error("both self-pairings and the cross pairing vanish")]
    TotallyIsotropicInput,
    #[error("Gram determinant {0:e} does not vanish")]
    DeterminantCondition(f64),
    #[error("⟨φ,φ⟩ = 0 at {0}")]
    SingularSetHit(C64),
    #[error("chain degenerates at step {step}")]
    RankCollapse { step: usize },
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
    #[error(transparent)]
    Exact(#[from] CrationalError),
}
