//! Exact calculus over the Gaussian rationals ℚ(i) and floating-point
//! Wirtinger jets.
//!
//! The exact layer ([`CPoly`], [`RatFn`], [`VRatFn`]) carries Weierstrass
//! data and everything that must hold identically: conformality,
//! residue relations, isotropy of derivatives. The floating layer
//! ([`Series`], [`Jet`]) evaluates non-holomorphic quantities such as the
//! canonical lift together with all their mixed `∂_z^a ∂_z̄^b` derivatives.

mod error;
mod gauss;
mod jet;
mod poly;
mod ratfn;
mod residue;
mod series;

pub use error::CrationalError;
pub use gauss::{
    gq, gq_int, gq_rat, q, qr, quad_from_strings, quad_to_strings, to_c64, C64, GQ, Q,
};
pub use jet::{jet_vec_value, Jet};
pub use poly::CPoly;
pub use ratfn::{Factors, FloatRat, RatFn, VRatFn};
pub use residue::{
    contour_residue, laurent_head_vec, pole_order, residue_numeric, residue_numeric_vec,
};
pub use series::Series;
