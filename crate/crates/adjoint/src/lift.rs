//! The adjoint lift `Ŷ = ½|μ|²Y + μ̄Y_z + μY_z̄ + N` and `η = D_z̄κ + (μ̄/2)κ`.

use crational::C64;
use moebius::jets;
use moebius::{dzb_kappa, MoebiusFrame};

/// `Ŷ` at the frame's basepoint for a given `μ`.
pub fn adjoint_lift(mu: C64, frame: &MoebiusFrame) -> Vec<C64> {
    let y = jets::value(&frame.y);
    let yz = jets::value(&frame.yz);
    let yzb = jets::value(&frame.yzb);
    let n = jets::value(&frame.n);
    let half = 0.5 * mu.norm_sqr();
    (0..y.len())
        .map(|i| half * y[i] + mu.conj() * yz[i] + mu * yzb[i] + n[i])
        .collect()
}

/// `η = D_z̄κ + (μ̄/2)κ` at the basepoint.
pub fn eta(mu: C64, frame: &MoebiusFrame) -> Vec<C64> {
    let d = jets::value(&dzb_kappa(frame));
    let k = jets::value(&frame.kappa);
    d.iter()
        .zip(&k)
        .map(|(a, b)| a + 0.5 * mu.conj() * b)
        .collect()
}
