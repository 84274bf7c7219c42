//! Light-cone model and the canonical lift.

use crational::{Jet, C64};

use crate::jets::{self, JVec};
use crate::MoebiusError;

/// Threshold on `2⟨Ỹ_z, Ỹ_z̄⟩` relative to `|Ỹ|²` below which the metric is
/// treated as degenerate.
pub const BRANCH_TOL: f64 = 1e-12;

/// `Ỹ = ((1+|x|²)/2, (1−|x|²)/2, x)`.
pub fn light_cone_lift(x: &[Jet]) -> JVec {
    let order = jets::order(x);
    let q = x.iter().fold(Jet::zero(order), |acc, a| &acc + &(a * a));
    let one = C64::new(1.0, 0.0);
    let mut y = vec![
        q.add_const(one).scale_re(0.5),
        (-&q).add_const(one).scale_re(0.5),
    ];
    y.extend(x.iter().cloned());
    y
}

/// `Ỹ / (1+|x|²)`: the same projective point with bounded coordinates, so
/// the lift stays well conditioned near the ends.
pub fn light_cone_lift_bounded(x: &[Jet]) -> Result<JVec, MoebiusError> {
    let order = jets::order(x);
    let q = x.iter().fold(Jet::zero(order), |acc, a| &acc + &(a * a));
    let inv = q.add_const(C64::new(1.0, 0.0)).recip()?;
    let mut y = vec![
        Jet::constant(C64::new(0.5, 0.0), order),
        (&(-&q).add_const(C64::new(1.0, 0.0)) * &inv).scale_re(0.5),
    ];
    y.extend(x.iter().map(|a| a * &inv));
    Ok(y)
}

/// `Y = e^{−ω} Ỹ` with `e^{2ω} = 2⟨Ỹ_z, Ỹ_z̄⟩`, so `⟨Y_z, Y_z̄⟩ ≡ ½`.
#[derive(Clone, Debug)]
pub struct CanonicalLift {
    pub z0: C64,
    pub y: JVec,
    pub omega: Jet,
}

impl CanonicalLift {
    /// Jet order of `Y` (one less than that of `Ỹ`).
    pub fn order(&self) -> usize {
        jets::order(&self.y)
    }
}

pub fn canonical_lift(yt: &[Jet], z0: C64) -> Result<CanonicalLift, MoebiusError> {
    let g = jets::pair(&jets::dz(yt), &jets::dzb(yt)).scale_re(2.0);
    let size: f64 = jets::value(yt).iter().map(|a| a.norm_sqr()).sum();
    let g0 = g.value();
    if g0.re <= BRANCH_TOL * size.max(f64::MIN_POSITIVE) {
        return Err(MoebiusError::BranchPoint {
            at: z0,
            metric: g0.re,
        });
    }
    let inv_sqrt = g.powf(-0.5)?;
    let y = jets::scale(&inv_sqrt, &jets::truncate(yt, g.order()));
    let omega = g.log()?.scale_re(0.5);
    Ok(CanonicalLift { z0, y, omega })
}
