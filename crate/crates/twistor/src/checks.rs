//! J-holomorphicity, normal-horizontality and the isotropy transfer bound.

use harmonic::linalg::containment;
use moebius::jets::{self, JVec};

use crate::frame::{TwistorCase, TwistorFrame};
use crate::jvec::{dot, value_norm};

/// Isotropy ratio allowed per unit of J-holomorphicity residual.
pub const TRANSFER_CONSTANT: f64 = 16.0;

/// Round-off floor added to the transfer bound.
pub const TRANSFER_FLOOR: f64 = 1e-10;

/// Highest derivative order in the transfer bound.
pub const TRANSFER_ORDER: usize = 4;

/// Largest relative distances from `I` over a frame field.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct JHolomorphicReport {
    /// `x_z` and `E_{j,z}` off `I`.
    pub holomorphic: f64,
    /// `x_z̄` and `E_{j,z̄}` off `I`.
    pub anti_holomorphic: f64,
    pub samples: usize,
}

impl JHolomorphicReport {
    /// The case whose residual is below `tol` (the smaller one if both are).
    pub fn verdict(&self, tol: f64) -> Option<TwistorCase> {
        let (h, a) = (self.holomorphic, self.anti_holomorphic);
        if h.min(a) >= tol {
            None
        } else if h <= a {
            Some(TwistorCase::Holomorphic)
        } else {
            Some(TwistorCase::AntiHolomorphic)
        }
    }

    /// Residual of the better case.
    pub fn residual(&self) -> f64 {
        self.holomorphic.min(self.anti_holomorphic)
    }
}

fn distance_off(d: fn(&[crational::Jet]) -> JVec, f: &TwistorFrame, span: &[JVec]) -> f64 {
    let iso = f.isotropic();
    let xd = d(&f.x);
    let mut worst = containment(&xd, span, 0.0);
    for e in &iso {
        worst = worst.max(containment(&d(e), span, value_norm(e)));
    }
    worst
}

pub fn j_holomorphic_check(frames: &[TwistorFrame]) -> JHolomorphicReport {
    let mut r = JHolomorphicReport {
        samples: frames.len(),
        ..Default::default()
    };
    for f in frames {
        let iso = f.isotropic();
        r.holomorphic = r.holomorphic.max(distance_off(jets::dz, f, &iso));
        r.anti_holomorphic = r.anti_holomorphic.max(distance_off(jets::dzb, f, &iso));
    }
    r
}

/// Largest distance of `E_{j,z̄}` (holomorphic case) or `E_{j,z}` (anti
/// case), `j ≥ 2`, from `I₂ ⊕ span{x_z, x_z̄}`. Zero when `m = 1`.
pub fn normal_horizontal_check(frames: &[TwistorFrame]) -> f64 {
    let mut worst = 0.0f64;
    for f in frames {
        let i2 = f.i2();
        if i2.is_empty() {
            continue;
        }
        let mut span = i2.clone();
        span.push(jets::dz(&f.x));
        span.push(jets::dzb(&f.x));
        for e in &i2 {
            let d = match f.case {
                TwistorCase::Holomorphic => jets::dzb(e),
                TwistorCase::AntiHolomorphic => jets::dz(e),
            };
            worst = worst.max(containment(&d, &span, value_norm(e)));
        }
    }
    worst
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferReport {
    /// J-holomorphicity residual of the better case.
    pub tau: f64,
    /// `max_{j ≤ 4} |⟨x^{(j)}, x^{(j)}⟩| / |x^{(j)}|²`, with `x^{(j)}` the
    /// `j`-th `z`- (or `z̄`-) derivative.
    pub isotropy: f64,
    /// `isotropy / tau` (infinite when `tau = 0` and `isotropy > 0`).
    pub ratio: f64,
    pub constant: f64,
    pub holds: bool,
}

/// Check `isotropy ≤ C·τ + floor` on the frames' base surfaces.
pub fn transfer_bound(frames: &[TwistorFrame], report: &JHolomorphicReport) -> TransferReport {
    let anti = report.verdict(f64::INFINITY) == Some(TwistorCase::AntiHolomorphic);
    let mut isotropy = 0.0f64;
    for f in frames {
        let mut d = f.x.clone();
        for _ in 0..TRANSFER_ORDER.min(jets::order(&f.x)) {
            d = if anti { jets::dzb(&d) } else { jets::dz(&d) };
            let n = value_norm(&d);
            if n > 0.0 {
                isotropy = isotropy.max(dot(&d, &d).value().norm() / (n * n));
            }
        }
    }
    let tau = report.residual();
    let ratio = if isotropy == 0.0 { 0.0 } else { isotropy / tau };
    TransferReport {
        tau,
        isotropy,
        ratio,
        constant: TRANSFER_CONSTANT,
        holds: isotropy <= TRANSFER_CONSTANT * tau + TRANSFER_FLOOR,
    }
}
