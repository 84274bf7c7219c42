//! Frenet-bundle conditions for a splitting `f ⊕ Re Z ⊕ h` at a point.

use moebius::jets::{self, JVec};
use moebius::Direction;

use crate::bundles::partial_transform;
use crate::linalg::{containment, im_part, re_part, value_rank};
use crate::HarmonicError;

/// Residuals of (a)–(c) and the rank in (d).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FrenetReport {
    /// `ψ_z ∈ f ⊕ Z ⊕ h` for `ψ ∈ f`, i.e. `∂f ⊂ Z ⊕ h`.
    pub a: f64,
    /// `ψ_z ∈ Z ⊕ h` for `ψ ∈ Z`.
    pub b: f64,
    /// `ψ_z̄ ∈ Z ⊕ f` for `ψ ∈ Z`.
    pub c: f64,
    /// `Rank_ℂ ∂h`.
    pub rank_dh: usize,
}

impl FrenetReport {
    pub fn max_residual(&self) -> f64 {
        self.a.max(self.b).max(self.c)
    }

    pub fn merge(&self, o: &FrenetReport) -> FrenetReport {
        FrenetReport {
            a: self.a.max(o.a),
            b: self.b.max(o.b),
            c: self.c.max(o.c),
            rank_dh: self.rank_dh.max(o.rank_dh),
        }
    }
}

fn cat(parts: &[&[JVec]]) -> Vec<JVec> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// Check (a)–(d) for real `f`, complex isotropic `Z` and real `h`. Fails
/// with `SpanDeficit` unless `f ⊕ Re Z ⊕ h` is the whole space.
pub fn frenet_check(f: &[JVec], z: &[JVec], h: &[JVec]) -> Result<FrenetReport, HarmonicError> {
    let dim = f
        .first()
        .or(z.first())
        .or(h.first())
        .map(Vec::len)
        .unwrap_or(0);
    let mut all = cat(&[f, h]);
    for v in z {
        all.push(re_part(v));
        all.push(im_part(v));
    }
    let rank = value_rank(&all).ok_or(HarmonicError::AmbiguousRank)?;
    if rank != dim {
        return Err(HarmonicError::SpanDeficit { rank, dim });
    }
    let fzh = cat(&[f, z, h]);
    let zh = cat(&[z, h]);
    let zf = cat(&[z, f]);
    let size = |v: &JVec| minkowski::norm(&jets::value(v));
    let mut r = FrenetReport::default();
    for psi in f {
        r.a = r.a.max(containment(&jets::dz(psi), &fzh, size(psi)));
    }
    for psi in z {
        r.b = r.b.max(containment(&jets::dz(psi), &zh, size(psi)));
        r.c = r.c.max(containment(&jets::dzb(psi), &zf, size(psi)));
    }
    r.rank_dh = partial_transform(h, Direction::Z)?.len();
    Ok(r)
}
