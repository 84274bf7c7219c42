//! S-Willmore detection, the dual `μ̄` and the roots of the conformal
//! quadratic `(μ̄²/4)⟨κ,κ⟩ + μ̄⟨κ,D_z̄κ⟩ + ⟨D_z̄κ,D_z̄κ⟩ = 0`.

use crational::{Jet, C64};
use moebius::jets::{self, normal_norm};
use moebius::{chi0_theta0, dzb_kappa, kappa_norm, MoebiusFrame};

use crate::AdjointError;

/// `|κ|` below which a point is treated as umbilic.
pub const UMBILIC_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SWillmoreReport {
    pub is_s_willmore: bool,
    /// Largest `|χ₀| / (|D_z̄κ||κ|)` over the samples.
    pub max_relative_chi0: f64,
    /// Largest `|χ₀|`.
    pub max_chi0: f64,
}

/// `D_z̄κ ∥ κ` at every frame, judged by `|D_z̄κ ∧ κ| ≤ tol·|D_z̄κ||κ|`.
/// Umbilic samples and samples with `D_z̄κ = 0` pass trivially.
pub fn s_willmore_test(frames: &[MoebiusFrame], tol: f64) -> Result<SWillmoreReport, AdjointError> {
    let mut rel: f64 = 0.0;
    let mut abs: f64 = 0.0;
    for f in frames {
        let chi = chi0_theta0(f)?.chi0_norm();
        abs = abs.max(chi);
        let scale = normal_norm(&jets::value(&dzb_kappa(f))) * kappa_norm(f);
        if scale > UMBILIC_TOL * UMBILIC_TOL {
            rel = rel.max(chi / scale);
        }
    }
    Ok(SWillmoreReport {
        is_s_willmore: rel < tol,
        max_relative_chi0: rel,
        max_chi0: abs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualMu {
    pub mu_bar: C64,
    /// `|D_z̄κ + (μ̄/2)κ|`.
    pub residual: f64,
}

fn hermitian(a: &[C64], b: &[C64]) -> C64 {
    let bc: Vec<C64> = b.iter().map(|c| c.conj()).collect();
    minkowski::pair(a, &bc)
}

/// Least-squares `μ̄ = −2⟨D_z̄κ, κ̄⟩ / ⟨κ, κ̄⟩`.
pub fn dual_mu(frame: &MoebiusFrame) -> Result<DualMu, AdjointError> {
    let k = jets::value(&frame.kappa);
    let d = jets::value(&dzb_kappa(frame));
    let kk = hermitian(&k, &k);
    if kk.norm().sqrt() < UMBILIC_TOL {
        return Err(AdjointError::UmbilicPoint(frame.at.at));
    }
    let mu_bar = -2.0 * hermitian(&d, &k) / kk;
    let r: Vec<C64> = d
        .iter()
        .zip(&k)
        .map(|(a, b)| a + mu_bar * 0.5 * b)
        .collect();
    Ok(DualMu {
        mu_bar,
        residual: normal_norm(&r),
    })
}

/// The dual `μ̄` as a jet (one order below `D_z̄κ`), so `μ̄_z` is exact.
pub fn dual_mu_bar_jet(frame: &MoebiusFrame) -> Result<Jet, AdjointError> {
    let d = dzb_kappa(frame);
    let o = jets::order(&d);
    let k = jets::truncate(&frame.kappa, o);
    let kb = jets::conj(&k);
    let kk = jets::pair(&k, &kb);
    if kk.value().norm().sqrt() < UMBILIC_TOL {
        return Err(AdjointError::UmbilicPoint(frame.at.at));
    }
    Ok(jets::pair(&d, &kb).div(&kk)?.scale_re(-2.0))
}

/// `ρ = μ̄_z − 2⟨κ,κ̄⟩` for the dual `μ̄`, differentiated exactly on jets.
pub fn dual_rho(frame: &MoebiusFrame) -> Result<C64, AdjointError> {
    let mu_bar = dual_mu_bar_jet(frame)?;
    let k = jets::value(&frame.kappa);
    let kb: Vec<C64> = k.iter().map(|c| c.conj()).collect();
    Ok(mu_bar.dz().value() - 2.0 * minkowski::pair(&k, &kb))
}

/// Solution set of the conformal quadratic for `μ̄`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RootSet {
    /// The quadratic vanishes identically: every `μ̄` is conformal.
    All,
    Two(C64, C64),
    One(C64),
    /// Nonzero constant: no solution.
    None,
}

/// Roots of `(μ̄²/4)·kk + μ̄·kd + dd = 0`. `nk` and `nd` are the lengths of
/// `κ` and `D_z̄κ`; a coefficient is zero when it is below `tol` times its
/// natural scale (`nk²`, `nk·nd`, `nd²`), and the discriminant
/// `kd² − kk·dd` (which equals `Θ₀`) is compared with `tol·nk²·nd²`.
pub fn roots_from_pairings(kk: C64, kd: C64, dd: C64, nk: f64, nd: f64, tol: f64) -> RootSet {
    let small = |c: C64, scale: f64| c.norm() <= tol * scale;
    if small(kk, nk * nk) {
        if small(kd, nk * nd) {
            return if small(dd, nd * nd) {
                RootSet::All
            } else {
                RootSet::None
            };
        }
        return RootSet::One(-dd / kd);
    }
    let disc = kd * kd - kk * dd;
    if small(disc, nk * nk * nd * nd) {
        return RootSet::One(-2.0 * kd / kk);
    }
    let sq = disc.sqrt();
    RootSet::Two(2.0 * (-kd + sq) / kk, 2.0 * (-kd - sq) / kk)
}

/// Root set at a frame.
pub fn conformal_roots(frame: &MoebiusFrame, tol: f64) -> RootSet {
    let k = jets::value(&frame.kappa);
    let d = jets::value(&dzb_kappa(frame));
    let (nk, nd) = (normal_norm(&k), normal_norm(&d));
    if nk < UMBILIC_TOL {
        return if nd < UMBILIC_TOL {
            RootSet::All
        } else {
            RootSet::None
        };
    }
    roots_from_pairings(
        minkowski::pair(&k, &k),
        minkowski::pair(&k, &d),
        minkowski::pair(&d, &d),
        nk,
        nd,
        tol,
    )
}
