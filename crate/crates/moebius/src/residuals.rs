//! Structure-equation residuals and the holomorphic invariants χ₀, Θ₀.

use crational::C64;

use crate::frame::{Direction, MoebiusFrame};
use crate::jets::{self, normal_norm, JVec};
use crate::MoebiusError;

fn need(frame: &MoebiusFrame, order: usize) -> Result<(), MoebiusError> {
    if frame.order() < order {
        return Err(MoebiusError::OrderTooLow {
            needed: order + 3,
            have: frame.order() + 3,
        });
    }
    Ok(())
}

/// `D_z̄ κ`.
pub fn dzb_kappa(frame: &MoebiusFrame) -> JVec {
    frame.normal_d_unchecked(&frame.kappa, Direction::Zb)
}

/// `D_z κ`.
pub fn dz_kappa(frame: &MoebiusFrame) -> JVec {
    frame.normal_d_unchecked(&frame.kappa, Direction::Z)
}

/// `D_z̄ D_z̄ κ + (s̄/2) κ`; vanishes iff the surface is Willmore.
pub fn willmore_vector(frame: &MoebiusFrame) -> Result<JVec, MoebiusError> {
    need(frame, 2)?;
    let d2 = frame.normal_d_unchecked(&dzb_kappa(frame), Direction::Zb);
    let o = jets::order(&d2);
    let sb = frame.s.conj().scale_re(0.5).truncate(o);
    Ok(jets::add(
        &d2,
        &jets::scale(&sb, &jets::truncate(&frame.kappa, o)),
    ))
}

/// `|D_z̄D_z̄κ + (s̄/2)κ|` at the basepoint, measured by `√⟨ξ, ξ̄⟩`.
pub fn willmore_residual(frame: &MoebiusFrame) -> Result<f64, MoebiusError> {
    Ok(normal_norm(&jets::value(&willmore_vector(frame)?)))
}

/// `|κ|` at the basepoint; the natural scale for [`willmore_residual`].
pub fn kappa_norm(frame: &MoebiusFrame) -> f64 {
    normal_norm(&jets::value(&frame.kappa))
}

/// `|½ s_z̄ − 3⟨D_z κ̄, κ⟩ − ⟨κ̄, D_z κ⟩|`.
pub fn gauss_residual(frame: &MoebiusFrame) -> Result<f64, MoebiusError> {
    need(frame, 1)?;
    let k = jets::value(&frame.kappa);
    let kb: Vec<C64> = k.iter().map(|c| c.conj()).collect();
    let dzk = jets::value(&dz_kappa(frame));
    // D_z κ̄ = conj(D_z̄ κ)
    let dz_kb: Vec<C64> = jets::value(&dzb_kappa(frame))
        .iter()
        .map(|c| c.conj())
        .collect();
    let lhs = frame.s.dzb().value() * 0.5;
    let rhs = 3.0 * minkowski::pair(&dz_kb, &k) + minkowski::pair(&kb, &dzk);
    Ok((lhs - rhs).norm())
}

/// `|Im(D_z̄D_z̄κ + (s̄/2)κ)|`.
pub fn codazzi_residual(frame: &MoebiusFrame) -> Result<f64, MoebiusError> {
    let w = jets::value(&willmore_vector(frame)?);
    let im: Vec<C64> = w.iter().map(|c| C64::new(c.im, 0.0)).collect();
    Ok(normal_norm(&im))
}

/// Max over the normal basis of
/// `|D_z̄D_zξ − D_zD_z̄ξ − 2⟨ξ,κ⟩κ̄ + 2⟨ξ,κ̄⟩κ|`.
pub fn ricci_residual(frame: &MoebiusFrame) -> Result<f64, MoebiusError> {
    need(frame, 2)?;
    let o = frame.order();
    let k = jets::value(&frame.kappa);
    let kb: Vec<C64> = k.iter().map(|c| c.conj()).collect();
    let mut worst: f64 = 0.0;
    for b in &frame.normal_basis {
        let c: Vec<C64> = b.iter().map(|&x| C64::new(x, 0.0)).collect();
        let xi = frame.normal_part(&jets::constant(&c, o));
        let dz = frame.normal_d_unchecked(&xi, Direction::Z);
        let dzb = frame.normal_d_unchecked(&xi, Direction::Zb);
        let a = jets::value(&frame.normal_d_unchecked(&dz, Direction::Zb));
        let bb = jets::value(&frame.normal_d_unchecked(&dzb, Direction::Z));
        let x0 = jets::value(&xi);
        let p1 = minkowski::pair(&x0, &k) * 2.0;
        let p2 = minkowski::pair(&x0, &kb) * 2.0;
        let r: Vec<C64> = (0..k.len())
            .map(|i| a[i] - bb[i] - p1 * kb[i] + p2 * k[i])
            .collect();
        worst = worst.max(normal_norm(&r));
    }
    Ok(worst)
}

/// `χ₀ = D_z̄κ ∧ κ` as an antisymmetric coordinate matrix, and
/// `Θ₀ = ⟨D_z̄κ, κ⟩² − ⟨D_z̄κ, D_z̄κ⟩⟨κ, κ⟩`.
#[derive(Clone, Debug)]
pub struct Chi0Theta0 {
    pub chi0: Vec<Vec<C64>>,
    pub theta0: C64,
}

impl Chi0Theta0 {
    /// `√⟨χ₀, χ̄₀⟩`-type magnitude: Hermitian bivector norm.
    pub fn chi0_norm(&self) -> f64 {
        let n = self.chi0.len();
        let eta = |i: usize| if i == 0 { -1.0 } else { 1.0 };
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += eta(i) * eta(j) * self.chi0[i][j].norm_sqr();
            }
        }
        (0.5 * s).abs().sqrt()
    }

    /// Bivector self-pairing with `⟨a∧b, c∧d⟩ = ⟨a,d⟩⟨b,c⟩ − ⟨a,c⟩⟨b,d⟩`.
    pub fn chi0_self_pairing(&self) -> C64 {
        let n = self.chi0.len();
        let eta = |i: usize| if i == 0 { -1.0 } else { 1.0 };
        let mut s = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                s += eta(i) * eta(j) * self.chi0[i][j] * self.chi0[i][j];
            }
        }
        -0.5 * s
    }
}

pub fn chi0_theta0(frame: &MoebiusFrame) -> Result<Chi0Theta0, MoebiusError> {
    need(frame, 1)?;
    let a = jets::value(&dzb_kappa(frame));
    let b = jets::value(&frame.kappa);
    let n = a.len();
    let chi0 = (0..n)
        .map(|i| (0..n).map(|j| a[i] * b[j] - a[j] * b[i]).collect())
        .collect();
    let ab = minkowski::pair(&a, &b);
    let theta0 = ab * ab - minkowski::pair(&a, &a) * minkowski::pair(&b, &b);
    Ok(Chi0Theta0 { chi0, theta0 })
}

/// `4⟨κ, κ̄⟩` per unit coordinate area.
pub fn energy_density(frame: &MoebiusFrame) -> f64 {
    let k = &frame.kappa;
    4.0 * jets::pair(k, &jets::conj(k)).value().re
}

/// All residuals at one basepoint.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantReport {
    pub willmore_residual: f64,
    pub gauss_residual: f64,
    pub codazzi_residual: f64,
    pub ricci_residual: f64,
    pub kappa_norm: f64,
    pub chi0: f64,
    pub theta0: C64,
    pub energy_density: f64,
}

pub fn invariant_report(frame: &MoebiusFrame) -> Result<InvariantReport, MoebiusError> {
    let ct = chi0_theta0(frame)?;
    Ok(InvariantReport {
        willmore_residual: willmore_residual(frame)?,
        gauss_residual: gauss_residual(frame)?,
        codazzi_residual: codazzi_residual(frame)?,
        ricci_residual: ricci_residual(frame)?,
        kappa_norm: kappa_norm(frame),
        chi0: ct.chi0_norm(),
        theta0: ct.theta0,
        energy_density: energy_density(frame),
    })
}
