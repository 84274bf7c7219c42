//! The bundle checks of a strictly `k`-isotropic surface over sample points,
//! and the conformal Gauss map as a projector field.

use std::collections::BTreeSet;

use adjoint::grid::Grid;
use crational::C64;
use moebius::jets;
use moebius::{ChartPoint, MoebiusFrame, SurfaceSource};
use rayon::prelude::*;

use crate::bundles::{bundle_residuals, conformal_gauss_jets, pi_bundles, BundleResiduals};
use crate::frenet::{frenet_check, FrenetReport};
use crate::projector::ProjectorField;
use crate::sequences::{frenet_data, phi_sequence, q_sequence};
use crate::HarmonicError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteSpec {
    /// Isotropy order of the surface.
    pub k: usize,
    /// Jet order of the light-cone lift.
    pub jet_order: usize,
    pub phi_steps: usize,
    pub q_steps: usize,
    pub max_lines: usize,
}

impl SuiteSpec {
    pub fn new(k: usize) -> Self {
        SuiteSpec {
            k,
            jet_order: 10,
            phi_steps: 3,
            q_steps: 6,
            max_lines: 4,
        }
    }
}

/// Maxima over the retained samples.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleSuite {
    pub samples: usize,
    pub masked: Vec<(C64, HarmonicError)>,
    /// Residuals of `Π₀`.
    pub pi0: BundleResiduals,
    pub pi0_ranks: BTreeSet<usize>,
    /// Observed `Rank_ℂ ∂f^k_k`.
    pub rank_dfkk: BTreeSet<usize>,
    /// Observed `k'`.
    pub extra: BTreeSet<usize>,
    pub frenet: FrenetReport,
    /// Observed `Rank_ℂ ∂h₀`.
    pub rank_dh0: BTreeSet<usize>,
    pub phi_max_pairing: f64,
    /// Samples at which `φ₁` vanished.
    pub phi_collapsed: usize,
    pub q_max_self_pairing: f64,
    pub q_max_z_relation: f64,
    /// Lengths of the computed `Q` chains.
    pub q_lengths: BTreeSet<usize>,
    /// Steps at which a chain ended on a real light-like direction.
    pub q_terminal: BTreeSet<usize>,
}

struct PointResult {
    pi0: BundleResiduals,
    pi0_rank: usize,
    rank_dfkk: usize,
    extra: usize,
    frenet: FrenetReport,
    phi_pairing: f64,
    phi_collapsed: bool,
    q_self: f64,
    q_z: f64,
    q_len: usize,
    q_terminal: Option<usize>,
}

fn at_point(
    source: &dyn SurfaceSource,
    p: ChartPoint,
    spec: &SuiteSpec,
) -> Result<PointResult, HarmonicError> {
    let frame = MoebiusFrame::at_point(source, p, spec.jet_order)?;
    let pi0 = pi_bundles(&frame, 0)?.remove(0);
    let res = bundle_residuals(&pi0, &frame)?;
    let fd = frenet_data(&frame, spec.k, spec.max_lines)?;
    let frenet = frenet_check(fd.f0(), &fd.z, &fd.h0)?;
    let phi = phi_sequence(&frame, spec.k, spec.phi_steps)?;
    let q = q_sequence(&fd.h0, &fd.xi_hat, spec.q_steps)?;
    Ok(PointResult {
        pi0: res,
        pi0_rank: pi0.len(),
        rank_dfkk: fd.rank_dfkk,
        extra: fd.extra,
        frenet,
        phi_pairing: phi.max_pairing,
        phi_collapsed: phi.collapsed_at.is_some(),
        q_self: q.max_self_pairing,
        q_z: q.max_z_relation,
        q_len: q.steps.len(),
        q_terminal: q.terminal,
    })
}

/// Run `Π₀` residuals, the Frenet splitting, the `φ` recursion and the `Q`
/// chain at every point. Failing points are masked with their error.
pub fn bundle_suite(
    source: &dyn SurfaceSource,
    points: &[ChartPoint],
    spec: &SuiteSpec,
) -> BundleSuite {
    let results: Vec<(C64, Result<PointResult, HarmonicError>)> = points
        .par_iter()
        .map(|&p| (p.at, at_point(source, p, spec)))
        .collect();
    let mut s = BundleSuite {
        samples: 0,
        masked: Vec::new(),
        pi0: BundleResiduals::default(),
        pi0_ranks: BTreeSet::new(),
        rank_dfkk: BTreeSet::new(),
        extra: BTreeSet::new(),
        frenet: FrenetReport::default(),
        rank_dh0: BTreeSet::new(),
        phi_max_pairing: 0.0,
        phi_collapsed: 0,
        q_max_self_pairing: 0.0,
        q_max_z_relation: 0.0,
        q_lengths: BTreeSet::new(),
        q_terminal: BTreeSet::new(),
    };
    for (z, r) in results {
        let r = match r {
            Ok(r) => r,
            Err(e) => {
                s.masked.push((z, e));
                continue;
            }
        };
        s.samples += 1;
        s.pi0 = s.pi0.merge(&r.pi0);
        s.pi0_ranks.insert(r.pi0_rank);
        s.rank_dfkk.insert(r.rank_dfkk);
        s.extra.insert(r.extra);
        s.rank_dh0.insert(r.frenet.rank_dh);
        s.frenet = s.frenet.merge(&r.frenet);
        s.phi_max_pairing = s.phi_max_pairing.max(r.phi_pairing);
        s.phi_collapsed += r.phi_collapsed as usize;
        s.q_max_self_pairing = s.q_max_self_pairing.max(r.q_self);
        s.q_max_z_relation = s.q_max_z_relation.max(r.q_z);
        s.q_lengths.insert(r.q_len);
        if let Some(t) = r.q_terminal {
            s.q_terminal.insert(t);
        }
    }
    s
}

/// Projector field of `{Y, Re Y_z, Im Y_z, N}` on `grid`.
pub fn conformal_gauss_field(
    source: &dyn SurfaceSource,
    grid: &Grid,
    jet_order: usize,
) -> Result<ProjectorField, HarmonicError> {
    let bases = grid
        .points()
        .into_par_iter()
        .map(|z| {
            let frame = MoebiusFrame::at_point(source, ChartPoint::z(z), jet_order)?;
            Ok(conformal_gauss_jets(&frame)
                .iter()
                .map(|v| jets::value(v).iter().map(|c| c.re).collect())
                .collect())
        })
        .collect::<Result<Vec<Vec<Vec<f64>>>, HarmonicError>>()?;
    ProjectorField::from_bases(grid, &bases)
}
