//! Isotropy order read off from the Hopf differential:
//! `⟨D_z^{(j)}κ, D_z^{(l)}κ⟩ = 0` for `j + l ≤ 2k − 1`.

use crational::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use weierstrass::IsotropyOrder;

use crate::frame::{Direction, MoebiusFrame};
use crate::jets::{self, normal_norm, JVec};
use crate::source::{Chart, ChartPoint, SurfaceSource};
use crate::MoebiusError;

/// Normal length below which `D_z^{(j)}κ` is treated as zero.
pub const VANISHING: f64 = 1e-10;

/// `[κ, D_zκ, …, D_z^{(count−1)}κ]` at the basepoint.
pub fn kappa_z_derivatives(frame: &MoebiusFrame, count: usize) -> Vec<Vec<C64>> {
    let mut out = Vec::with_capacity(count);
    let mut cur: JVec = frame.kappa.clone();
    for j in 0..count {
        out.push(jets::value(&cur));
        if j + 1 < count {
            cur = frame.normal_d_unchecked(&cur, Direction::Z);
        }
    }
    out
}

/// Largest `k ≤ kmax` passing the pairing test at one frame, or `None` if
/// every `k ≤ kmax` passes. The test is `|⟨a,b⟩| ≤ tol·|a||b|`; vectors
/// below [`VANISHING`] count as zero.
pub fn frame_isotropy_order(frame: &MoebiusFrame, kmax: usize, tol: f64) -> Option<usize> {
    let d = kappa_z_derivatives(frame, 2 * kmax);
    let norms: Vec<f64> = d.iter().map(|v| normal_norm(v)).collect();
    for k in 1..=kmax {
        for j in 0..2 * k {
            for l in 0..2 * k - j {
                if norms[j] < VANISHING || norms[l] < VANISHING {
                    continue;
                }
                let p = minkowski::pair(&d[j], &d[l]).norm();
                if p > tol * norms[j] * norms[l] {
                    return Some(k - 1);
                }
            }
        }
    }
    None
}

/// Isotropy order over a sample set. Needs `Ỹ` jets of order `2·kmax + 2`.
/// Reports [`IsotropyOrder::Total`] when every order up to `kmax` passes.
pub fn moebius_isotropy_order(
    source: &dyn SurfaceSource,
    samples: &[ChartPoint],
    kmax: usize,
    tol: f64,
) -> Result<IsotropyOrder, MoebiusError> {
    let orders: Result<Vec<Option<usize>>, MoebiusError> = samples
        .par_iter()
        .map(|&p| {
            let frame = MoebiusFrame::at_point(source, p, 2 * kmax + 2)?;
            Ok(frame_isotropy_order(&frame, kmax, tol))
        })
        .collect();
    Ok(match orders?.into_iter().flatten().min() {
        Some(k) => IsotropyOrder::Finite(k),
        None => IsotropyOrder::Total,
    })
}

/// Seeded sample points in `|z| ≤ 0.8`, at least `0.15` away from every end
/// in the `z` chart.
pub fn sample_points(source: &dyn SurfaceSource, count: usize, seed: u64) -> Vec<ChartPoint> {
    let ends: Vec<C64> = source
        .ends()
        .iter()
        .filter_map(|e| e.in_chart(Chart::Z))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = C64::new(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8));
        if z.norm() <= 0.8 && ends.iter().all(|e| (z - e).norm() > 0.15) {
            out.push(ChartPoint::z(z));
        }
    }
    out
}
