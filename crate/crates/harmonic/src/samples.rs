//! Bundles sampled at many points, with rank profiles and masks.

use crational::C64;
use moebius::jets::{self, JVec};
use moebius::ChartPoint;
use rayon::prelude::*;

use crate::linalg::value_rank;
use crate::HarmonicError;

/// How basis derivatives were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativePath {
    Jets,
    CentralDifferences,
}

/// Why a sample was dropped.
#[derive(Clone, Debug, PartialEq)]
pub enum Mask {
    /// Rank below the generic rank.
    LowRank(usize),
    /// No clean singular-value gap.
    AmbiguousRank,
    Failed(HarmonicError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubbundleSamples {
    pub label: String,
    /// Retained sample points and their basis values.
    pub points: Vec<C64>,
    pub bases: Vec<Vec<Vec<C64>>>,
    /// Generic (largest observed) rank.
    pub rank: usize,
    pub masked: Vec<(C64, Mask)>,
    pub path: DerivativePath,
}

impl SubbundleSamples {
    /// Evaluate `basis` at every point; keep the points of generic rank.
    pub fn collect<F>(label: &str, points: &[ChartPoint], basis: F) -> Self
    where
        F: Fn(ChartPoint) -> Result<Vec<JVec>, HarmonicError> + Sync,
    {
        type Evaluated = Result<(usize, Vec<Vec<C64>>), Mask>;
        let raw: Vec<(C64, Evaluated)> = points
            .par_iter()
            .map(|&p| {
                let r = match basis(p) {
                    Err(e) => Err(Mask::Failed(e)),
                    Ok(b) => match value_rank(&b) {
                        None => Err(Mask::AmbiguousRank),
                        Some(r) => Ok((r, b.iter().map(|v| jets::value(v)).collect())),
                    },
                };
                (p.at, r)
            })
            .collect();
        let rank = raw
            .iter()
            .filter_map(|(_, r)| r.as_ref().ok().map(|x| x.0))
            .max()
            .unwrap_or(0);
        let mut out = SubbundleSamples {
            label: label.to_string(),
            points: Vec::new(),
            bases: Vec::new(),
            rank,
            masked: Vec::new(),
            path: DerivativePath::Jets,
        };
        for (z, r) in raw {
            match r {
                Ok((got, b)) if got == rank => {
                    out.points.push(z);
                    out.bases.push(b);
                }
                Ok((got, _)) => out.masked.push((z, Mask::LowRank(got))),
                Err(m) => out.masked.push((z, m)),
            }
        }
        out
    }
}
