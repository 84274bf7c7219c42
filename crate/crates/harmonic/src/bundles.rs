//! Pointwise bundles as jet-valued bases: the conformal Gauss map, `Π_j`,
//! `∂`-transforms, `D`-transforms and orthogonal complements.

use crational::C64;
use minkowski::SubspaceBasis;
use moebius::jets::{self, JVec};
use moebius::{Direction, MoebiusFrame};
use nalgebra::DMatrix;

use crate::linalg::{
    basis_of, basis_of_with, containment, im_part, lorentz_remove, max_value_norm, re_part,
    relative_pairing, standard_basis, value_rank,
};
use crate::HarmonicError;

/// `{Y, Re Y_z, Im Y_z, N}` as jets.
pub fn conformal_gauss_jets(frame: &MoebiusFrame) -> Vec<JVec> {
    vec![
        frame.y.clone(),
        re_part(&frame.yz),
        im_part(&frame.yz),
        frame.n.clone(),
    ]
}

/// `(negative, positive)` eigenvalue counts of the Lorentz Gram matrix of
/// real vectors; `None` if an eigenvalue is below `1e-10` of the largest.
pub fn gram_signature(vals: &[Vec<f64>]) -> Option<(usize, usize)> {
    let n = vals.len();
    let g = DMatrix::from_fn(n, n, |a, b| minkowski::pair_real(&vals[a], &vals[b]));
    let ev = g.symmetric_eigen().eigenvalues;
    let top = ev.amax();
    if top == 0.0 || ev.iter().any(|l| l.abs() <= 1e-10 * top) {
        return None;
    }
    let neg = ev.iter().filter(|&&l| l < 0.0).count();
    Some((neg, n - neg))
}

/// The conformal Gauss map at the basepoint, after checking that its Gram
/// matrix has signature `(1, 3)`.
pub fn conformal_gauss(frame: &MoebiusFrame) -> Result<SubspaceBasis, HarmonicError> {
    let vals: Vec<Vec<f64>> = conformal_gauss_jets(frame)
        .iter()
        .map(|v| jets::value(v).iter().map(|c| c.re).collect())
        .collect();
    match gram_signature(&vals) {
        Some((1, 3)) => Ok(SubspaceBasis::from_real(&vals)),
        _ => Err(HarmonicError::DegenerateV),
    }
}

/// `D_z^{(j)}κ` for `j = 0..=count`.
pub fn kappa_dz_chain(frame: &MoebiusFrame, count: usize) -> Result<Vec<JVec>, HarmonicError> {
    let mut out = vec![frame.kappa.clone()];
    for _ in 0..count {
        let next = frame.normal_d(out.last().expect("nonempty"), Direction::Z)?;
        out.push(next);
    }
    Ok(out)
}

/// Spanning set `{κ, D_z̄κ, …, D_z^{(j)}κ, D_z̄D_z^{(j)}κ}` of `Π_j`.
pub fn pi_spanning_set(frame: &MoebiusFrame, j: usize) -> Result<Vec<JVec>, HarmonicError> {
    let mut out = Vec::new();
    for d in kappa_dz_chain(frame, j)? {
        let db = frame.normal_d(&d, Direction::Zb)?;
        out.push(d);
        out.push(db);
    }
    Ok(out)
}

/// Independent bases of `Π₀, …, Π_{j_max}` (empty at umbilics).
pub fn pi_bundles(frame: &MoebiusFrame, j_max: usize) -> Result<Vec<Vec<JVec>>, HarmonicError> {
    let span = pi_spanning_set(frame, j_max)?;
    let reference = max_value_norm(&conformal_gauss_jets(frame));
    (0..=j_max)
        .map(|j| basis_of_with(&span[..2 * j + 2], reference))
        .collect()
}

/// `ψ_z` (or `ψ_z̄`) of every basis vector of a nondegenerate real bundle,
/// projected off the bundle. The result spans `∂f` (or `∂̄f`) and may be
/// redundant.
pub fn partial_spanning_set(basis: &[JVec], dir: Direction) -> Result<Vec<JVec>, HarmonicError> {
    let d: Vec<JVec> = basis
        .iter()
        .map(|v| match dir {
            Direction::Z => jets::dz(v),
            Direction::Zb => jets::dzb(v),
        })
        .collect();
    lorentz_remove(&d, basis)
}

/// Independent basis of `∂f` (or `∂̄f`).
pub fn partial_transform(basis: &[JVec], dir: Direction) -> Result<Vec<JVec>, HarmonicError> {
    basis_of_with(&partial_spanning_set(basis, dir)?, max_value_norm(basis))
}

/// `D_Z f = f ⊕ Re Z`: `f` followed by `Re`, `Im` of each vector of `Z`.
pub fn d_transform(f: &[JVec], z: &[JVec]) -> Result<Vec<JVec>, HarmonicError> {
    let mut out = f.to_vec();
    for v in z {
        out.push(re_part(v));
        out.push(im_part(v));
    }
    let want = f.len() + 2 * z.len();
    let got = value_rank(&out).ok_or(HarmonicError::AmbiguousRank)?;
    if got != want {
        return Err(HarmonicError::RankDrop {
            expected: want,
            got,
        });
    }
    Ok(out)
}

/// Basis of the Lorentz-orthogonal complement of a nondegenerate bundle.
pub fn complement(basis: &[JVec], dim: usize) -> Result<Vec<JVec>, HarmonicError> {
    let o = basis.iter().map(|v| jets::order(v)).min().unwrap_or(0);
    let e = standard_basis(dim, o);
    let rest = lorentz_remove(&e, basis)?;
    let out = basis_of(&rest)?;
    if out.len() + basis.len() != dim {
        return Err(HarmonicError::SpanDeficit {
            rank: out.len() + basis.len(),
            dim,
        });
    }
    Ok(out)
}

/// Residuals of a normal subbundle `B` at one point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BundleResiduals {
    /// Largest `|⟨ψ_a, ψ_b⟩| / (|ψ_a||ψ_b|)`.
    pub isotropy: f64,
    /// Largest distance of `D_z̄ψ` from `B`.
    pub holomorphicity: f64,
    /// Largest distance of `ψ_z̄` from `B ⊕ V`.
    pub antiholomorphic_containment: f64,
}

impl BundleResiduals {
    pub fn max(&self) -> f64 {
        self.isotropy
            .max(self.holomorphicity)
            .max(self.antiholomorphic_containment)
    }

    pub fn merge(&self, o: &BundleResiduals) -> BundleResiduals {
        BundleResiduals {
            isotropy: self.isotropy.max(o.isotropy),
            holomorphicity: self.holomorphicity.max(o.holomorphicity),
            antiholomorphic_containment: self
                .antiholomorphic_containment
                .max(o.antiholomorphic_containment),
        }
    }
}

/// Residuals of a subbundle of `V^⊥ ⊗ ℂ` given by a jet basis. Distances
/// are relative to `max(|target|, |ψ|)`.
pub fn bundle_residuals(
    basis: &[JVec],
    frame: &MoebiusFrame,
) -> Result<BundleResiduals, HarmonicError> {
    let mut r = BundleResiduals::default();
    let vals: Vec<Vec<C64>> = basis.iter().map(|v| jets::value(v)).collect();
    for a in &vals {
        for b in &vals {
            r.isotropy = r.isotropy.max(relative_pairing(a, b));
        }
    }
    let mut with_v = basis.to_vec();
    with_v.extend(conformal_gauss_jets(frame));
    for (psi, val) in basis.iter().zip(&vals) {
        let size = minkowski::norm(val);
        let d = frame.normal_d(psi, Direction::Zb)?;
        r.holomorphicity = r.holomorphicity.max(containment(&d, basis, size));
        let full = jets::dzb(psi);
        r.antiholomorphic_containment = r
            .antiholomorphic_containment
            .max(containment(&full, &with_v, size));
    }
    Ok(r)
}
