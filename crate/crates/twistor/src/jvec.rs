//! Euclidean operations on jet vectors in `ℂ^{2m+1}`.

use crational::{Jet, C64};
use moebius::jets::{self, JVec};

use crate::TwistorError;

/// Complex-bilinear `Σ aᵢbᵢ`.
pub fn dot(a: &[Jet], b: &[Jet]) -> Jet {
    let o = jets::order(a).min(jets::order(b));
    a.iter()
        .zip(b)
        .fold(Jet::zero(o), |acc, (x, y)| &acc + &(x * y))
}

/// `Σ aᵢb̄ᵢ`.
pub fn herm(a: &[Jet], b: &[Jet]) -> Jet {
    dot(a, &jets::conj(b))
}

/// Euclidean length of the value.
pub fn value_norm(v: &[Jet]) -> f64 {
    jets::value(v)
        .iter()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `v / √(v·v)` for a real vector.
pub fn unit_real(v: &[Jet]) -> Result<JVec, TwistorError> {
    let n2 = dot(v, v);
    if n2.value().re <= 0.0 {
        return Err(TwistorError::DegenerateFrame);
    }
    Ok(jets::scale(&n2.re().sqrt()?.recip()?, v))
}

/// Rescale an isotropic vector to `⟨E, Ē⟩ = 2`.
pub fn normalize_isotropic(v: &[Jet]) -> Result<JVec, TwistorError> {
    let h = herm(v, v).re();
    if h.value().re <= 0.0 {
        return Err(TwistorError::DegenerateFrame);
    }
    Ok(jets::scale(&h.scale_re(0.5).sqrt()?.recip()?, v))
}

/// `v − Σ (v·u)u` over a real orthonormal list.
pub fn remove_orthonormal(v: &[Jet], us: &[JVec]) -> JVec {
    us.iter().fold(v.to_vec(), |acc, u| {
        jets::sub(&acc, &jets::scale(&dot(v, u), u))
    })
}

/// `v − Σ (⟨v, Ē_l⟩/2) E_l` over a Hermitian-orthogonal list with
/// `⟨E_l, Ē_l⟩ = 2`.
pub fn remove_hermitian(v: &[Jet], es: &[JVec]) -> JVec {
    es.iter().fold(v.to_vec(), |acc, e| {
        jets::sub(&acc, &jets::scale(&herm(v, e).scale_re(0.5), e))
    })
}

/// `a − i b`.
pub fn combine(a: &[Jet], b: &[Jet]) -> JVec {
    jets::sub(a, &jets::scale_c(C64::new(0.0, 1.0), b))
}
