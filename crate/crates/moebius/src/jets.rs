//! Vectors of Wirtinger jets in `ℂ^{ñ+2}` with the Lorentz pairing.

use crational::{Jet, C64};

pub type JVec = Vec<Jet>;

pub fn order(v: &[Jet]) -> usize {
    v.iter().map(Jet::order).min().unwrap_or(0)
}

/// `−u₀v₀ + Σ uᵢvᵢ` as a jet.
pub fn pair(u: &[Jet], v: &[Jet]) -> Jet {
    let mut s = -(&u[0] * &v[0]);
    for i in 1..u.len() {
        s = &s + &(&u[i] * &v[i]);
    }
    s
}

pub fn dz(v: &[Jet]) -> JVec {
    v.iter().map(Jet::dz).collect()
}

pub fn dzb(v: &[Jet]) -> JVec {
    v.iter().map(Jet::dzb).collect()
}

pub fn conj(v: &[Jet]) -> JVec {
    v.iter().map(Jet::conj).collect()
}

pub fn add(u: &[Jet], v: &[Jet]) -> JVec {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &[Jet], v: &[Jet]) -> JVec {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// `f · v` for a scalar jet `f`.
pub fn scale(f: &Jet, v: &[Jet]) -> JVec {
    v.iter().map(|a| f * a).collect()
}

pub fn scale_c(k: C64, v: &[Jet]) -> JVec {
    v.iter().map(|a| a.scale(k)).collect()
}

pub fn truncate(v: &[Jet], order: usize) -> JVec {
    v.iter().map(|a| a.truncate(order)).collect()
}

pub fn value(v: &[Jet]) -> Vec<C64> {
    v.iter().map(Jet::value).collect()
}

/// Jet vector that is constant `c`.
pub fn constant(c: &[C64], order: usize) -> JVec {
    c.iter().map(|&a| Jet::constant(a, order)).collect()
}

/// Intrinsic length `√Re⟨ξ, ξ̄⟩` of a normal value (positive definite on the
/// spacelike normal bundle).
pub fn normal_norm(xi: &[C64]) -> f64 {
    let conj: Vec<C64> = xi.iter().map(|a| a.conj()).collect();
    minkowski::pair(xi, &conj).re.abs().sqrt()
}

/// `M v` for a real matrix `M`, e.g. a Lorentz transformation.
pub fn transform(m: &[Vec<f64>], v: &[Jet]) -> JVec {
    let o = order(v);
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Jet::zero(o), |acc, (&a, b)| &acc + &b.scale_re(a))
        })
        .collect()
}
