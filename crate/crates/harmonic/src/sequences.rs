//! The higher conformal Gauss maps `f^k_j` of a strictly `k`-isotropic
//! surface, the `φ_j` recursion, `h₀` and the `Q_j` chain, all at one point.

use crational::C64;
use moebius::jets::{self, JVec};
use moebius::{Direction, MoebiusFrame};

use crate::bundles::{
    complement, conformal_gauss_jets, d_transform, kappa_dz_chain, partial_transform, pi_bundles,
};
use crate::linalg::{containment, hermitian_remove, lorentz_remove, relative_pairing};
use crate::HarmonicError;

/// `|⟨φ,φ⟩| / |φ|²` below which a point lies in the singular set.
pub const SINGULAR_TOL: f64 = 1e-10;

/// `|v| / |φ|` below which a recursion step has collapsed to zero.
pub const COLLAPSE_TOL: f64 = 1e-7;

/// `|⟨Q, Q̄⟩| / |Q|²` below which `Q` is degenerate.
pub const DEGENERATE_TOL: f64 = 1e-8;

fn norm(v: &JVec) -> f64 {
    minkowski::norm(&jets::value(v))
}

/// Gauss maps `f^k_0..f^k_k` and the bases of `Π_0..Π_{k−1}`.
pub type GaussMaps = (Vec<Vec<JVec>>, Vec<Vec<JVec>>);

/// Real span of `f^k_0 ⊕ Re Π_{j−1}` for `j = 0..=k`, together with the
/// bases of `Π_0..Π_{k−1}`.
pub fn gauss_maps(frame: &MoebiusFrame, k: usize) -> Result<GaussMaps, HarmonicError> {
    let f0 = conformal_gauss_jets(frame);
    if k == 0 {
        return Ok((vec![f0], Vec::new()));
    }
    let pi = pi_bundles(frame, k - 1)?;
    let mut maps = vec![f0.clone()];
    for p in &pi {
        maps.push(d_transform(&f0, p)?);
    }
    Ok((maps, pi))
}

/// One step of the `φ` recursion.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiStep {
    pub phi: Vec<C64>,
    /// `μ̄` used at this step (only the first step defines one).
    pub mu_bar: Option<C64>,
    /// `|⟨φ_j, φ_j⟩| / |φ_j|²`.
    pub self_pairing: f64,
    /// `|⟨φ_j, φ⟩| / (|φ_j||φ|)`.
    pub base_pairing: f64,
}

/// `φ, φ₁, …` with the largest relative pairing among `{φ₁..φ_j}` and the
/// step at which the recursion collapsed to zero, if it did.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiSequence {
    pub steps: Vec<PhiStep>,
    pub max_pairing: f64,
    pub collapsed_at: Option<usize>,
}

fn pairing_step(v: &JVec, base: &JVec, mu_bar: Option<C64>) -> PhiStep {
    let (a, b) = (jets::value(v), jets::value(base));
    PhiStep {
        self_pairing: relative_pairing(&a, &a),
        base_pairing: relative_pairing(&a, &b),
        phi: a,
        mu_bar,
    }
}

/// `φ = D_z^{(k)}κ mod f^k_k`, then `φ₁ = ∇_z̄φ + (μ̄/2)φ` with
/// `μ̄ = −2⟨∇_z̄φ, φ⟩/⟨φ, φ⟩`, then `φ_{j+1} = (∇_zφ_j)^{⊥j}` minus its
/// component along `φ^{⊥j}`, where `⊥j` removes `f^k_{k+j} = f^k_{k+j−1} ⊕
/// Re span φ_j`.
pub fn phi_sequence(
    frame: &MoebiusFrame,
    k: usize,
    max_steps: usize,
) -> Result<PhiSequence, HarmonicError> {
    let (maps, _) = gauss_maps(frame, k)?;
    let mut top = maps.last().expect("f^k_0 exists").clone();
    let d = kappa_dz_chain(frame, k)?.pop().expect("nonempty");
    let phi = lorentz_remove(&[d], &top)?.remove(0);
    let scale = norm(&phi);
    let pp = jets::pair(&phi, &phi).value();
    if scale == 0.0 || pp.norm() < SINGULAR_TOL * scale * scale {
        return Err(HarmonicError::SingularSetHit(frame.at.at));
    }
    let (phi1, mu_bar) = first_line(&phi, &top)?;
    let mut out = PhiSequence {
        steps: vec![pairing_step(&phi, &phi, None)],
        max_pairing: 0.0,
        collapsed_at: None,
    };
    let mut current = phi1;
    let mut lines: Vec<JVec> = Vec::new();
    for step in 1..=max_steps {
        if norm(&current) < COLLAPSE_TOL * scale {
            out.collapsed_at = Some(step);
            break;
        }
        out.steps
            .push(pairing_step(&current, &phi, (step == 1).then_some(mu_bar)));
        for l in &lines {
            let (a, b) = (jets::value(&current), jets::value(l));
            out.max_pairing = out.max_pairing.max(relative_pairing(&a, &b));
        }
        let s = out.steps.last().expect("pushed");
        out.max_pairing = out.max_pairing.max(s.self_pairing).max(s.base_pairing);
        lines.push(current.clone());
        if step == max_steps {
            break;
        }
        top = d_transform(&top, std::slice::from_ref(&current))?;
        current = next_line(&current, &phi, &top)?;
    }
    Ok(out)
}

/// The splitting `{f^k_0, Z^k, h₀}` with the data feeding the `Q` chain.
#[derive(Clone, Debug)]
pub struct FrenetData {
    pub k: usize,
    /// `f^k_0, …, f^k_{k+k'}`.
    pub maps: Vec<Vec<JVec>>,
    pub z: Vec<JVec>,
    pub h0: Vec<JVec>,
    /// `Rank_ℂ ∂f^k_k`.
    pub rank_dfkk: usize,
    /// `k'`.
    pub extra: usize,
    /// `ξ̂ = φ^{⊥k'} ∈ h₀ ⊗ ℂ`.
    pub xi_hat: JVec,
}

impl FrenetData {
    pub fn f0(&self) -> &[JVec] {
        &self.maps[0]
    }

    pub fn top(&self) -> &[JVec] {
        self.maps.last().expect("nonempty")
    }
}

/// Build `f^k_j`, extend by isotropic lines `𝕃_j = span φ_j` while
/// `Rank ∂f^k_{k+j} = 2`, and split off `h₀ = (f^k_{k+k'})^⊥`.
pub fn frenet_data(
    frame: &MoebiusFrame,
    k: usize,
    max_lines: usize,
) -> Result<FrenetData, HarmonicError> {
    let (mut maps, pi) = gauss_maps(frame, k)?;
    let mut z: Vec<JVec> = pi.last().cloned().unwrap_or_default();
    let fkk = maps.last().expect("nonempty").clone();
    let rank_dfkk = partial_transform(&fkk, Direction::Z)?.len();
    let d = kappa_dz_chain(frame, k)?.pop().expect("nonempty");
    let phi = lorentz_remove(&[d], &fkk)?.remove(0);
    let mut rank = rank_dfkk;
    let mut extra = 0;
    if rank == 2 {
        let (mut line, _) = first_line(&phi, &fkk)?;
        while rank == 2 && extra < max_lines {
            if norm(&line) < COLLAPSE_TOL * norm(&phi) {
                return Err(HarmonicError::RankCollapse { step: extra + 1 });
            }
            let next = d_transform(maps.last().expect("nonempty"), std::slice::from_ref(&line))?;
            z.push(line.clone());
            maps.push(next);
            extra += 1;
            let top = maps.last().expect("nonempty");
            rank = partial_transform(top, Direction::Z)?.len();
            line = next_line(&line, &phi, top)?;
        }
    }
    let top = maps.last().expect("nonempty");
    let h0 = complement(top, frame.ambient_dim())?;
    let xi_hat = lorentz_remove(&[phi], top)?.remove(0);
    Ok(FrenetData {
        k,
        maps,
        z,
        h0,
        rank_dfkk,
        extra,
        xi_hat,
    })
}

/// `φ₁ = ∇_z̄φ + (μ̄/2)φ` and `μ̄` (a jet), with `∇` the connection of
/// `(f^k_k)^⊥`.
fn first_line(phi: &JVec, fkk: &[JVec]) -> Result<(JVec, C64), HarmonicError> {
    let nabla = lorentz_remove(&[jets::dzb(phi)], fkk)?.remove(0);
    let mu_bar = jets::pair(&nabla, phi)
        .div(&jets::pair(phi, phi))?
        .scale_re(-2.0);
    let line = jets::add(&nabla, &jets::scale(&mu_bar.scale_re(0.5), phi));
    Ok((line, mu_bar.value()))
}

/// `(∇_zφ_j)^{⊥j}` minus its component along `φ^{⊥j}`; `top = f^k_{k+j}`.
fn next_line(current: &JVec, phi: &JVec, top: &[JVec]) -> Result<JVec, HarmonicError> {
    let cut = lorentz_remove(&[jets::dz(current), phi.clone()], top)?;
    let (next, base) = (&cut[0], &cut[1]);
    let bb = jets::pair(base, base);
    if bb.value().norm() < SINGULAR_TOL * norm(base).powi(2) {
        return Ok(next.clone());
    }
    let c = jets::pair(next, base).div(&bb)?;
    Ok(jets::sub(next, &jets::scale(&c, base)))
}

/// One member of the `Q` chain.
#[derive(Clone, Debug, PartialEq)]
pub struct QStep {
    pub q: Vec<C64>,
    /// `|⟨Q_j, Q_j⟩| / |Q_j|²`.
    pub self_pairing: f64,
    /// `|⟨Q_j, Q̄_j⟩| / |Q_j|²`.
    pub hermitian: f64,
    /// Distance of `Q_{jz}` from `span{Q_j, Q_{j−1}}` (from `span{Q_1} ⊕ h₀`
    /// for `j = 1`), relative to `|Q_{jz}|`; `None` past the jet depth.
    pub z_relation: Option<f64>,
}

/// `Q₁, Q₂, …`; `terminal` is the step whose `Q` is proportional to a real
/// light-like vector, which ends the chain.
#[derive(Clone, Debug, PartialEq)]
pub struct QChain {
    pub steps: Vec<QStep>,
    pub terminal: Option<usize>,
    pub max_self_pairing: f64,
    pub max_z_relation: f64,
}

impl QChain {
    /// The terminal light-like direction, scaled to a real vector.
    pub fn terminal_direction(&self) -> Option<Vec<f64>> {
        let q = &self.steps[self.terminal? - 1].q;
        let (i, _) = q
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))?;
        let phase = q[i] / q[i].norm();
        Some(q.iter().map(|c| (c / phase).re).collect())
    }
}

/// Whether `q` is a complex multiple of a real vector, up to `tol`.
fn is_real_direction(q: &[C64], tol: f64) -> bool {
    let (i, _) = match q
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
    {
        Some(p) => p,
        None => return false,
    };
    let phase = q[i] / q[i].norm();
    let im: f64 = q.iter().map(|c| (c / phase).im.powi(2)).sum::<f64>().sqrt();
    im <= tol * minkowski::norm(q)
}

/// `Q̄₁ = ξ̂_z mod h₀ ⊗ ℂ` and `Q_{j+1} = Q_{jz̄}` made Hermitian-orthogonal
/// to `Q_1..Q_j`, for at most `max_steps` members. Stops at a real
/// light-like member; a degenerate member that is not real light-like is a
/// `RankCollapse`.
pub fn q_sequence(h0: &[JVec], xi_hat: &JVec, max_steps: usize) -> Result<QChain, HarmonicError> {
    let q1 = jets::conj(&lorentz_remove(&[jets::dz(xi_hat)], h0)?.remove(0));
    let mut qs: Vec<JVec> = vec![q1];
    let mut chain = QChain {
        steps: Vec::new(),
        terminal: None,
        max_self_pairing: 0.0,
        max_z_relation: 0.0,
    };
    loop {
        let j = qs.len();
        let q = qs.last().expect("nonempty").clone();
        let val = jets::value(&q);
        let n = minkowski::norm(&val);
        if n == 0.0 {
            return Err(HarmonicError::RankCollapse { step: j });
        }
        let herm = relative_pairing(&val, &val.iter().map(|c| c.conj()).collect::<Vec<_>>());
        let z_relation = (jets::order(&q) >= 1).then(|| {
            let qz = jets::dz(&q);
            let span: Vec<JVec> = if j == 1 {
                std::iter::once(q.clone())
                    .chain(h0.iter().cloned())
                    .collect()
            } else {
                vec![q.clone(), qs[j - 2].clone()]
            };
            containment(&qz, &span, 0.0)
        });
        let step = QStep {
            self_pairing: relative_pairing(&val, &val),
            hermitian: herm,
            z_relation,
            q: val.clone(),
        };
        chain.max_self_pairing = chain.max_self_pairing.max(step.self_pairing);
        if let Some(r) = step.z_relation {
            chain.max_z_relation = chain.max_z_relation.max(r);
        }
        for l in &qs[..j - 1] {
            let lv = jets::value(l);
            chain.max_self_pairing = chain.max_self_pairing.max(relative_pairing(&val, &lv));
        }
        chain.steps.push(step);
        if herm < DEGENERATE_TOL {
            if is_real_direction(&val, 1e-6) {
                chain.terminal = Some(j);
                return Ok(chain);
            }
            return Err(HarmonicError::RankCollapse { step: j });
        }
        if j == max_steps || jets::order(&q) == 0 {
            return Ok(chain);
        }
        let next = hermitian_remove(&[jets::dzb(&q)], &qs)?.remove(0);
        qs.push(next);
    }
}
