//! Lifts `F = (x, e₁, …, e_{2m})` of a surface in `S^{2m}`.

use std::collections::BTreeSet;

use crational::{Jet, C64};
use harmonic::linalg::{im_part, re_part, standard_basis};
use harmonic::pi_bundles;
use moebius::jets::{self, JVec};
use moebius::{frame_isotropy_order, ChartPoint, MoebiusFrame, SurfaceSource};
use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::jvec::{
    combine, normalize_isotropic, remove_hermitian, remove_orthonormal, unit_real, value_norm,
};
use crate::TwistorError;

/// Isotropy tolerance for [`adapted_frame`].
pub const ISOTROPY_TOL: f64 = 1e-8;

/// `J_{2m} = [[0, −I], [I, 0]]`.
pub fn j_matrix(m: usize) -> DMatrix<f64> {
    DMatrix::from_fn(2 * m, 2 * m, |i, j| {
        if i == j + m {
            1.0
        } else if j == i + m {
            -1.0
        } else {
            0.0
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TwistorCase {
    /// `x_z ∈ I`.
    Holomorphic,
    /// `x_z̄ ∈ I`.
    AntiHolomorphic,
}

/// One lift, with `x` and `e_j` as real-valued jets.
#[derive(Clone, Debug)]
pub struct TwistorFrame {
    pub at: ChartPoint,
    pub m: usize,
    pub x: JVec,
    pub e: Vec<JVec>,
    pub case: TwistorCase,
    /// Number of `E_j` (beyond `E₁`) taken from the isotropic bundle chain.
    pub pi_rank: usize,
}

impl TwistorFrame {
    /// `E_j = e_j − i e_{m+j}`.
    pub fn isotropic(&self) -> Vec<JVec> {
        (0..self.m)
            .map(|j| combine(&self.e[j], &self.e[self.m + j]))
            .collect()
    }

    /// `E₂, …, E_m`.
    pub fn i2(&self) -> Vec<JVec> {
        self.isotropic().split_off(1)
    }

    /// Values as a `(2m+1) × (2m+1)` matrix with columns `x, e₁, …, e_{2m}`.
    pub fn matrix(&self) -> DMatrix<f64> {
        let cols: Vec<Vec<C64>> = std::iter::once(&self.x)
            .chain(&self.e)
            .map(|v| jets::value(v))
            .collect();
        DMatrix::from_fn(cols.len(), cols.len(), |i, j| cols[j][i].re)
    }

    pub fn det(&self) -> f64 {
        self.matrix().determinant()
    }

    /// `max |FᵀF − I|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let f = self.matrix();
        let n = f.nrows();
        (f.transpose() * &f - DMatrix::identity(n, n)).amax()
    }

    /// `max |⟨E_j, E_l⟩|`.
    pub fn isotropy_defect(&self) -> f64 {
        let es: Vec<Vec<C64>> = self.isotropic().iter().map(|v| jets::value(v)).collect();
        let mut worst = 0.0f64;
        for a in &es {
            for b in &es {
                let p: C64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                worst = worst.max(p.norm());
            }
        }
        worst
    }

    /// `J_p` on `ℝ^{2m+1}`: `e_j ↦ e_{m+j}`, `e_{m+j} ↦ −e_j`, `x ↦ 0`.
    pub fn complex_structure(&self) -> DMatrix<f64> {
        let f = self.matrix();
        let e = f.columns(1, 2 * self.m);
        e * j_matrix(self.m) * e.transpose()
    }

    /// `F·diag(1, R)` for a constant `R ∈ SO(2m)`.
    pub fn rotated(&self, r: &DMatrix<f64>) -> TwistorFrame {
        let o = jets::order(&self.x);
        let e = (0..2 * self.m)
            .map(|k| {
                self.e.iter().enumerate().fold(
                    jets::constant(&vec![C64::new(0.0, 0.0); self.x.len()], o),
                    |acc, (l, el)| {
                        jets::add(
                            &acc,
                            &jets::scale(&Jet::constant(C64::new(r[(l, k)], 0.0), o), el),
                        )
                    },
                )
            })
            .collect();
        TwistorFrame { e, ..self.clone() }
    }

    /// `E_j ↦ Ē_j`; exchanges the two cases.
    pub fn conjugate(&self) -> TwistorFrame {
        let mut e = self.e.clone();
        for v in &mut e[self.m..] {
            *v = jets::scale_c(C64::new(-1.0, 0.0), v);
        }
        TwistorFrame {
            e,
            case: match self.case {
                TwistorCase::Holomorphic => TwistorCase::AntiHolomorphic,
                TwistorCase::AntiHolomorphic => TwistorCase::Holomorphic,
            },
            ..self.clone()
        }
    }
}

/// `x = Ỹ/Y₀ ∈ S^{ñ}` for the light-cone lift `Y = (Y₀, Ỹ)`.
pub fn sphere_point(frame: &MoebiusFrame) -> Result<JVec, TwistorError> {
    let inv = frame.y[0].recip()?;
    Ok(jets::scale(&inv, &frame.y[1..]))
}

fn half_dim(frame: &MoebiusFrame) -> Result<usize, TwistorError> {
    let n = frame.ambient_dim() - 2;
    if n % 2 == 1 {
        return Err(TwistorError::OddDimension(n));
    }
    Ok(n / 2)
}

/// Basis of the stabilized `Π_k = Π_{k+1}` projected into `T S^{2m} ⊗ ℂ`.
fn stabilized_chain(frame: &MoebiusFrame, x: &JVec, m: usize) -> Result<Vec<JVec>, TwistorError> {
    let pis = pi_bundles(frame, m)?;
    let ranks: Vec<usize> = pis.iter().map(Vec::len).collect();
    let k =
        ranks
            .windows(2)
            .position(|w| w[0] == w[1])
            .ok_or_else(|| TwistorError::Unstabilized {
                want: m - 1,
                ranks: ranks.clone(),
            })?;
    if ranks[k] > m - 1 {
        return Err(TwistorError::Unstabilized { want: m - 1, ranks });
    }
    Ok(pis[k]
        .iter()
        .map(|p| jets::sub(&p[1..], &jets::scale(&p[0], x)))
        .collect())
}

fn assemble(
    frame: &MoebiusFrame,
    m: usize,
    chain: Vec<JVec>,
) -> Result<TwistorFrame, TwistorError> {
    let x_full = sphere_point(frame)?;
    let xz = jets::dz(&x_full);
    let o = jets::order(&xz);
    let x = jets::truncate(&x_full, o);
    let mut es = vec![normalize_isotropic(&xz)?];
    let pi_rank = chain.len();
    for v in chain {
        let v = remove_hermitian(&jets::truncate(&v, o), &es);
        if value_norm(&v) < 1e-12 * value_norm(&x) {
            return Err(TwistorError::DegenerateFrame);
        }
        es.push(normalize_isotropic(&v)?);
    }
    let mut reals = vec![x.clone()];
    for e in &es {
        reals.push(re_part(e));
        reals.push(jets::scale_c(C64::new(-1.0, 0.0), &im_part(e)));
    }
    let mut ws = Vec::new();
    let basis = standard_basis(x.len(), o);
    while reals.len() < x.len() {
        let best = basis
            .iter()
            .map(|b| remove_orthonormal(b, &reals))
            .max_by(|a, b| value_norm(a).total_cmp(&value_norm(b)))
            .expect("nonempty");
        let w = unit_real(&best)?;
        reals.push(w.clone());
        ws.push(w);
    }
    for pair in ws.chunks(2) {
        es.push(combine(&pair[0], &pair[1]));
    }
    let mut e: Vec<JVec> = es.iter().map(|v| re_part(v)).collect();
    e.extend(
        es.iter()
            .map(|v| jets::scale_c(C64::new(-1.0, 0.0), &im_part(v))),
    );
    let mut f = TwistorFrame {
        at: frame.at,
        m,
        x,
        e,
        case: TwistorCase::Holomorphic,
        pi_rank,
    };
    if f.det() < 0.0 {
        if !ws.is_empty() {
            let last = 2 * m - 1;
            f.e[last] = jets::scale_c(C64::new(-1.0, 0.0), &f.e[last]);
        } else if m % 2 == 1 {
            f = f.conjugate();
        }
    }
    Ok(f)
}

/// Lift of a totally isotropic surface: `E₁ ∝ x_z`, `E₂, …` from the
/// stabilized isotropic bundle chain, completed by a real orthonormal basis
/// of what remains. `det F = −1` survives only for even `m` with a full
/// chain, where conjugation does not change the orientation.
pub fn adapted_frame(frame: &MoebiusFrame) -> Result<TwistorFrame, TwistorError> {
    let n = frame.ambient_dim() - 2;
    if let Some(order) = frame_isotropy_order(frame, n.div_ceil(2), ISOTROPY_TOL) {
        return Err(TwistorError::NotTotallyIsotropic { order });
    }
    let m = half_dim(frame)?;
    let x = sphere_point(frame)?;
    let chain = stabilized_chain(frame, &x, m)?;
    assemble(frame, m, chain)
}

/// Lift with `E₁ ∝ x_z` and the rest of `T S^{2m}` completed by a real
/// orthonormal basis, for any surface; `det F = +1`.
pub fn completed_frame(frame: &MoebiusFrame) -> Result<TwistorFrame, TwistorError> {
    let m = half_dim(frame)?;
    assemble(frame, m, Vec::new())
}

#[derive(Clone, Debug)]
pub struct FrameField {
    pub frames: Vec<TwistorFrame>,
    pub masked: Vec<(C64, TwistorError)>,
    /// Signs of `det F` met along the sweep.
    pub det_signs: BTreeSet<i8>,
    /// Sign changes between consecutive retained samples.
    pub sign_flips: usize,
}

impl FrameField {
    pub fn det_sign(&self) -> Option<i8> {
        match self.det_signs.len() {
            1 => self.det_signs.iter().next().copied(),
            _ => None,
        }
    }
}

/// [`adapted_frame`] at every point, then a sequential sweep in the given
/// order recording the sign of `det F`.
pub fn adapted_frame_field(
    source: &dyn SurfaceSource,
    points: &[ChartPoint],
    jet_order: usize,
) -> FrameField {
    let results: Vec<(C64, Result<TwistorFrame, TwistorError>)> = points
        .par_iter()
        .map(|&p| {
            let r = MoebiusFrame::at_point(source, p, jet_order)
                .map_err(TwistorError::from)
                .and_then(|f| adapted_frame(&f));
            (p.at, r)
        })
        .collect();
    let mut field = FrameField {
        frames: Vec::new(),
        masked: Vec::new(),
        det_signs: BTreeSet::new(),
        sign_flips: 0,
    };
    let mut prev: Option<i8> = None;
    for (z, r) in results {
        match r {
            Ok(f) => {
                let s = if f.det() > 0.0 { 1 } else { -1 };
                if prev.is_some_and(|p| p != s) {
                    field.sign_flips += 1;
                }
                prev = Some(s);
                field.det_signs.insert(s);
                field.frames.push(f);
            }
            Err(e) => field.masked.push((z, e)),
        }
    }
    field
}
