//! Möbius frame `{Y, Y_z, Y_z̄, N}`, Schwarzian `s`, Hopf differential `κ`
//! and the normal connection.

use crational::{Jet, C64};
use minkowski::pair_real;
use nalgebra::{DMatrix, DVector};

use crate::jets::{self, JVec};
use crate::lift::{canonical_lift, light_cone_lift_bounded, CanonicalLift};
use crate::source::{ChartPoint, SurfaceSource};
use crate::MoebiusError;

/// Relative rank tolerance for `DegenerateV`.
pub const FRAME_TOL: f64 = 1e-9;

/// Relative size of a `V`-component tolerated by [`MoebiusFrame::normal_d`].
pub const NORMAL_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Z,
    Zb,
}

/// Frame jets at a basepoint. All vector fields are jets in `ℂ^{ñ+2}`;
/// `kappa` is normal, `s` is scalar. Fields are public so experiments can
/// perturb them; derived quantities are always recomputed from them.
#[derive(Clone, Debug)]
pub struct MoebiusFrame {
    pub at: ChartPoint,
    pub y: JVec,
    pub yz: JVec,
    pub yzb: JVec,
    pub n: JVec,
    pub s: Jet,
    pub kappa: JVec,
    /// Lorentz-orthonormal real basis of `V^⊥` at the basepoint.
    pub normal_basis: Vec<Vec<f64>>,
}

/// `N = 2Y_zz̄ + 2⟨Y_zz̄, Y_zz̄⟩ Y`: the unique vector of
/// `V = span{Y, Re Y_z, Im Y_z, Y_zz̄}` with `⟨N,Y⟩ = −1`, `⟨N,Y_z⟩ = 0`,
/// `⟨N,N⟩ = 0`.
fn frame_n(y: &[Jet], yzzb: &[Jet]) -> JVec {
    let q = jets::pair(yzzb, yzzb).scale_re(2.0);
    jets::add(
        &jets::scale_c(C64::new(2.0, 0.0), yzzb),
        &jets::scale(&q, y),
    )
}

impl MoebiusFrame {
    pub fn from_lift(lift: &CanonicalLift, at: ChartPoint) -> Result<Self, MoebiusError> {
        if lift.order() < 2 {
            return Err(MoebiusError::OrderTooLow {
                needed: 3,
                have: lift.order() + 1,
            });
        }
        let y = lift.y.clone();
        let yz = jets::dz(&y);
        let yzb = jets::dzb(&y);
        let yzz = jets::dz(&yz);
        let yzzb = jets::dzb(&yz);
        let ord = jets::order(&yzzb);
        let yt = jets::truncate(&y, ord);
        check_rank(&yt, &yz, &yzzb)?;
        let n = frame_n(&yt, &yzzb);
        let s = jets::pair(&yzz, &n).scale_re(2.0);
        let kappa = jets::add(&yzz, &jets::scale(&s.scale_re(0.5), &yt));
        let mut frame = MoebiusFrame {
            at,
            y: yt,
            yz: jets::truncate(&yz, ord),
            yzb: jets::truncate(&yzb, ord),
            n,
            s,
            kappa,
            normal_basis: Vec::new(),
        };
        frame.normal_basis = frame.compute_normal_basis();
        Ok(frame)
    }

    /// Frame of `source` at `p` with `Ỹ` jets of order `order`.
    pub fn at_point(
        source: &dyn SurfaceSource,
        p: ChartPoint,
        order: usize,
    ) -> Result<Self, MoebiusError> {
        let x = source.x_jets(p, order)?;
        let yt = light_cone_lift_bounded(&x)?;
        let lift = canonical_lift(&yt, p.at)?;
        Self::from_lift(&lift, p)
    }

    /// Jet order of the frame fields.
    pub fn order(&self) -> usize {
        jets::order(&self.kappa)
    }

    pub fn ambient_dim(&self) -> usize {
        self.y.len()
    }

    /// `P_V w = −⟨w,N⟩Y − ⟨w,Y⟩N + 2⟨w,Y_z̄⟩Y_z + 2⟨w,Y_z⟩Y_z̄`.
    pub fn project_v(&self, w: &[Jet]) -> JVec {
        let o = jets::order(w).min(self.order());
        let w = jets::truncate(w, o);
        let t = |v: &JVec| jets::truncate(v, o);
        let (y, n, yz, yzb) = (t(&self.y), t(&self.n), t(&self.yz), t(&self.yzb));
        let a = jets::scale(&(-jets::pair(&w, &n)), &y);
        let b = jets::scale(&(-jets::pair(&w, &y)), &n);
        let c = jets::scale(&jets::pair(&w, &yzb).scale_re(2.0), &yz);
        let d = jets::scale(&jets::pair(&w, &yz).scale_re(2.0), &yzb);
        jets::add(&jets::add(&a, &b), &jets::add(&c, &d))
    }

    /// `(I − P_V) w`.
    pub fn normal_part(&self, w: &[Jet]) -> JVec {
        let p = self.project_v(w);
        jets::sub(&jets::truncate(w, jets::order(&p)), &p)
    }

    /// Normal connection without the normality check.
    pub fn normal_d_unchecked(&self, xi: &[Jet], dir: Direction) -> JVec {
        let d = match dir {
            Direction::Z => jets::dz(xi),
            Direction::Zb => jets::dzb(xi),
        };
        self.normal_part(&d)
    }

    /// `D_z ξ` or `D_z̄ ξ`; rejects `ξ` with a `V`-component at the basepoint.
    pub fn normal_d(&self, xi: &[Jet], dir: Direction) -> Result<JVec, MoebiusError> {
        let v = jets::value(&self.project_v(xi));
        let size = minkowski::norm(&jets::value(xi)).max(1.0);
        let off = minkowski::norm(&v);
        if off > NORMAL_TOL * size {
            return Err(MoebiusError::NotNormal(off));
        }
        Ok(self.normal_d_unchecked(xi, dir))
    }

    fn compute_normal_basis(&self) -> Vec<Vec<f64>> {
        let dim = self.ambient_dim();
        let mut out: Vec<Vec<f64>> = Vec::new();
        for i in 0..dim {
            let mut e = vec![Jet::zero(0); dim];
            e[i] = Jet::constant(C64::new(1.0, 0.0), 0);
            let mut w: Vec<f64> = jets::value(&self.normal_part(&e))
                .iter()
                .map(|c| c.re)
                .collect();
            for _ in 0..2 {
                for b in &out {
                    let c = pair_real(&w, b);
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi -= c * bi;
                    }
                }
            }
            let p = pair_real(&w, &w);
            if p > 1e-8 {
                let k = 1.0 / p.sqrt();
                out.push(w.iter().map(|x| x * k).collect());
            }
            if out.len() + 4 == dim {
                break;
            }
        }
        out
    }

    /// Frame-condition defects `(|⟨N,N⟩|, |⟨N,Y⟩+1|, |⟨N,Y_z⟩|)` at the basepoint.
    pub fn frame_defects(&self) -> [f64; 3] {
        let v = |j: Jet| j.value().norm();
        [
            v(jets::pair(&self.n, &self.n)),
            (jets::pair(&self.n, &self.y).value() + 1.0).norm(),
            v(jets::pair(&self.n, &self.yz)),
        ]
    }
}

/// Rank test on the Lorentz Gram matrix of `{Y, Re Y_z, Im Y_z, Y_zz̄}`
/// (Hadamard ratio `|det G| / Π‖G_i‖`). Euclidean singular values are not
/// used: the canonical lift has large Euclidean entries where the induced
/// metric on the sphere is small, which wrecks their conditioning.
fn check_rank(y: &[Jet], yz: &[Jet], yzzb: &[Jet]) -> Result<(), MoebiusError> {
    let yz0 = jets::value(yz);
    let re: Vec<C64> = yz0.iter().map(|c| C64::new(c.re, 0.0)).collect();
    let im: Vec<C64> = yz0.iter().map(|c| C64::new(c.im, 0.0)).collect();
    let vs = [jets::value(y), re, im, jets::value(yzzb)];
    let g = DMatrix::from_fn(4, 4, |r, c| minkowski::pair(&vs[r], &vs[c]).re);
    let rows: f64 = (0..4).map(|r| g.row(r).norm()).product();
    let det = g.determinant().abs();
    if det.is_nan() || det <= FRAME_TOL * rows {
        return Err(MoebiusError::DegenerateV);
    }
    Ok(())
}

/// `N` at the basepoint by linear algebra in the real basis
/// `{Y, Re Y_z, Im Y_z, Y_zz̄}` of `V`: the conditions `⟨N,Y⟩ = −1`,
/// `⟨N,Re Y_z⟩ = ⟨N,Im Y_z⟩ = 0` fix the last three coefficients (a 3×3
/// solve; `Y` spans the kernel), then `⟨N,N⟩ = 0` fixes the `Y` coefficient.
pub fn solve_n_linear(y: &[C64], yz: &[C64], yzzb: &[C64]) -> Result<Vec<C64>, MoebiusError> {
    let re: Vec<C64> = yz.iter().map(|c| C64::new(c.re, 0.0)).collect();
    let im: Vec<C64> = yz.iter().map(|c| C64::new(c.im, 0.0)).collect();
    let basis = [re.clone(), im.clone(), yzzb.to_vec()];
    let tests = [y.to_vec(), re, im];
    let a = DMatrix::from_fn(3, 3, |r, c| minkowski::pair(&basis[c], &tests[r]).re);
    let rhs = DVector::from_vec(vec![-1.0, 0.0, 0.0]);
    let coef = a.lu().solve(&rhs).ok_or(MoebiusError::DegenerateV)?;
    let n0: Vec<C64> = (0..y.len())
        .map(|i| basis.iter().zip(coef.iter()).map(|(b, &c)| b[i] * c).sum())
        .collect();
    // ⟨N₀ + aY, N₀ + aY⟩ = ⟨N₀,N₀⟩ − 2a
    let a = minkowski::pair(&n0, &n0).re / 2.0;
    Ok(n0.iter().zip(y).map(|(n, yi)| n + yi * a).collect())
}
