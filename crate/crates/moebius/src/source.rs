//! Conformal surfaces given by their coordinate jets in one of two charts of
//! the sphere: `z` and `w = 1/z`.

use std::sync::Arc;

use crational::{FloatRat, Jet, Series, VRatFn, C64};
use weierstrass::{integrate_primitive, WeierstrassData};

use crate::MoebiusError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    Z,
    W,
}

impl Chart {
    pub fn other(self) -> Chart {
        match self {
            Chart::Z => Chart::W,
            Chart::W => Chart::Z,
        }
    }
}

/// A point of the sphere in a given chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint {
    pub chart: Chart,
    pub at: C64,
}

impl ChartPoint {
    pub fn z(at: C64) -> Self {
        ChartPoint {
            chart: Chart::Z,
            at,
        }
    }

    pub fn w(at: C64) -> Self {
        ChartPoint {
            chart: Chart::W,
            at,
        }
    }

    /// Coordinate of the same point in `chart` (`None` at 0 ↔ ∞).
    pub fn in_chart(&self, chart: Chart) -> Option<C64> {
        if chart == self.chart {
            Some(self.at)
        } else if self.at.norm() == 0.0 {
            None
        } else {
            Some(1.0 / self.at)
        }
    }
}

/// Anything that yields `x: U ⊂ S² → ℝ^ñ` as Wirtinger jets.
pub trait SurfaceSource: Send + Sync {
    /// Target dimension `ñ`.
    fn dim(&self) -> usize;

    /// Jets of the coordinates of `x` at `p`, to `order`.
    fn x_jets(&self, p: ChartPoint, order: usize) -> Result<Vec<Jet>, MoebiusError>;

    /// Points where `x` goes to infinity.
    fn ends(&self) -> Vec<ChartPoint>;
}

/// Minimal surface `x = F + conj F` from a rational primitive `F`.
#[derive(Clone, Debug)]
pub struct MinimalSurface {
    dim: usize,
    z_chart: FloatRat,
    w_chart: FloatRat,
    ends: Vec<ChartPoint>,
}

fn reversed(c: &[C64], deg: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); deg + 1];
    for (k, a) in c.iter().enumerate() {
        out[deg - k] = *a;
    }
    out
}

fn trimmed_len(c: &[C64]) -> usize {
    c.iter().rposition(|a| a.norm() != 0.0).map_or(0, |k| k + 1)
}

impl MinimalSurface {
    /// `F = nums / den`; `F(1/w)` is rewritten with reversed coefficients so
    /// the `w`-chart never evaluates large powers.
    pub fn from_primitive(f: &VRatFn, ends: Vec<ChartPoint>) -> Self {
        let z_chart = f.to_float();
        let deg = z_chart
            .nums
            .iter()
            .chain(std::iter::once(&z_chart.den))
            .map(|c| trimmed_len(c).saturating_sub(1))
            .max()
            .unwrap_or(0);
        let w_chart = FloatRat {
            nums: z_chart
                .nums
                .iter()
                .map(|c| reversed(&c[..trimmed_len(c)], deg))
                .collect(),
            den: reversed(&z_chart.den[..trimmed_len(&z_chart.den)], deg),
        };
        MinimalSurface {
            dim: f.dim(),
            z_chart,
            w_chart,
            ends,
        }
    }

    /// The surface of a Weierstrass datum, with ends at `0, ε₁, …, ε_n`.
    pub fn from_weierstrass(w: &WeierstrassData) -> Result<Self, MoebiusError> {
        let f = integrate_primitive(w)?;
        let ends = w.end_points().into_iter().map(ChartPoint::z).collect();
        Ok(Self::from_primitive(&f, ends))
    }

    /// Holomorphic Taylor data of `F` at `p`.
    pub fn f_series(&self, p: ChartPoint, order: usize) -> Result<Vec<Series>, MoebiusError> {
        let rat = match p.chart {
            Chart::Z => &self.z_chart,
            Chart::W => &self.w_chart,
        };
        if rat.den_at(p.at).norm() == 0.0 {
            return Err(MoebiusError::AtEnd(p.at));
        }
        Ok(rat.taylor(p.at, order)?)
    }
}

impl SurfaceSource for MinimalSurface {
    fn dim(&self) -> usize {
        self.dim
    }

    fn x_jets(&self, p: ChartPoint, order: usize) -> Result<Vec<Jet>, MoebiusError> {
        Ok(self
            .f_series(p, order)?
            .iter()
            .map(|s| {
                let j = Jet::from_holomorphic(s);
                &j + &j.conj()
            })
            .collect())
    }

    fn ends(&self) -> Vec<ChartPoint> {
        self.ends.clone()
    }
}

type JetMap = dyn Fn(&Jet) -> Result<Vec<Jet>, MoebiusError> + Send + Sync;

/// Closed-form surface `x(ζ)` written in terms of the jet of the `z`
/// coordinate; the `w`-chart feeds `z = 1/w`.
#[derive(Clone)]
pub struct ClosedForm {
    name: &'static str,
    dim: usize,
    map: Arc<JetMap>,
    ends: Vec<ChartPoint>,
}

impl std::fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClosedForm")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish()
    }
}

fn real_parts(z: &Jet) -> (Jet, Jet) {
    (z.re(), z.im())
}

impl ClosedForm {
    pub fn new(
        name: &'static str,
        dim: usize,
        ends: Vec<ChartPoint>,
        map: impl Fn(&Jet) -> Result<Vec<Jet>, MoebiusError> + Send + Sync + 'static,
    ) -> Self {
        ClosedForm {
            name,
            dim,
            map: Arc::new(map),
            ends,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// `x = (Re z, Im z, 0)`; one end at `∞`.
    pub fn plane() -> Self {
        Self::new("plane", 3, vec![ChartPoint::w(C64::new(0.0, 0.0))], |z| {
            let (u, v) = real_parts(z);
            Ok(vec![u, v, Jet::zero(z.order())])
        })
    }

    /// Inverse stereographic projection onto the unit sphere.
    pub fn round_sphere() -> Self {
        Self::new("round-sphere", 3, Vec::new(), |z| {
            let q = (z * &z.conj()).re();
            let inv = q.add_const(C64::new(1.0, 0.0)).recip()?;
            let (u, v) = real_parts(z);
            Ok(vec![
                (&u * &inv).scale_re(2.0),
                (&v * &inv).scale_re(2.0),
                &q.add_const(C64::new(-1.0, 0.0)) * &inv,
            ])
        })
    }

    /// Cylinder `(cos v, sin v, u)` for `z = u + iv`: conformal, not Willmore.
    pub fn cylinder() -> Self {
        Self::new("cylinder", 3, Vec::new(), |z| {
            let (u, v) = real_parts(z);
            let e = v.scale(C64::new(0.0, 1.0)).exp();
            Ok(vec![e.re(), e.im(), u])
        })
    }
}

impl SurfaceSource for ClosedForm {
    fn dim(&self) -> usize {
        self.dim
    }

    fn x_jets(&self, p: ChartPoint, order: usize) -> Result<Vec<Jet>, MoebiusError> {
        let z = match p.chart {
            Chart::Z => Jet::var_z(p.at, order),
            Chart::W => Jet::var_z(p.at, order).recip()?,
        };
        (self.map)(&z)
    }

    fn ends(&self) -> Vec<ChartPoint> {
        self.ends.clone()
    }
}

/// Inversion `x ↦ x/|x|²` of another surface (a Möbius transformation).
/// The inner surface's ends become ordinary points but stay listed, since
/// the inner jets cannot be evaluated there; chart origins where `x = 0`
/// are added as new ends.
#[derive(Clone, Debug)]
pub struct Inverted<S> {
    pub inner: S,
    ends: Vec<ChartPoint>,
}

impl<S: SurfaceSource> Inverted<S> {
    pub fn new(inner: S) -> Self {
        let mut ends = inner.ends();
        for p in [
            ChartPoint::z(C64::new(0.0, 0.0)),
            ChartPoint::w(C64::new(0.0, 0.0)),
        ] {
            if ends.iter().any(|e| e.in_chart(p.chart) == Some(p.at)) {
                continue;
            }
            if let Ok(x) = inner.x_jets(p, 0) {
                if x.iter().all(|a| a.value().norm() == 0.0) {
                    ends.push(p);
                }
            }
        }
        Inverted { inner, ends }
    }
}

impl<S: SurfaceSource> SurfaceSource for Inverted<S> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn x_jets(&self, p: ChartPoint, order: usize) -> Result<Vec<Jet>, MoebiusError> {
        let x = self.inner.x_jets(p, order)?;
        let q = x.iter().fold(Jet::zero(order), |acc, a| &acc + &(a * a));
        let inv = q.recip()?;
        Ok(x.iter().map(|a| a * &inv).collect())
    }

    fn ends(&self) -> Vec<ChartPoint> {
        self.ends.clone()
    }
}
