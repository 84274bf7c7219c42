use std::fmt;

use crational::{laurent_head_vec, CPoly, VRatFn, C64, GQ};
use num_traits::{One, Zero};

use crate::linalg::solve;
use crate::{WeierstrassData, WeierstrassError};

/// Outcome of the exact conformality check.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalReport {
    pub pass: bool,
    /// `x_z ≡ 0`.
    pub degenerate: bool,
    /// Exponents with a nonzero coefficient in the numerator of `⟨x_z, x_z⟩`.
    pub offending: Vec<usize>,
}

/// Exact: the numerator of `⟨x_z, x_z⟩` must be the zero polynomial.
pub fn verify_conformal(w: &WeierstrassData) -> ConformalReport {
    let degenerate = w.numerators.iter().all(CPoly::is_zero);
    let sq = w
        .numerators
        .iter()
        .fold(CPoly::zero(), |acc, p| &acc + &(p * p));
    let offending = sq.support();
    ConformalReport {
        pass: offending.is_empty(),
        degenerate,
        offending,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndClass {
    PlanarEnd,
    NonPlanarPole,
    Regular,
}

impl fmt::Display for EndClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndClass::PlanarEnd => "planar-end",
            EndClass::NonPlanarPole => "non-planar-pole",
            EndClass::Regular => "regular",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndEntry {
    pub location: C64,
    /// Actual pole order of `x_z` (0 when finite).
    pub pole_order: usize,
    /// Max modulus of the residue over components.
    pub residue: f64,
    /// Leading Laurent vector `lim (z−p)^order x_z`.
    pub leading: Vec<C64>,
    pub leading_isotropic: bool,
    pub class: EndClass,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndReport {
    pub ends: Vec<EndEntry>,
    /// `∞` is a regular point iff `v_{2n} ≠ 0` and `deg P ≤ 2n`.
    pub infinity_regular: bool,
}

impl EndReport {
    pub fn planar_count(&self) -> usize {
        self.ends
            .iter()
            .filter(|e| e.class == EndClass::PlanarEnd)
            .count()
    }

    pub fn max_residue(&self) -> f64 {
        self.ends.iter().map(|e| e.residue).fold(0.0, f64::max)
    }

    /// Every finite candidate is a planar end and `∞` is regular.
    pub fn all_planar(&self) -> bool {
        self.infinity_regular && self.ends.iter().all(|e| e.class == EndClass::PlanarEnd)
    }
}

fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Classifies the candidate ends `0, ε₁, …, ε_n` of `x_z`, with `tol`
/// bounding residues and isotropy defects (relative to the leading vector).
pub fn end_report(w: &WeierstrassData, tol: f64) -> Result<EndReport, WeierstrassError> {
    let f = w.x_z();
    let scale = w
        .numerators
        .iter()
        .flat_map(|p| p.to_c64_coeffs())
        .map(|c| c.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut ends = Vec::new();
    for p in w.end_points() {
        let (den_order, head) = laurent_head_vec(&f, p, 3)?;
        let first = (0..den_order.min(head.len())).find(|&i| vec_norm(&head[i]) > 1e-10 * scale);
        let pole_order = first.map_or(0, |i| den_order - i);
        let residue = if den_order >= 1 && den_order <= head.len() {
            head[den_order - 1]
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max)
        } else {
            0.0
        };
        let leading = first.map_or_else(|| vec![C64::zero(); w.ambient_dim], |i| head[i].clone());
        let self_pair: C64 = leading.iter().map(|c| c * c).sum();
        let ln = vec_norm(&leading);
        let leading_isotropic = ln > 0.0 && self_pair.norm() <= tol * ln * ln;
        let class = if pole_order == 0 {
            EndClass::Regular
        } else if pole_order == 2 && residue < tol && leading_isotropic {
            EndClass::PlanarEnd
        } else {
            EndClass::NonPlanarPole
        };
        ends.push(EndEntry {
            location: p,
            pole_order,
            residue,
            leading,
            leading_isotropic,
            class,
        });
    }
    let infinity_regular =
        w.max_degree() <= 2 * w.n && w.vector(2 * w.n).iter().any(|c| !c.is_zero());
    Ok(EndReport {
        ends,
        infinity_regular,
    })
}

/// [`end_report`] under its conventional name.
pub fn verify_planar_ends(w: &WeierstrassData, tol: f64) -> Result<EndReport, WeierstrassError> {
    end_report(w, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsotropyOrder {
    Finite(usize),
    Total,
}

impl fmt::Display for IsotropyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsotropyOrder::Finite(k) => write!(f, "{k}"),
            IsotropyOrder::Total => f.write_str("total"),
        }
    }
}

/// Whether `⟨x_z^{(j)}, x_z^{(j)}⟩ ≡ 0` for `j = 1..=jmax` (exact), stopping
/// at the first failure.
pub fn isotropy_profile(w: &WeierstrassData, jmax: usize) -> Result<Vec<bool>, WeierstrassError> {
    let mut d = w.x_z();
    let mut out = Vec::new();
    for j in 1..=jmax {
        if j > 1 {
            d = d.derivative();
        }
        let zero = d.pairing(&d)?.is_zero();
        out.push(zero);
        if !zero {
            break;
        }
    }
    Ok(out)
}

/// Largest `k` with `⟨x_z^{(j)}, x_z^{(j)}⟩ ≡ 0` for `1 ≤ j ≤ k+1`.
///
/// Returns `Total` when the vanishing persists to `j = ñ/2 + 2`: the
/// osculating spaces of a curve in `ℂ^ñ` stabilize by then, after which all
/// higher derivatives lie in an isotropic span.
pub fn isotropy_order(w: &WeierstrassData) -> Result<IsotropyOrder, WeierstrassError> {
    if w.numerators.iter().all(CPoly::is_zero) {
        return Err(WeierstrassError::Degenerate);
    }
    let jmax = w.ambient_dim / 2 + 2;
    let prof = isotropy_profile(w, jmax)?;
    match prof.iter().position(|z| !z) {
        Some(0) => Err(WeierstrassError::NotConformal(
            verify_conformal(w).offending.len(),
        )),
        Some(j) => Ok(IsotropyOrder::Finite(j - 1)),
        None => Ok(IsotropyOrder::Total),
    }
}

/// Exact primitive `F = A / (z(zⁿ − 1))` with `F′ = x_z`.
///
/// Solves `A′B − AB′ = P` coefficientwise with `deg A ≤ max(n+1, deg P − n)`
/// (the excess covers a polynomial part of `F`); an inconsistent system
/// means a nonzero residue in that component.
#[allow(clippy::needless_range_loop)]
pub fn integrate_primitive(w: &WeierstrassData) -> Result<VRatFn, WeierstrassError> {
    let n = w.n;
    let mut bc = vec![GQ::zero(); n + 2];
    bc[1] = -GQ::one();
    bc[n + 1] = GQ::one();
    let b = CPoly::from_coeffs(bc);
    let db = b.derivative();
    let unknowns = (n + 2).max((w.max_degree() + 1).saturating_sub(n));
    let rows = unknowns + n;
    // column t holds the coefficients of (z^t)′B − z^t B′
    let mut a = vec![vec![GQ::zero(); unknowns]; rows.max(w.max_degree() + 1)];
    for t in 0..unknowns {
        let zt = CPoly::monomial(GQ::one(), t);
        let col = &(&zt.derivative() * &b) - &(&zt * &db);
        for (r, c) in col.coeffs().iter().enumerate() {
            a[r][t] = c.clone();
        }
    }
    let mut nums = Vec::with_capacity(w.ambient_dim);
    for (i, p) in w.numerators.iter().enumerate() {
        let rhs: Vec<GQ> = (0..a.len()).map(|r| p.coeff(r)).collect();
        let sol = solve(&a, &[rhs]).ok_or(WeierstrassError::NonzeroResidue(i))?;
        nums.push(CPoly::from_coeffs(sol.into_iter().next().unwrap()));
    }
    Ok(VRatFn::new(nums, vec![(b, 1)]))
}
