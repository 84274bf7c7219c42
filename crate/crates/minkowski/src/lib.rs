//! Linear algebra on `ℝ^{n+2}_1` with signature `(−,+,…,+)` and on its
//! complexification with the complex-bilinear extension of the pairing.
//!
//! Ranks and span memberships are Euclidean (SVD / Hermitian projections);
//! the indefinite form is only used where the geometry asks for it.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MinkError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("null direction at input {index} (self-pairing {pairing:e})")]
    NullDirection { index: usize, pairing: f64 },
}

/// Default relative rank tolerance.
pub const RANK_TOL: f64 = 1e-9;

fn check(a: usize, b: usize) -> Result<(), MinkError> {
    if a == b {
        Ok(())
    } else {
        Err(MinkError::DimensionMismatch(a, b))
    }
}

/// `−u₀v₀ + Σ uᵢvᵢ`, bilinear (no conjugation).
pub fn mdot(u: &[C64], v: &[C64]) -> Result<C64, MinkError> {
    check(u.len(), v.len())?;
    Ok(pair(u, v))
}

pub fn mdot_real(u: &[f64], v: &[f64]) -> Result<f64, MinkError> {
    check(u.len(), v.len())?;
    Ok(pair_real(u, v))
}

/// Unchecked [`mdot`] for equal-length inputs.
#[inline]
pub fn pair(u: &[C64], v: &[C64]) -> C64 {
    debug_assert_eq!(u.len(), v.len());
    let mut s = -u[0] * v[0];
    for i in 1..u.len() {
        s += u[i] * v[i];
    }
    s
}

#[inline]
pub fn pair_real(u: &[f64], v: &[f64]) -> f64 {
    debug_assert_eq!(u.len(), v.len());
    let mut s = -u[0] * v[0];
    for i in 1..u.len() {
        s += u[i] * v[i];
    }
    s
}

/// Hermitian Euclidean inner product `Σ uᵢ conj(vᵢ)`.
pub fn herm(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(u: &[C64]) -> f64 {
    u.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn complexify(v: &[f64]) -> Vec<C64> {
    v.iter().map(|&x| C64::new(x, 0.0)).collect()
}

pub fn conj_vec(v: &[C64]) -> Vec<C64> {
    v.iter().map(|a| a.conj()).collect()
}

pub fn basis_vector(dim: usize, i: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[i] = C64::new(1.0, 0.0);
    v
}

/// Spanning vectors of a subspace with its span attributes.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    pub vectors: Vec<Vec<C64>>,
    /// Whether the span is closed under conjugation.
    pub real: bool,
    pub rank_tol: f64,
}

impl SubspaceBasis {
    pub fn new(vectors: Vec<Vec<C64>>, real: bool) -> Self {
        SubspaceBasis {
            vectors,
            real,
            rank_tol: RANK_TOL,
        }
    }

    pub fn from_real(vectors: &[Vec<f64>]) -> Self {
        Self::new(vectors.iter().map(|v| complexify(v)).collect(), true)
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.vectors, self.rank_tol)
    }

    pub fn dim(&self) -> Option<usize> {
        self.vectors.first().map(Vec::len)
    }
}

/// Signed Gram–Schmidt for the Lorentz pairing, in input order.
///
/// Returns vectors with pairwise pairing 0 and self-pairings `±1`, plus
/// their signs. Aborts with [`MinkError::NullDirection`] when a projected
/// vector's self-pairing falls within `tol` (relative to its squared
/// Euclidean norm) of zero.
pub fn lorentz_gram_schmidt(
    vs: &[Vec<f64>],
    tol: f64,
) -> Result<(Vec<Vec<f64>>, Vec<i8>), MinkError> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    let mut signs: Vec<i8> = Vec::new();
    for (index, v) in vs.iter().enumerate() {
        if let Some(first) = vs.first() {
            check(first.len(), v.len())?;
        }
        let mut w = v.clone();
        for _pass in 0..2 {
            for (e, &s) in out.iter().zip(&signs) {
                let c = pair_real(&w, e) * s as f64;
                for (wi, ei) in w.iter_mut().zip(e) {
                    *wi -= c * ei;
                }
            }
        }
        let p = pair_real(&w, &w);
        let e2: f64 = w.iter().map(|x| x * x).sum();
        let scale: f64 = v.iter().map(|x| x * x).sum::<f64>().max(f64::MIN_POSITIVE);
        if p.abs() <= tol * scale || e2 <= tol * scale {
            return Err(MinkError::NullDirection { index, pairing: p });
        }
        let s: i8 = if p > 0.0 { 1 } else { -1 };
        let k = 1.0 / p.abs().sqrt();
        out.push(w.iter().map(|x| x * k).collect());
        signs.push(s);
    }
    Ok((out, signs))
}

/// Coordinate matrix with the vectors as columns.
pub fn columns(vs: &[Vec<C64>]) -> DMatrix<C64> {
    let rows = vs.first().map_or(0, Vec::len);
    DMatrix::from_fn(rows, vs.len(), |i, j| vs[j][i])
}

/// Euclidean singular values, descending.
pub fn singular_values(vs: &[Vec<C64>]) -> Vec<f64> {
    if vs.is_empty() || vs[0].is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = columns(vs).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank: singular values above `tol` times the largest.
pub fn rank_of(vs: &[Vec<C64>], tol: f64) -> usize {
    let s = singular_values(vs);
    match s.first() {
        None => 0,
        Some(&0.0) => 0,
        Some(&m) => s.iter().filter(|&&x| x > tol * m).count(),
    }
}

/// Rank decided by a relative singular-value gap: the first ratio
/// `σ_i / σ_{i+1}` exceeding `gap`, with `σ` relative to `scale`.
///
/// Values below `floor·scale` count as zero. `None` when no clean gap
/// separates retained and discarded values.
pub fn rank_with_gap(vs: &[Vec<C64>], scale: f64, floor: f64, gap: f64) -> Option<usize> {
    let s = singular_values(vs);
    let kept: Vec<f64> = s.iter().copied().filter(|&x| x > floor * scale).collect();
    let r = kept.len();
    if r == 0 {
        return Some(0);
    }
    // every retained value must clear the discarded block by the gap
    let next = s.get(r).copied().unwrap_or(0.0);
    let smallest = kept[r - 1];
    if next == 0.0 || smallest / next > gap {
        Some(r)
    } else {
        None
    }
}

/// Hermitian-orthonormal basis of the span (modified Gram–Schmidt, two
/// passes, dropping directions below `tol` relative to the largest input).
pub fn euclid_orthonormal(vs: &[Vec<C64>], tol: f64) -> Vec<Vec<C64>> {
    let scale = vs.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let mut out: Vec<Vec<C64>> = Vec::new();
    if scale == 0.0 {
        return out;
    }
    for v in vs {
        let mut w = v.clone();
        for _pass in 0..2 {
            for q in &out {
                let c = herm(&w, q);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let n = norm(&w);
        if n > tol * scale {
            out.push(w.iter().map(|x| x / n).collect());
        }
    }
    out
}

/// Euclidean distance from `w` to the span of an orthonormal basis.
pub fn distance_to_orthonormal_span(w: &[C64], q: &[Vec<C64>]) -> f64 {
    let mut r = w.to_vec();
    for qi in q {
        let c = herm(&r, qi);
        for (ri, b) in r.iter_mut().zip(qi) {
            *ri -= c * b;
        }
    }
    norm(&r)
}

/// Euclidean distance from `w` to `span(basis)`.
pub fn distance_to_span(w: &[C64], basis: &[Vec<C64>], tol: f64) -> f64 {
    distance_to_orthonormal_span(w, &euclid_orthonormal(basis, tol))
}

/// Numerical intersection of two spans via the nullspace of `[A | −B]`.
pub fn subspace_intersect(
    a: &SubspaceBasis,
    b: &SubspaceBasis,
    tol: f64,
) -> Result<SubspaceBasis, MinkError> {
    let (Some(da), Some(db)) = (a.dim(), b.dim()) else {
        return Ok(SubspaceBasis::new(Vec::new(), a.real && b.real));
    };
    check(da, db)?;
    let qa = euclid_orthonormal(&a.vectors, tol);
    let qb = euclid_orthonormal(&b.vectors, tol);
    let (ra, rb) = (qa.len(), qb.len());
    if ra == 0 || rb == 0 {
        return Ok(SubspaceBasis::new(Vec::new(), a.real && b.real));
    }
    let m = DMatrix::from_fn(
        da,
        ra + rb,
        |i, j| {
            if j < ra {
                qa[j][i]
            } else {
                -qb[j - ra][i]
            }
        },
    );
    // nullspace of m from the eigenvectors of the Hermitian Gram matrix
    let gram = m.adjoint() * &m;
    let eig = gram.symmetric_eigen();
    let mut vecs = Vec::new();
    for (k, lam) in eig.eigenvalues.iter().enumerate() {
        if lam.abs() <= tol.max(1e-12) {
            let alpha = eig.eigenvectors.column(k);
            let x: Vec<C64> = (0..da)
                .map(|i| (0..ra).map(|j| alpha[j] * qa[j][i]).sum())
                .collect();
            vecs.push(x);
        }
    }
    Ok(SubspaceBasis::new(
        euclid_orthonormal(&vecs, tol),
        a.real && b.real,
    ))
}

/// Real `dim × dim` matrix acting on column vectors, row-major.
pub type Mat = Vec<Vec<f64>>;

pub fn identity(dim: usize) -> Mat {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// Boost mixing the time axis with spatial axis `axis`.
pub fn boost(dim: usize, axis: usize, rapidity: f64) -> Mat {
    let mut m = identity(dim);
    let (c, s) = (rapidity.cosh(), rapidity.sinh());
    m[0][0] = c;
    m[axis][axis] = c;
    m[0][axis] = s;
    m[axis][0] = s;
    m
}

/// Rotation in the spatial plane `(i, j)`, both indices ≥ 1.
pub fn rotation(dim: usize, i: usize, j: usize, angle: f64) -> Mat {
    let mut m = identity(dim);
    let (c, s) = (angle.cos(), angle.sin());
    m[i][i] = c;
    m[j][j] = c;
    m[i][j] = -s;
    m[j][i] = s;
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn apply(m: &Mat, v: &[C64]) -> Vec<C64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| b * *a).sum())
        .collect()
}
