//! Linear algebra over jet-valued vectors: projections along a span,
//! independent-subset selection and value-level containment residuals.

use crational::{Jet, C64};
use moebius::jets::{self, JVec};

use crate::HarmonicError;

/// Pivots below this fraction of the largest Gram entry count as singular.
pub const PIVOT_TOL: f64 = 1e-13;

/// Relative singular-value gap that separates retained from discarded
/// directions.
pub const RANK_GAP: f64 = 1e6;

/// Singular values below this fraction of the largest input norm are zero.
pub const RANK_FLOOR: f64 = 1e-9;

/// `½(v + v̄)`.
pub fn re_part(v: &[Jet]) -> JVec {
    jets::scale_c(C64::new(0.5, 0.0), &jets::add(v, &jets::conj(v)))
}

/// `(v − v̄)/2i`.
pub fn im_part(v: &[Jet]) -> JVec {
    jets::scale_c(C64::new(0.0, -0.5), &jets::sub(v, &jets::conj(v)))
}

/// Solve `M X = R` by Gaussian elimination with pivoting on values.
/// `m` is square, `r` holds one right-hand side per column.
pub fn solve(mut m: Vec<Vec<Jet>>, mut r: Vec<Vec<Jet>>) -> Result<Vec<Vec<Jet>>, HarmonicError> {
    let n = m.len();
    let scale = m
        .iter()
        .flatten()
        .map(|a| a.value().norm())
        .fold(0.0, f64::max);
    for col in 0..n {
        let p = (col..n)
            .max_by(|&a, &b| {
                m[a][col]
                    .value()
                    .norm()
                    .total_cmp(&m[b][col].value().norm())
            })
            .expect("nonempty");
        let pv = m[p][col].value().norm();
        if scale == 0.0 || pv <= PIVOT_TOL * scale {
            return Err(HarmonicError::NullDirection { index: col });
        }
        m.swap(col, p);
        r.swap(col, p);
        let inv = m[col][col].recip()?;
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = &m[row][col] * &inv;
            if f.max_abs() == 0.0 {
                continue;
            }
            let (prow, rrow) = (m[col].clone(), r[col].clone());
            for (x, p) in m[row].iter_mut().zip(&prow).skip(col) {
                *x = &*x - &(&f * p);
            }
            for (x, p) in r[row].iter_mut().zip(&rrow) {
                *x = &*x - &(&f * p);
            }
        }
    }
    for (i, rhs) in r.iter_mut().enumerate() {
        let inv = m[i][i].recip()?;
        for x in rhs.iter_mut() {
            *x = &*x * &inv;
        }
    }
    Ok(r)
}

/// `v − Σ c_l span_l` with `c` chosen so that the result pairs to zero with
/// every `test_m` (bilinear pairing). `test = span` is the Lorentz projection
/// off a nondegenerate span; `test = conj(span)` the Hermitian one.
pub fn remove_along(vs: &[JVec], span: &[JVec], test: &[JVec]) -> Result<Vec<JVec>, HarmonicError> {
    if span.is_empty() || vs.is_empty() {
        return Ok(vs.to_vec());
    }
    let m: Vec<Vec<Jet>> = test
        .iter()
        .map(|t| span.iter().map(|s| jets::pair(s, t)).collect())
        .collect();
    let r: Vec<Vec<Jet>> = test
        .iter()
        .map(|t| vs.iter().map(|v| jets::pair(v, t)).collect())
        .collect();
    let c = solve(m, r)?;
    Ok(vs
        .iter()
        .enumerate()
        .map(|(k, v)| {
            span.iter().zip(&c).fold(v.clone(), |acc, (s, row)| {
                jets::sub(&acc, &jets::scale(&row[k], s))
            })
        })
        .collect())
}

/// Lorentz projection off a nondegenerate span.
pub fn lorentz_remove(vs: &[JVec], span: &[JVec]) -> Result<Vec<JVec>, HarmonicError> {
    remove_along(vs, span, span)
}

/// Hermitian projection off a span (`⟨·, conj s⟩ = 0` for every `s`).
pub fn hermitian_remove(vs: &[JVec], span: &[JVec]) -> Result<Vec<JVec>, HarmonicError> {
    let test: Vec<JVec> = span.iter().map(|s| jets::conj(s)).collect();
    remove_along(vs, span, &test)
}

/// Rank of the values of `vs` by the singular-value gap test; `None` when
/// the gap is ambiguous.
pub fn value_rank(vs: &[JVec]) -> Option<usize> {
    value_rank_with(vs, 0.0)
}

/// As [`value_rank`], with singular values measured against
/// `max(reference, largest input norm)`.
pub fn value_rank_with(vs: &[JVec], reference: f64) -> Option<usize> {
    let vals: Vec<Vec<C64>> = vs.iter().map(|v| jets::value(v)).collect();
    let scale = vals
        .iter()
        .map(|v| minkowski::norm(v))
        .fold(reference, f64::max);
    if scale == 0.0 {
        return Some(0);
    }
    minkowski::rank_with_gap(&vals, scale, RANK_FLOOR, RANK_GAP)
}

/// `rank` members of `vs` whose values are best conditioned (greedy pivoted
/// Gram–Schmidt on values).
pub fn select_independent(vs: &[JVec], rank: usize) -> Vec<JVec> {
    let mut rest: Vec<(usize, Vec<C64>)> = vs
        .iter()
        .enumerate()
        .map(|(i, v)| (i, jets::value(v)))
        .collect();
    let mut picked = Vec::new();
    let mut q: Vec<Vec<C64>> = Vec::new();
    while picked.len() < rank && !rest.is_empty() {
        let (pos, _) = rest
            .iter()
            .enumerate()
            .map(|(p, (_, w))| (p, minkowski::distance_to_orthonormal_span(w, &q)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        let (i, w) = rest.swap_remove(pos);
        picked.push(i);
        q = minkowski::euclid_orthonormal(
            &q.iter()
                .cloned()
                .chain(std::iter::once(w))
                .collect::<Vec<_>>(),
            0.0,
        );
    }
    picked.sort_unstable();
    picked.into_iter().map(|i| vs[i].clone()).collect()
}

/// Independent subset spanning `vs`, with its rank.
pub fn basis_of(vs: &[JVec]) -> Result<Vec<JVec>, HarmonicError> {
    basis_of_with(vs, 0.0)
}

/// [`basis_of`] against a reference scale, so that round-off multiples of
/// a vanishing bundle come out empty.
pub fn basis_of_with(vs: &[JVec], reference: f64) -> Result<Vec<JVec>, HarmonicError> {
    let r = value_rank_with(vs, reference).ok_or(HarmonicError::AmbiguousRank)?;
    Ok(select_independent(vs, r))
}

/// Largest Euclidean norm among the values of `vs`.
pub fn max_value_norm(vs: &[JVec]) -> f64 {
    vs.iter()
        .map(|v| minkowski::norm(&jets::value(v)))
        .fold(0.0, f64::max)
}

/// Euclidean distance from the value of `w` to the span of the values of
/// `basis`, relative to `|w|` (or to `scale` when that is larger).
pub fn containment(w: &[Jet], basis: &[JVec], scale: f64) -> f64 {
    let w = jets::value(w);
    let b: Vec<Vec<C64>> = basis.iter().map(|v| jets::value(v)).collect();
    let d = minkowski::distance_to_span(&w, &b, 1e-13);
    let s = minkowski::norm(&w).max(scale);
    if s == 0.0 {
        0.0
    } else {
        d / s
    }
}

/// `|⟨a, b⟩| / (|a||b|)` with Euclidean lengths.
pub fn relative_pairing(a: &[C64], b: &[C64]) -> f64 {
    let s = minkowski::norm(a) * minkowski::norm(b);
    if s == 0.0 {
        0.0
    } else {
        minkowski::pair(a, b).norm() / s
    }
}

/// Truncate every vector to the smallest order present.
pub fn common_order(vs: &[JVec]) -> Vec<JVec> {
    let o = vs.iter().map(|v| jets::order(v)).min().unwrap_or(0);
    vs.iter().map(|v| jets::truncate(v, o)).collect()
}

/// Constant jets of the standard basis of `ℂ^dim`.
pub fn standard_basis(dim: usize, order: usize) -> Vec<JVec> {
    (0..dim)
        .map(|i| jets::constant(&minkowski::basis_vector(dim, i), order))
        .collect()
}
