use std::f64::consts::PI;

use crate::gauss::C64;
use crate::ratfn::{Factors, RatFn, VRatFn};
use crate::series::Series;
use crate::CrationalError;

/// Synthetic division by `(z − p)`; returns quotient and remainder.
fn deflate(c: &[C64], p: C64) -> (Vec<C64>, C64) {
    let n = c.len();
    if n == 0 {
        return (Vec::new(), C64::new(0.0, 0.0));
    }
    let mut q = vec![C64::new(0.0, 0.0); n - 1];
    let mut acc = C64::new(0.0, 0.0);
    for k in (0..n).rev() {
        acc = acc * p + c[k];
        if k > 0 {
            q[k - 1] = acc;
        }
    }
    (q, acc)
}

/// Splits each factor as `(z − p)^μ · q̃`; returns total pole order and the
/// deflated float factors with exponents.
fn split_pole(den: &Factors, p: C64) -> (usize, Vec<(Vec<C64>, u32)>) {
    let mut total = 0usize;
    let mut rest = Vec::new();
    for (q, e) in den {
        let mut c = q.to_c64_coeffs();
        loop {
            if c.len() < 2 {
                break;
            }
            let scale: f64 = c
                .iter()
                .enumerate()
                .map(|(k, a)| a.norm() * p.norm().max(1.0).powi(k as i32))
                .sum();
            let (quot, rem) = deflate(&c, p);
            if rem.norm() > 1e-9 * scale {
                break;
            }
            c = quot;
            total += *e as usize;
        }
        rest.push((c, *e));
    }
    (total, rest)
}

/// Taylor coefficients `0..=jo` of `N_i / Π q̃^e` at `p` for each numerator.
fn regular_series(
    nums: &[Vec<C64>],
    rest: &[(Vec<C64>, u32)],
    p: C64,
    jo: usize,
) -> Result<Vec<Series>, CrationalError> {
    let t = Series::variable(p, jo);
    let mut den = Series::constant(C64::new(1.0, 0.0), jo);
    for (c, e) in rest {
        let s = Series::poly_at(c, &t);
        for _ in 0..*e {
            den = den.mul(&s);
        }
    }
    let inv = den.recip()?;
    Ok(nums
        .iter()
        .map(|n| Series::poly_at(n, &t).mul(&inv))
        .collect())
}

fn regular_part(
    nums: &[Vec<C64>],
    rest: &[(Vec<C64>, u32)],
    p: C64,
    order: usize,
) -> Result<Vec<C64>, CrationalError> {
    let jo = order.saturating_sub(1);
    Ok(regular_series(nums, rest, p, jo)?
        .into_iter()
        .map(|s| s.c[jo])
        .collect())
}

/// Order of the pole of a function with denominator `den` at `p`
/// (multiplicity of `p` as a root, detected in floating point).
pub fn pole_order(den: &Factors, p: C64) -> usize {
    split_pole(den, p).0
}

/// Pole order at `p` and the first `count` Taylor coefficients of
/// `(z − p)^order · f`, componentwise. Coefficient `order − 1` is the
/// residue; coefficient 0 is the leading Laurent vector.
pub fn laurent_head_vec(
    f: &VRatFn,
    p: C64,
    count: usize,
) -> Result<(usize, Vec<Vec<C64>>), CrationalError> {
    let (order, rest) = split_pole(&f.den, p);
    let nums: Vec<Vec<C64>> = f.nums.iter().map(|q| q.to_c64_coeffs()).collect();
    let series = regular_series(&nums, &rest, p, count.max(1) - 1)?;
    let coeffs = (0..count)
        .map(|k| series.iter().map(|s| s.c[k]).collect())
        .collect();
    Ok((order, coeffs))
}

fn mismatch(p: C64, expected: usize, found: usize) -> CrationalError {
    CrationalError::PoleOrderMismatch {
        pole: format!("{p}"),
        expected,
        found,
    }
}

/// Residue at a pole of known order from `d^{k−1}/dz^{k−1}[(z−p)^k f]/(k−1)!`,
/// after deflating the factored denominator in floating point.
pub fn residue_numeric(f: &RatFn, pole: C64, order: usize) -> Result<C64, CrationalError> {
    let (found, rest) = split_pole(&f.den, pole);
    if found != order || order == 0 {
        return Err(mismatch(pole, order, found));
    }
    Ok(regular_part(&[f.num.to_c64_coeffs()], &rest, pole, order)?[0])
}

/// Componentwise [`residue_numeric`].
pub fn residue_numeric_vec(
    f: &VRatFn,
    pole: C64,
    order: usize,
) -> Result<Vec<C64>, CrationalError> {
    let (found, rest) = split_pole(&f.den, pole);
    if found != order || order == 0 {
        return Err(mismatch(pole, order, found));
    }
    let nums: Vec<Vec<C64>> = f.nums.iter().map(|p| p.to_c64_coeffs()).collect();
    regular_part(&nums, &rest, pole, order)
}

/// `(1/2πi) ∮ f dz` over the circle `|z − c| = r` by the `n`-point
/// trapezoid rule.
pub fn contour_residue(f: impl Fn(C64) -> C64, center: C64, radius: f64, n: usize) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..n {
        let e = C64::from_polar(radius, 2.0 * PI * k as f64 / n as f64);
        acc += f(center + e) * e;
    }
    acc / n as f64
}
