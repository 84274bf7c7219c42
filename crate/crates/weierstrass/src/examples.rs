use std::collections::BTreeMap;

use crational::{gq_int, gq_rat, qr, CPoly, VRatFn, GQ};
use num_traits::{One, Zero};

use crate::{Provenance, WeierstrassData};

fn provenance(name: &str) -> Provenance {
    Provenance {
        generator: name.into(),
        ..Provenance::default()
    }
}

/// `R(z) = m + (m+1) z^{2m+1}`.
fn bryant_r(m: usize) -> CPoly {
    let mut c = vec![GQ::zero(); 2 * m + 2];
    c[0] = gq_int(m as i64, 0);
    c[2 * m + 1] = gq_int(m as i64 + 1, 0);
    CPoly::from_coeffs(c)
}

/// Datum in ℝ³ with `2m+2` planar ends:
/// `P = R²(e₁+ie₂) − z^{2m+2}(e₁−ie₂) + 2 z^{m+1} R e₃`.
pub fn bryant_peng_xiao(m: usize) -> WeierstrassData {
    let r = bryant_r(m);
    let r2 = &r * &r;
    let top = CPoly::monomial(GQ::one(), 2 * m + 2);
    let e1 = &r2 - &top;
    let e2 = (&r2 + &top).scale(&gq_int(0, 1));
    let e3 = (&CPoly::monomial(gq_int(2, 0), m + 1)) * &r;
    WeierstrassData {
        ambient_dim: 3,
        k: Some(0),
        m: Some(m),
        n: 2 * m + 1,
        numerators: vec![e1, e2, e3],
        provenance: provenance("bryant-peng-xiao"),
    }
}

/// Numerator `A` of the ℝ⁴ primitive `F = A / (2 z (z^{2m} − 1))`.
fn r4_numerator(m: usize) -> Vec<CPoly> {
    let mi = m as i64;
    let c = qr(mi + 1, mi - 1);
    let half = gq_rat(qr(1, 2));
    let inv2m = gq_rat(qr(1, 2 * mi));
    let inv_m1 = gq_rat(qr(1, mi - 1));
    let i = gq_int(0, 1);
    // (c z^{2m} − 1)/2 on E⁺ = e₁ + i e₂
    let mut plus = vec![GQ::zero(); 2 * m + 1];
    plus[0] = -half.clone();
    plus[2 * m] = gq_rat(c) * &half;
    let plus = CPoly::from_coeffs(plus);
    // −z/(2m) on E⁻ = e₁ − i e₂
    let minus = CPoly::monomial(-inv2m.clone(), 1);
    let a_lo = CPoly::monomial(inv_m1, m);
    let a_hi = CPoly::monomial(inv2m, m + 1);
    vec![
        &plus + &minus,
        (&plus - &minus).scale(&i),
        &a_lo + &a_hi,
        (&a_lo - &a_hi).scale(&i),
    ]
}

fn r4_denominator(m: usize) -> CPoly {
    // z (z^{2m} − 1)
    let mut c = vec![GQ::zero(); 2 * m + 2];
    c[1] = gq_int(-1, 0);
    c[2 * m + 1] = GQ::one();
    CPoly::from_coeffs(c)
}

/// Closed-form primitive `F` of a non-isotropic ℝ⁴ surface with `2m+1`
/// planar ends (`x = F + conj F`):
/// `2F = (c z^{2m} − 1)E⁺/(2z(z^{2m}−1)) − E⁻/(2m(z^{2m}−1))
///      + z^{m−1}(e₃+ie₄)/((m−1)(z^{2m}−1)) + z^m(e₃−ie₄)/(2m(z^{2m}−1))`
/// with `c = (m+1)/(m−1)`.
pub fn r4_primitive(m: usize) -> VRatFn {
    let b = r4_denominator(m).scale(&gq_int(2, 0));
    VRatFn::new(r4_numerator(m), vec![(b, 1)])
}

/// Weierstrass datum of [`r4_primitive`]: `n = 2m` and
/// `P = (A′B − AB′)/2` with `B = z(z^{2m} − 1)`.
pub fn r4_example(m: usize) -> WeierstrassData {
    let b = r4_denominator(m);
    let db = b.derivative();
    let half = gq_rat(qr(1, 2));
    let numerators = r4_numerator(m)
        .iter()
        .map(|a| (&(&a.derivative() * &b) - &(a * &db)).scale(&half))
        .collect();
    WeierstrassData {
        ambient_dim: 4,
        k: Some(0),
        m: Some(m),
        n: 2 * m,
        numerators,
        provenance: provenance("r4-example"),
    }
}

/// Three-end totally isotropic datum in ℝ⁴ with `n = 2`:
/// `v₀ = (1, i, 0, 0)`, `v₃ = (0, 0, 1, i)`, `v₂ = v₀ + v₃`,
/// `v₄ = 3v₀ + v₂`.
pub fn totally_isotropic_example() -> WeierstrassData {
    let v0 = vec![gq_int(1, 0), gq_int(0, 1), GQ::zero(), GQ::zero()];
    let v3 = vec![GQ::zero(), GQ::zero(), gq_int(1, 0), gq_int(0, 1)];
    let v2: Vec<GQ> = v0.iter().zip(&v3).map(|(a, b)| a + b).collect();
    let v4: Vec<GQ> = v0
        .iter()
        .zip(&v2)
        .map(|(a, b)| a * gq_int(3, 0) + b)
        .collect();
    let mut v = BTreeMap::new();
    v.insert(0, v0);
    v.insert(2, v2);
    v.insert(3, v3);
    v.insert(4, v4);
    let mut w = WeierstrassData::from_vectors(2, 4, &v, provenance("totally-isotropic"));
    w.m = None;
    w
}
