use std::collections::BTreeMap;

use crational::{gq, gq_int, gq_rat, q, qr, GQ, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::nullspace;
use crate::{LambdaTable, Provenance, WeierstrassData, WeierstrassError};

/// Falling factorial `x (x−1) ⋯ (x−r+1)`.
pub fn falling(x: i64, r: usize) -> Q {
    (0..r as i64).fold(Q::one(), |acc, t| acc * q(x - t))
}

/// Per-row coefficient tables of the k-isotropy system; row `i` encodes
/// `⟨P^{(i+1)}, P^{(i+1)}⟩ ≡ 0` on the three exponent groups
/// `2l`, `n+2l`, `2n+2l`.
///
/// * `a[i][0]`, `a[i][j]` (`1 ≤ j ≤ s`): `a_{i0} τ₀ + 2 Σ a_{ij} τ_j = 0`.
/// * `b[i][j]` for `j ∈ 0..=s` and `b[i][s+2]`:
///   `b_{i0} τ₀ + Σ b_{ij} τ_j + b_{i,s+2} τ_{s+2} = 0`.
/// * `c[i][j]` for `j ∈ 0..=s+2`:
///   `c_{i0} τ₀ + 2 Σ c_{ij} τ_j + c_{i,s+1} τ_{s+1} + c_{i,s+2} τ_{s+2} = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTables {
    pub k: usize,
    pub m: usize,
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Vec<Q>>,
    pub c: Vec<Vec<Q>>,
}

struct Shape {
    m: i64,
    n: i64,
    l: i64,
    s: usize,
}

impl Shape {
    fn new(k: usize, m: usize) -> Self {
        Shape {
            m: m as i64,
            n: 2 * m as i64 + 1,
            l: m as i64 + 1,
            s: 3 * k,
        }
    }
    /// Multiplier of `v_{n+l+j}` over `v_{l+j}`.
    fn a_mult(&self, j: i64) -> Q {
        qr(self.m - j + 1, self.m + j)
    }
    /// Multiplier of `v_{n+l−j}` over `v_{l−j}`.
    fn b_mult(&self, j: i64) -> Q {
        qr(self.m + j + 1, self.m - j)
    }
    fn mp(&self) -> Q {
        qr(self.m + 1, self.m)
    }
}

fn check_domain(k: usize, m: usize) -> Result<(), WeierstrassError> {
    if m < 3 * k + 1 || m == 0 {
        return Err(WeierstrassError::ParameterDomain { k, m });
    }
    Ok(())
}

pub fn coefficient_tables(k: usize, m: usize) -> Result<CoefficientTables, WeierstrassError> {
    check_domain(k, m)?;
    let sh = Shape::new(k, m);
    let (n, l, s) = (sh.n, sh.l, sh.s);
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    for i in 0..k {
        let r = i + 1;
        let mut ra = vec![falling(l, r) * falling(l, r)];
        let mut rb = vec![sh.mp() * falling(l, r) * falling(n + l, r)];
        let mut rc = vec![sh.mp() * sh.mp() * falling(n + l, r) * falling(n + l, r)];
        for j in 1..=s as i64 {
            ra.push(falling(l - j, r) * falling(l + j, r));
            rb.push(
                falling(l - j, r) * falling(n + l + j, r) * sh.a_mult(j)
                    + falling(l + j, r) * falling(n + l - j, r) * sh.b_mult(j),
            );
            rc.push(falling(n + l - j, r) * falling(n + l + j, r) * sh.a_mult(j) * sh.b_mult(j));
        }
        let end = falling(2 * l, r) * falling(2 * n, r);
        rb.push(Q::zero());
        rb.push(falling(n, r) * falling(2 * l, r));
        rc.push(qr(2, 1) * sh.mp() * end.clone());
        rc.push(end / q(sh.m));
        a.push(ra);
        b.push(rb);
        c.push(rc);
    }
    Ok(CoefficientTables { k, m, a, b, c })
}

impl CoefficientTables {
    /// The `3k` rows as linear forms in `(τ₀, …, τ_{s+2})`.
    pub fn rows(&self) -> Vec<Vec<Q>> {
        let s = 3 * self.k;
        let mut out = Vec::new();
        for i in 0..self.k {
            let mut r1 = vec![Q::zero(); s + 3];
            let mut r2 = vec![Q::zero(); s + 3];
            let mut r3 = vec![Q::zero(); s + 3];
            r1[0] = self.a[i][0].clone();
            r2[0] = self.b[i][0].clone();
            r3[0] = self.c[i][0].clone();
            for j in 1..=s {
                r1[j] = q(2) * self.a[i][j].clone();
                r2[j] = self.b[i][j].clone();
                r3[j] = q(2) * self.c[i][j].clone();
            }
            r2[s + 2] = self.b[i][s + 2].clone();
            r3[s + 1] = self.c[i][s + 1].clone();
            r3[s + 2] = self.c[i][s + 2].clone();
            out.extend([r1, r2, r3]);
        }
        out
    }
}

/// Exact τ vector `(τ₀, …, τ_{s+2})` with `τ_j = λ_{l−j,l+j}`,
/// `τ_{s+1} = λ_{0,2l}`, `τ_{s+2} = λ_{n,2l}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauVector {
    pub k: usize,
    pub m: usize,
    pub tau: Vec<Q>,
    pub nullity: usize,
}

/// Coefficients of `τ_{s+1}` and `τ_{s+2}` as linear forms in `τ₀..τ_s`
/// (the two conformality relations).
fn conformal_elimination(sh: &Shape) -> (Vec<Q>, Vec<Q>) {
    let mut e1 = vec![qr(-1, 2)];
    let mut e2 = vec![-sh.mp()];
    for j in 1..=sh.s as i64 {
        e1.push(q(-1));
        e2.push(-(sh.a_mult(j) + sh.b_mult(j)));
    }
    (e1, e2)
}

fn extend_tau(sh: &Shape, base: &[Q]) -> Vec<Q> {
    let (e1, e2) = conformal_elimination(sh);
    let dot = |e: &[Q]| {
        e.iter()
            .zip(base)
            .fold(Q::zero(), |acc, (x, y)| acc + x * y)
    };
    let mut t = base.to_vec();
    t.push(dot(&e1));
    t.push(dot(&e2));
    t
}

/// `λ_{2l,2n}` implied by τ.
fn lambda_end(sh: &Shape, tau: &[Q]) -> Q {
    tau[sh.s + 2].clone() / q(2 * sh.m) + sh.mp() * tau[sh.s + 1].clone()
}

/// Solves the conformality and k-isotropy system for τ.
///
/// For `k = 0` the single free parameter is τ₀ (default `2m`). For `k ≥ 1`
/// the nullspace over `τ₀..τ_s` is computed exactly; if it has dimension
/// above one, a combination with seeded integer weights in `1..=9` is
/// taken. The result is scaled so that `τ₀ = 2m` whenever `τ₀ ≠ 0`.
pub fn solve_tau(
    k: usize,
    m: usize,
    tau0: Option<Q>,
    seed: u64,
) -> Result<TauVector, WeierstrassError> {
    check_domain(k, m)?;
    let sh = Shape::new(k, m);
    let s = sh.s;
    let target0 = tau0.unwrap_or_else(|| q(2 * m as i64));
    if k == 0 {
        let tau = extend_tau(&sh, &[target0]);
        return Ok(TauVector {
            k,
            m,
            tau,
            nullity: 1,
        });
    }
    let (e1, e2) = conformal_elimination(&sh);
    let rows = coefficient_tables(k, m)?.rows();
    let reduced: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            (0..=s)
                .map(|j| r[j].clone() + r[s + 1].clone() * &e1[j] + r[s + 2].clone() * &e2[j])
                .collect()
        })
        .collect();
    let basis = nullspace(&reduced, s + 1);
    if basis.is_empty() {
        return Err(WeierstrassError::NoNontrivialSolution);
    }
    let nullity = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..64 {
        let mut t = vec![Q::zero(); s + 1];
        for b in &basis {
            let w = if nullity == 1 {
                q(1)
            } else {
                q(rng.gen_range(1..=9))
            };
            for (ti, bi) in t.iter_mut().zip(b) {
                *ti += w.clone() * bi;
            }
        }
        if t.iter().all(Zero::is_zero) {
            continue;
        }
        let pivot = if t[0].is_zero() {
            t.iter().find(|x| !x.is_zero()).cloned().unwrap()
        } else {
            t[0].clone() / target0.clone()
        };
        let t: Vec<Q> = t.into_iter().map(|x| x / pivot.clone()).collect();
        let tau = extend_tau(&sh, &t);
        if !tau[s + 1].is_zero() && !lambda_end(&sh, &tau).is_zero() {
            return Ok(TauVector { k, m, tau, nullity });
        }
        if nullity == 1 {
            break;
        }
    }
    Err(WeierstrassError::InconsistentTargets(
        "every sampled solution makes v₀ or v_{2n} vanish".into(),
    ))
}

/// The λ-table prescribed by τ (before any realizing scale).
#[allow(clippy::needless_range_loop)]
pub fn target_lambdas(t: &TauVector) -> LambdaTable {
    let sh = Shape::new(t.k, t.m);
    let (n, l, s) = (sh.n as usize, sh.l as usize, sh.s);
    let tau = &t.tau;
    let mut entries = BTreeMap::new();
    let mut put = |a: usize, b: usize, v: Q| {
        if !v.is_zero() {
            entries.insert((a.min(b), a.max(b)), gq_rat(v));
        }
    };
    put(l, l, tau[0].clone());
    put(l, n + l, sh.mp() * tau[0].clone());
    put(n + l, n + l, sh.mp() * sh.mp() * tau[0].clone());
    for j in 1..=s {
        let ji = j as i64;
        put(l - j, l + j, tau[j].clone());
        put(l - j, n + l + j, sh.a_mult(ji) * tau[j].clone());
        put(n + l - j, l + j, sh.b_mult(ji) * tau[j].clone());
        put(
            n + l - j,
            n + l + j,
            sh.a_mult(ji) * sh.b_mult(ji) * tau[j].clone(),
        );
    }
    put(0, 2 * l, tau[s + 1].clone());
    put(n, 2 * l, tau[s + 2].clone());
    put(2 * l, 2 * n, lambda_end(&sh, tau));
    LambdaTable { entries }
}

/// Smallest `f > 0` (up to an unfactored cofactor) with `f·|x|` a square,
/// for a positive integer `x`; returns `(f, sqrt(f·x))`.
fn square_completion(x: &BigInt) -> (BigInt, BigInt) {
    let mut rest = x.clone();
    let mut f = BigInt::one();
    let mut root = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &p * &p <= rest && p <= limit {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        root *= p.pow(e.div_ceil(2));
        if e % 2 == 1 {
            f *= &p;
        }
        p += 1;
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        root *= r;
    } else {
        f *= &rest;
        root *= rest;
    }
    (f, root)
}

fn plane_vec(dim: usize, a: usize, b: usize, sign: i64, scale: &GQ) -> Vec<GQ> {
    let mut v = vec![GQ::zero(); dim];
    v[a] = scale.clone();
    v[b] = scale * gq_int(0, sign);
    v
}

/// Realizes τ by explicit vectors in `ℂ^{2s+3}`.
///
/// Conjugate pairs `(e_a ∓ i e_b)` get multiplier 1 on the minus branch;
/// the plus branch carries `f·τ/2`. `v_l = c·e₃` with `c² = f·τ₀`, where `f`
/// is the smallest scale making `f·τ₀` a square in ℚ(i). Every λ entry
/// equals `f` times its target. The residue relations fix `v_{n+j}` and
/// `v_{2n}`.
#[allow(clippy::needless_range_loop)]
pub fn assemble_vectors(
    t: &TauVector,
    seed: Option<u64>,
) -> Result<WeierstrassData, WeierstrassError> {
    let sh = Shape::new(t.k, t.m);
    let (n, l, s) = (sh.n as usize, sh.l as usize, sh.s);
    let dim = 2 * s + 3;
    let tau = &t.tau;
    let (f, c) = if tau[0].is_zero() {
        (Q::one(), GQ::zero())
    } else {
        let pq = (tau[0].numer() * tau[0].denom()).abs();
        let (f, root) = square_completion(&pq);
        // f·τ₀ = ±(root/den)²
        let r = Q::new(root, tau[0].denom().clone());
        let c = if tau[0].is_positive() {
            gq_rat(r)
        } else {
            gq(Q::zero(), r)
        };
        (Q::from_integer(f), c)
    };
    let half_f = |x: &Q| gq_rat(f.clone() * x / q(2));
    let mut v: BTreeMap<usize, Vec<GQ>> = BTreeMap::new();
    v.insert(2 * l, plane_vec(dim, 0, 1, -1, &GQ::one()));
    v.insert(0, plane_vec(dim, 0, 1, 1, &half_f(&tau[s + 1])));
    v.insert(n, plane_vec(dim, 0, 1, 1, &half_f(&tau[s + 2])));
    let mut vl = vec![GQ::zero(); dim];
    vl[2] = c;
    v.insert(l, vl);
    for j in 1..=s {
        let (a, b) = (2 * j + 1, 2 * j + 2);
        v.insert(l - j, plane_vec(dim, a, b, -1, &GQ::one()));
        v.insert(l + j, plane_vec(dim, a, b, 1, &half_f(&tau[j])));
    }
    // residue relations v_{n+j} = ((n−j+1)/(j−1)) v_j
    for jj in (l - s)..=(l + s) {
        let mult = gq_rat(qr((n - jj + 1) as i64, (jj - 1) as i64));
        let w: Vec<GQ> = v[&jj].iter().map(|x| x * &mult).collect();
        v.insert(n + jj, w);
    }
    let inv = gq_rat(qr(1, n as i64 - 1));
    let cn = gq_rat(qr(n as i64 + 1, n as i64 - 1));
    let v2n: Vec<GQ> = v[&n]
        .iter()
        .zip(&v[&0])
        .map(|(a, b)| a * &inv + b * &cn)
        .collect();
    v.insert(2 * n, v2n);
    for key in [0, 2 * l, 2 * n] {
        if v[&key].iter().all(Zero::is_zero) {
            return Err(WeierstrassError::InconsistentTargets(format!(
                "v_{key} vanishes"
            )));
        }
    }
    let provenance = Provenance {
        generator: "generate".into(),
        seed,
        tau: Some(tau.clone()),
        lambda_scale: Some(f),
        nullity: Some(t.nullity),
    };
    let mut w = WeierstrassData::from_vectors(n, dim, &v, provenance);
    w.k = Some(t.k);
    w.m = Some(t.m);
    Ok(w)
}

/// `generate(k, m)`: τ solve plus assembly, deterministic in `seed`.
pub fn generate(k: usize, m: usize, seed: u64) -> Result<WeierstrassData, WeierstrassError> {
    let t = solve_tau(k, m, None, seed)?;
    assemble_vectors(&t, Some(seed))
}
