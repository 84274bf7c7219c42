//! Genus-zero minimal surfaces `x = F + conj F` with Weierstrass datum
//! `x_z = P(z) / (z² (zⁿ − 1)²)`, all coefficients in ℚ(i).
//!
//! [`generate`] builds the k-isotropic family with `2m+2` embedded planar
//! ends in `ℝ^{6k+3}`; the `verify_*` functions and [`isotropy_order`]
//! check the defining identities exactly.

mod examples;
mod generate;
pub mod linalg;
mod verify;

use std::collections::BTreeMap;

use crational::{gq_int, CPoly, CrationalError, Factors, VRatFn, C64, GQ, Q};
use num_traits::Zero;
use thiserror::Error;

pub use examples::{bryant_peng_xiao, r4_example, r4_primitive, totally_isotropic_example};
pub use generate::{
    assemble_vectors, coefficient_tables, falling, generate, solve_tau, target_lambdas,
    CoefficientTables, TauVector,
};
pub use verify::{
    end_report, integrate_primitive, isotropy_order, isotropy_profile, verify_conformal,
    verify_planar_ends, ConformalReport, EndClass, EndEntry, EndReport, IsotropyOrder,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeierstrassError {
    #[error("parameter domain: need m ≥ 3k+1 (k={k}, m={m})")]
    ParameterDomain { k: usize, m: usize },
    #[error("the τ system has only the zero solution")]
    NoNontrivialSolution,
    #[error("inconsistent λ targets: {0}")]
    InconsistentTargets(String),
    #[error("not conformal: ⟨x_z,x_z⟩ has {0} nonzero coefficients")]
    NotConformal(usize),
    #[error("degenerate datum (constant map)")]
    Degenerate,
    #[error("nonzero residue in component {0}")]
    NonzeroResidue(usize),
    #[error(transparent)]
    Exact(#[from] CrationalError),
}

/// Where a datum came from.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Provenance {
    pub generator: String,
    pub seed: Option<u64>,
    /// τ₀..τ_{s+2} used by the generator.
    pub tau: Option<Vec<Q>>,
    /// Realized λ-table over target λ-table.
    pub lambda_scale: Option<Q>,
    /// Dimension of the τ nullspace.
    pub nullity: Option<usize>,
}

/// Exact Weierstrass datum `x_z = P(z)/(z²(zⁿ−1)²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassData {
    pub ambient_dim: usize,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub n: usize,
    /// One numerator polynomial per ambient coordinate.
    pub numerators: Vec<CPoly>,
    pub provenance: Provenance,
}

/// Symmetric table `λ_{j,l} = ⟨v_j, v_l⟩`, storing `j ≤ l` and only
/// nonzero entries.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LambdaTable {
    pub entries: BTreeMap<(usize, usize), GQ>,
}

impl LambdaTable {
    pub fn get(&self, j: usize, l: usize) -> GQ {
        let key = if j <= l { (j, l) } else { (l, j) };
        self.entries.get(&key).cloned().unwrap_or_else(GQ::zero)
    }
}

/// `zⁿ − 1`.
pub fn zn_minus_one(n: usize) -> CPoly {
    let mut c = vec![GQ::zero(); n + 1];
    c[0] = gq_int(-1, 0);
    c[n] = gq_int(1, 0);
    CPoly::from_coeffs(c)
}

/// Denominator factors `z² (zⁿ − 1)²`.
pub fn pole_factors(n: usize) -> Factors {
    vec![(CPoly::z(), 2), (zn_minus_one(n), 2)]
}

impl WeierstrassData {
    pub fn from_vectors(
        n: usize,
        ambient_dim: usize,
        vectors: &BTreeMap<usize, Vec<GQ>>,
        provenance: Provenance,
    ) -> Self {
        let deg = vectors.keys().copied().max().unwrap_or(0);
        let numerators = (0..ambient_dim)
            .map(|i| {
                let mut c = vec![GQ::zero(); deg + 1];
                for (&j, v) in vectors {
                    c[j] = v[i].clone();
                }
                CPoly::from_coeffs(c)
            })
            .collect();
        WeierstrassData {
            ambient_dim,
            k: None,
            m: None,
            n,
            numerators,
            provenance,
        }
    }

    /// `x_z` as a vector rational function.
    pub fn x_z(&self) -> VRatFn {
        VRatFn {
            nums: self.numerators.clone(),
            den: pole_factors(self.n),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.numerators
            .iter()
            .filter_map(CPoly::degree)
            .max()
            .unwrap_or(0)
    }

    /// Coefficient vector `v_j`.
    pub fn vector(&self, j: usize) -> Vec<GQ> {
        self.numerators.iter().map(|p| p.coeff(j)).collect()
    }

    /// Indices `j` with `v_j ≠ 0`.
    pub fn support(&self) -> Vec<usize> {
        (0..=self.max_degree())
            .filter(|&j| self.vector(j).iter().any(|c| !c.is_zero()))
            .collect()
    }

    pub fn lambda_table(&self) -> LambdaTable {
        let sup = self.support();
        let mut entries = BTreeMap::new();
        for (a, &j) in sup.iter().enumerate() {
            let vj = self.vector(j);
            for &l in &sup[a..] {
                let vl = self.vector(l);
                let s = vj
                    .iter()
                    .zip(&vl)
                    .fold(GQ::zero(), |acc, (x, y)| acc + x * y);
                if !s.is_zero() {
                    entries.insert((j, l), s);
                }
            }
        }
        LambdaTable { entries }
    }

    /// Finite candidate ends `{0, ε_1, …, ε_n}` with `ε_j = e^{2πij/n}`.
    pub fn end_points(&self) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0)];
        v.extend(
            (0..self.n).map(|j| {
                C64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / self.n as f64)
            }),
        );
        v
    }
}
