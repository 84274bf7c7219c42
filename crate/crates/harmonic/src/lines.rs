//! The isotropic line in a rank-2 bundle whose Gram determinant vanishes.

use crational::C64;
use minkowski::{conj_vec, norm, pair};

use crate::HarmonicError;

/// Which vector's self-pairing was inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `⟨X₂, X₂⟩ ≠ 0`: `X̃₁ = X₁ − (⟨X₁,X₂⟩/⟨X₂,X₂⟩) X₂`.
    SecondNondegenerate,
    /// `⟨X₁, X₁⟩ ≠ 0`: `X̃₁ = X₂ − (⟨X₁,X₂⟩/⟨X₁,X₁⟩) X₁`.
    FirstNondegenerate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineSplit {
    /// Isotropic generator `X̃₁`.
    pub line: Vec<C64>,
    /// `X̃₂ ⊥ {X̃₁, conj X̃₁}`.
    pub complement: Vec<C64>,
    pub branch: Branch,
}

fn axpy(a: C64, x: &[C64], y: &[C64]) -> Vec<C64> {
    x.iter().zip(y).map(|(xi, yi)| a * xi + yi).collect()
}

/// Split `span{X₁, X₂}` into its isotropic line and a complement.
/// Pairings are compared with `tol·|X₁|^p|X₂|^q` for the matching Euclidean
/// weights.
pub fn isotropic_line_extract(
    x1: &[C64],
    x2: &[C64],
    tol: f64,
) -> Result<LineSplit, HarmonicError> {
    let (n1, n2) = (norm(x1), norm(x2));
    let (a11, a12, a22) = (pair(x1, x1), pair(x1, x2), pair(x2, x2));
    let det = a12 * a12 - a11 * a22;
    if det.norm() > tol * (n1 * n2).powi(2) {
        return Err(HarmonicError::DeterminantCondition(det.norm()));
    }
    let (r1, r2) = (a11.norm() / (n1 * n1), a22.norm() / (n2 * n2));
    if r1.max(r2) <= tol {
        return Err(HarmonicError::TotallyIsotropicInput);
    }
    let (line, other, branch) = if r2 >= r1 {
        (axpy(-a12 / a22, x2, x1), x2, Branch::SecondNondegenerate)
    } else {
        (axpy(-a12 / a11, x1, x2), x1, Branch::FirstNondegenerate)
    };
    let lb = conj_vec(&line);
    let ll = pair(&line, &lb);
    if ll.norm() <= tol * norm(&line).powi(2) {
        return Err(HarmonicError::TotallyIsotropicInput);
    }
    let complement = axpy(-pair(other, &lb) / ll, &line, other);
    Ok(LineSplit {
        line,
        complement,
        branch,
    })
}
