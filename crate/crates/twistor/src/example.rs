//! The three-end totally isotropic datum in ℝ⁴ and the Veronese surface.

use crational::{Jet, C64};
use moebius::ClosedForm;
use num_traits::Zero;
use weierstrass::{
    isotropy_order, totally_isotropic_example, verify_conformal, verify_planar_ends, IsotropyOrder,
    WeierstrassData,
};

use crate::TwistorError;

/// Three planar ends at `{0, ±1}` with all `λ_{i,j} = 0`.
pub fn build_totally_isotropic_example() -> WeierstrassData {
    totally_isotropic_example()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TotallyIsotropicReport {
    pub conformal: bool,
    pub isotropy: IsotropyOrder,
    /// Every `λ_{i,j}` vanishes exactly.
    pub lambdas_vanish: bool,
    pub ends: Vec<C64>,
    pub planar_ends: usize,
}

impl TotallyIsotropicReport {
    pub fn of(w: &WeierstrassData) -> Result<Self, TwistorError> {
        Ok(TotallyIsotropicReport {
            conformal: verify_conformal(w).pass,
            isotropy: isotropy_order(w)?,
            lambdas_vanish: w.lambda_table().entries.values().all(Zero::is_zero),
            ends: w.end_points(),
            planar_ends: verify_planar_ends(w, 1e-9)?.planar_count(),
        })
    }

    pub fn pass(&self) -> bool {
        self.conformal
            && self.isotropy == IsotropyOrder::Total
            && self.lambdas_vanish
            && self.planar_ends == self.ends.len()
    }
}

/// Veronese surface `S² → S⁴`, stereographically projected to ℝ⁴ from
/// `−e₅` (never hit, so the image is compact and there are no ends).
pub fn veronese() -> ClosedForm {
    ClosedForm::new("veronese", 4, Vec::new(), |z| {
        let one = C64::new(1.0, 0.0);
        let q = (z * &z.conj()).re();
        let inv = q.add_const(one).recip()?;
        let u1 = (&z.re() * &inv).scale_re(2.0);
        let u2 = (&z.im() * &inv).scale_re(2.0);
        let u3 = &q.add_const(-one) * &inv;
        let r3 = 3f64.sqrt();
        let v5 = (&u3 * &u3).scale_re(1.5).add_const(C64::new(-0.5, 0.0));
        let den = v5.add_const(one).recip()?;
        let coords: Vec<Jet> = vec![
            (&u1 * &u2).scale_re(r3),
            (&u1 * &u3).scale_re(r3),
            (&u2 * &u3).scale_re(r3),
            (&(&u1 * &u1) - &(&u2 * &u2)).scale_re(r3 / 2.0),
        ];
        Ok(coords.iter().map(|c| c * &den).collect())
    })
}
