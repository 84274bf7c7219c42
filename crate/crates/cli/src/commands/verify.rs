use crational::{contour_residue, quad_to_strings, to_c64, CPoly};
use moebius::ChartPoint;
use weierstrass::{
    end_report, integrate_primitive, isotropy_order, IsotropyOrder, WeierstrassData,
};

use crate::report::{Check, ReportDocument, Tolerance, Witness};
use crate::surface::Loaded;
use crate::CliError;

/// Residue bound for the exact Laurent coefficients.
pub const RESIDUE_TOL: f64 = 1e-10;
/// Residue bound for the trapezoid contour integrals.
pub const CONTOUR_TOL: f64 = 1e-9;
const CONTOUR_NODES: usize = 512;

fn conformal(w: &WeierstrassData) -> Check {
    let sq = w
        .numerators
        .iter()
        .fold(CPoly::zero(), |acc, p| &acc + &(p * p));
    let offending = sq.support();
    let witness = offending.first().map(|&e| {
        let c = sq.coeff(e);
        Witness {
            coefficient: Some(e),
            value: Some(to_c64(&c).norm()),
            exact: Some(quad_to_strings(&c)),
            note: Some(format!(
                "⟨x_z,x_z⟩ numerator has {} nonzero coefficients",
                offending.len()
            )),
            ..Witness::default()
        }
    });
    Check::verdict(
        "conformal",
        offending.is_empty(),
        Tolerance::exact(),
        witness,
    )
    .with_value(offending.len())
}

fn isotropy(w: &WeierstrassData) -> Check {
    match isotropy_order(w) {
        Ok(order) => {
            let (pass, note) = match (order, w.k) {
                (IsotropyOrder::Finite(j), Some(k)) => (
                    j == k,
                    format!(
                        "expected strictly {k}-isotropic; derivative {} is the first non-isotropic one",
                        j + 2
                    ),
                ),
                (IsotropyOrder::Total, Some(k)) => {
                    (false, format!("expected strictly {k}-isotropic, got total"))
                }
                (_, None) => (true, String::new()),
            };
            Check::verdict(
                "isotropy-order",
                pass,
                Tolerance::exact(),
                (!pass).then(|| Witness::note(note)),
            )
            .with_value(order.to_string())
        }
        Err(e) => Check::verdict(
            "isotropy-order",
            false,
            Tolerance::exact(),
            Some(Witness::note(e.to_string())),
        ),
    }
}

fn primitive(w: &WeierstrassData) -> Check {
    let r = integrate_primitive(w);
    Check::verdict(
        "primitive",
        r.is_ok(),
        Tolerance::exact(),
        r.err().map(|e| Witness::note(e.to_string())),
    )
}

fn expected_ends(w: &WeierstrassData) -> usize {
    w.m.map_or(w.n + 1, |m| 2 * m + 2)
}

fn planar_ends(w: &WeierstrassData) -> Check {
    let tol = Tolerance::below(RESIDUE_TOL, "max |residue| over components");
    let report = match end_report(w, RESIDUE_TOL) {
        Ok(r) => r,
        Err(e) => {
            return Check::verdict(
                "planar-ends",
                false,
                tol,
                Some(Witness::note(e.to_string())),
            )
        }
    };
    let values: Vec<(ChartPoint, f64)> = report
        .ends
        .iter()
        .map(|e| (ChartPoint::z(e.location), e.residue))
        .collect();
    let mut check = Check::residuals("planar-ends", &values, 0, tol);
    let expected = expected_ends(w);
    let count = report.planar_count();
    let structural = report.all_planar() && count == expected;
    if !structural {
        check.status = crate::report::Status::Fail;
        check.witness = Some(
            match report
                .ends
                .iter()
                .find(|e| e.class != weierstrass::EndClass::PlanarEnd)
            {
                Some(e) => Witness {
                    note: Some(format!("{} (pole order {})", e.class, e.pole_order)),
                    ..Witness::at_z(e.location, e.residue)
                },
                None if !report.infinity_regular => Witness::note("∞ is not a regular point"),
                None => Witness::note(format!("{count} planar ends, expected {expected}")),
            },
        );
    }
    check.with_value(serde_json::json!({
        "planarEnds": count,
        "expected": expected,
        "infinityRegular": report.infinity_regular,
    }))
}

fn contour_residues(w: &WeierstrassData) -> Check {
    let f = w.x_z();
    let ends = w.end_points();
    let values: Vec<(ChartPoint, f64)> = ends
        .iter()
        .map(|&p| {
            let sep = ends
                .iter()
                .filter(|&&q| q != p)
                .map(|&q| (q - p).norm())
                .fold(f64::INFINITY, f64::min);
            let r = 0.25 * sep.min(1.0);
            let worst = (0..w.ambient_dim)
                .map(|i| contour_residue(|z| f.eval_c64(z)[i], p, r, CONTOUR_NODES).norm())
                .fold(0.0, f64::max);
            (ChartPoint::z(p), worst)
        })
        .collect();
    Check::residuals(
        "contour-residues",
        &values,
        0,
        Tolerance::below(CONTOUR_TOL, "max |(1/2πi)∮ x_z dz| over components"),
    )
}

pub fn verify(s: &Loaded) -> Result<ReportDocument, CliError> {
    let w = s.datum("verify")?;
    let checks = vec![
        conformal(w),
        isotropy(w),
        primitive(w),
        planar_ends(w),
        contour_residues(w),
    ];
    Ok(ReportDocument::new("verify", s.label.clone(), checks))
}
