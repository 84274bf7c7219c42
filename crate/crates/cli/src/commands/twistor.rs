use moebius::{sample_points, ChartPoint};
use twistor::{
    adapted_frame_field, j_holomorphic_check, normal_horizontal_check, transfer_bound,
    TotallyIsotropicReport, TwistorCase,
};
use weierstrass::IsotropyOrder;

use crate::args::TwistorArgs;
use crate::report::{Check, ReportDocument, Tolerance, Witness};
use crate::surface::Loaded;
use crate::CliError;

pub const FRAME_TOL: f64 = 1e-10;
pub const J_HOLOMORPHIC_TOL: f64 = 1e-6;
pub const NORMAL_HORIZONTAL_TOL: f64 = 1e-6;
const JET_ORDER: usize = 8;

fn exact_checks(r: &TotallyIsotropicReport) -> Vec<Check> {
    let total = r.isotropy == IsotropyOrder::Total;
    vec![
        Check::verdict("conformal", r.conformal, Tolerance::exact(), None),
        Check::verdict(
            "totally-isotropic",
            total,
            Tolerance::exact(),
            (!total).then(|| Witness::note(format!("isotropy order {}", r.isotropy))),
        )
        .with_value(r.isotropy.to_string()),
        Check::verdict(
            "planar-ends",
            r.planar_ends == r.ends.len(),
            Tolerance::below(1e-9, "max |residue| over components"),
            None,
        )
        .with_value(r.planar_ends),
    ]
}

pub fn twistor(s: &Loaded, a: &TwistorArgs) -> Result<ReportDocument, CliError> {
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let mut checks = match &s.datum {
        Some(w) => exact_checks(&TotallyIsotropicReport::of(w)?),
        None => Vec::new(),
    };
    let src = s.source()?;
    let points = sample_points(src.as_ref(), a.samples, a.seed);
    let field = adapted_frame_field(src.as_ref(), &points, JET_ORDER);
    let masked = field.masked.len();
    let frames = &field.frames;
    let defects: Vec<(ChartPoint, f64)> = frames
        .iter()
        .map(|f| (f.at, f.orthonormality_defect().max(f.isotropy_defect())))
        .collect();
    let mut frame_check = Check::residuals(
        "adapted-frames",
        &defects,
        masked,
        Tolerance::below(FRAME_TOL, "max |FᵀF − I|, |⟨E_j,E_l⟩|"),
    )
    .with_value(serde_json::json!({
        "detSigns": field.det_signs.iter().copied().collect::<Vec<i8>>(),
        "signFlips": field.sign_flips,
    }));
    if let Some((z, e)) = field.masked.first() {
        frame_check.status = crate::report::Status::Fail;
        frame_check.witness = Some(Witness {
            note: Some(e.to_string()),
            ..Witness::at_z(*z, f64::NAN)
        });
    }
    checks.push(frame_check);
    if frames.is_empty() {
        return Ok(ReportDocument::new("twistor", s.label.clone(), checks));
    }
    let total = j_holomorphic_check(frames);
    let case = total.verdict(f64::INFINITY);
    let per_frame: Vec<(ChartPoint, f64)> = frames
        .iter()
        .map(|f| {
            let r = j_holomorphic_check(std::slice::from_ref(f));
            let v = match case {
                Some(TwistorCase::AntiHolomorphic) => r.anti_holomorphic,
                _ => r.holomorphic,
            };
            (f.at, v)
        })
        .collect();
    let case_name = match case {
        Some(TwistorCase::AntiHolomorphic) => "anti-holomorphic",
        _ => "holomorphic",
    };
    checks.push(
        Check::residuals(
            "j-holomorphic",
            &per_frame,
            masked,
            Tolerance::below(
                J_HOLOMORPHIC_TOL,
                "distance of x_z, E_{j,z} from I, relative",
            ),
        )
        .with_value(serde_json::json!({
            "case": case_name,
            "holomorphic": total.holomorphic,
            "antiHolomorphic": total.anti_holomorphic,
        })),
    );
    let nh: Vec<(ChartPoint, f64)> = frames
        .iter()
        .map(|f| (f.at, normal_horizontal_check(std::slice::from_ref(f))))
        .collect();
    checks.push(Check::residuals(
        "normal-horizontal",
        &nh,
        masked,
        Tolerance::below(
            NORMAL_HORIZONTAL_TOL,
            "distance of E_{j,z̄} from I₂ ⊕ span{x_z, x_z̄}",
        ),
    ));
    let t = transfer_bound(frames, &total);
    checks.push(
        Check::verdict(
            "transfer-bound",
            t.holds,
            Tolerance {
                value: Some(t.constant),
                scale: format!("isotropy ≤ C·τ + {:e}", twistor::TRANSFER_FLOOR),
            },
            (!t.holds).then(|| Witness {
                value: Some(t.ratio),
                note: Some(format!("isotropy {:e} vs τ {:e}", t.isotropy, t.tau)),
                ..Witness::default()
            }),
        )
        .with_value(serde_json::json!({
            "tau": t.tau,
            "isotropy": t.isotropy,
            "ratio": t.ratio,
        }))
        .with_samples(frames.len(), masked),
    );
    Ok(ReportDocument::new("twistor", s.label.clone(), checks))
}
