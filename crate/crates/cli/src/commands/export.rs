use std::collections::BTreeSet;
use std::fmt::Write;

use crational::C64;
use moebius::{Chart, ChartPoint};
use weierstrass::integrate_primitive;

use crate::args::{ChartArg, ExportArgs};
use crate::report::{Check, ReportDocument, Tolerance, Witness};
use crate::surface::Loaded;
use crate::CliError;

#[derive(Debug)]
pub struct ExportResult {
    pub csv: String,
    pub rows: usize,
    pub masked: usize,
    /// Poles whose neighborhood masked at least one grid point.
    pub neighborhoods: usize,
    pub report: ReportDocument,
}

/// `N` evenly spaced values on `[−extent, extent]`.
fn axis(n: usize, extent: f64) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    (0..n)
        .map(|i| -extent + 2.0 * extent * i as f64 / (n - 1) as f64)
        .collect()
}

/// `x = F + conj F` (or the closed form) on an `N × N` chart grid, rows
/// ordered by `Im` then `Re`; points near a pole or failing to evaluate are
/// written as `nan`.
pub fn export(s: &Loaded, a: &ExportArgs) -> Result<ExportResult, CliError> {
    if a.grid == 0 {
        return Err(CliError::Usage("--grid must be positive".into()));
    }
    if !(a.extent > 0.0 && a.extent.is_finite()) || a.mask_radius.is_nan() || a.mask_radius < 0.0 {
        return Err(CliError::Usage(
            "--extent must be positive, --mask-radius non-negative".into(),
        ));
    }
    if let Some(w) = &s.datum {
        integrate_primitive(w)?;
    }
    let src = s.source()?;
    let chart = match a.chart {
        ChartArg::North => Chart::Z,
        ChartArg::South => Chart::W,
    };
    let ticks = axis(a.grid, a.extent);
    let step = if a.grid > 1 {
        ticks[1] - ticks[0]
    } else {
        a.extent
    };
    let radius = a.mask_radius.max(step);
    let poles: Vec<C64> = src
        .ends()
        .iter()
        .filter_map(|e| e.in_chart(chart))
        .collect();
    let dim = src.dim();
    let mut csv = String::from("z_re,z_im");
    for i in 1..=dim {
        write!(csv, ",x_{i}").expect("string write");
    }
    csv.push('\n');
    let mut masked = 0;
    let mut hit = BTreeSet::new();
    let mut failures: Vec<(ChartPoint, String)> = Vec::new();
    for &im in &ticks {
        for &re in &ticks {
            let z = C64::new(re, im);
            let p = ChartPoint { chart, at: z };
            let near = poles.iter().position(|q| (z - q).norm() < radius);
            let x = match near {
                Some(k) => {
                    hit.insert(k);
                    None
                }
                None => match src.x_jets(p, 0) {
                    Ok(x) => Some(x),
                    Err(e) => {
                        failures.push((p, e.to_string()));
                        None
                    }
                },
            };
            write!(csv, "{re},{im}").expect("string write");
            match x {
                Some(x) => {
                    for c in &x {
                        write!(csv, ",{}", c.value().re).expect("string write");
                    }
                }
                None => {
                    masked += 1;
                    for _ in 0..dim {
                        csv.push_str(",nan");
                    }
                }
            }
            csv.push('\n');
        }
    }
    let rows = a.grid * a.grid;
    let pass = failures.is_empty();
    let check = Check::verdict(
        "export",
        pass,
        Tolerance {
            value: Some(radius),
            scale: "mask radius around poles".into(),
        },
        failures.first().map(|(p, e)| Witness {
            note: Some(e.clone()),
            ..Witness::at(*p, f64::NAN)
        }),
    )
    .with_samples(rows - masked, masked)
    .with_value(serde_json::json!({
        "rows": rows,
        "masked": masked,
        "poleNeighborhoods": hit.len(),
        "chart": match chart { Chart::Z => "north", Chart::W => "south" },
    }));
    Ok(ExportResult {
        csv,
        rows,
        masked,
        neighborhoods: hit.len(),
        report: ReportDocument::new("export", s.label.clone(), vec![check]),
    })
}
