mod adjoint;
mod export;
mod generate;
mod harmonic;
mod invariants;
mod twistor;
mod verify;

use std::path::Path;
use std::time::Instant;

use crational::C64;
use moebius::{ChartPoint, MoebiusFrame, SurfaceSource};
use rayon::prelude::*;

use crate::args::{Cli, Command};
use crate::report::ReportDocument;
use crate::surface::{write_atomic, Loaded};
use crate::CliError;

pub use self::adjoint::adjoint;
pub use self::export::{export, ExportResult};
pub use self::generate::generate;
pub use self::harmonic::harmonic;
pub use self::invariants::invariants;
pub use self::twistor::twistor;
pub use self::verify::verify;

/// What a command produced: terminal lines and the report, if any.
#[derive(Debug)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub report: Option<ReportDocument>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match &self.report {
            Some(r) if !r.passed() => 1,
            _ => 0,
        }
    }
}

fn finish(
    mut report: ReportDocument,
    started: Instant,
    timings: bool,
    path: Option<&Path>,
) -> Result<Outcome, CliError> {
    if timings {
        report.wall_time_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    if let Some(p) = path {
        write_atomic(p, report.to_json().as_bytes())?;
    }
    let mut lines: Vec<String> = report.checks.iter().map(|c| c.summary_line()).collect();
    lines.push(format!(
        "{} {}: {}",
        report.command,
        report.surface,
        if report.passed() { "pass" } else { "FAIL" }
    ));
    Ok(Outcome {
        lines,
        report: Some(report),
    })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let t = cli.timings;
    match &cli.command {
        Command::Generate(a) => {
            let doc = generate(a)?;
            write_atomic(&a.output, doc.to_json().as_bytes())?;
            Ok(Outcome {
                lines: vec![format!(
                    "wrote {} ({}, ambient dimension {})",
                    a.output.display(),
                    doc.provenance.generator,
                    doc.ambient_dim
                )],
                report: None,
            })
        }
        Command::Verify(a) => {
            let r = verify(&Loaded::read(&a.file)?)?;
            finish(r, started, t, a.report.report.as_deref())
        }
        Command::Invariants(a) => {
            let r = invariants(&Loaded::read(&a.file)?, a)?;
            finish(r, started, t, a.report.report.as_deref())
        }
        Command::Adjoint(a) => {
            let r = adjoint(&Loaded::read(&a.file)?, a)?;
            finish(r, started, t, a.report.report.as_deref())
        }
        Command::Harmonic(a) => {
            let r = harmonic(&Loaded::read(&a.file)?, a)?;
            finish(r, started, t, a.report.report.as_deref())
        }
        Command::Twistor(a) => {
            let r = twistor(&Loaded::read(&a.file)?, a)?;
            finish(r, started, t, a.report.report.as_deref())
        }
        Command::Export(a) => {
            let out = export(&Loaded::read(&a.file)?, a)?;
            write_atomic(&a.csv, out.csv.as_bytes())?;
            let mut o = finish(out.report, started, t, a.report.report.as_deref())?;
            o.lines.insert(
                0,
                format!(
                    "wrote {} ({} rows, {} masked in {} pole neighborhoods)",
                    a.csv.display(),
                    out.rows,
                    out.masked,
                    out.neighborhoods
                ),
            );
            Ok(o)
        }
    }
}

/// Frames at `points` in parallel, in input order.
fn frames_at(
    source: &dyn SurfaceSource,
    points: &[ChartPoint],
    order: usize,
) -> Vec<(ChartPoint, Result<MoebiusFrame, moebius::MoebiusError>)> {
    points
        .par_iter()
        .map(|&p| (p, MoebiusFrame::at_point(source, p, order)))
        .collect()
}

fn fmt_c(z: C64) -> String {
    format!("{}{:+}i", z.re, z.im)
}
