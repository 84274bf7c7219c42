//! The report file format: one entry per check with residual statistics,
//! the tolerance applied and a witness sample.

use crational::C64;
use moebius::{Chart, ChartPoint};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::document::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn of(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// `max`, `mean` and nearest-rank quantiles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stats {
    pub max: f64,
    pub mean: f64,
    pub p50: f64,
    pub p90: f64,
    pub p99: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q = |p: f64| v[((p * v.len() as f64).ceil() as usize).clamp(1, v.len()) - 1];
        Some(Stats {
            max: v[v.len() - 1],
            mean: v.iter().sum::<f64>() / v.len() as f64,
            p50: q(0.5),
            p90: q(0.9),
            p99: q(0.99),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerance {
    /// `None` for exact checks.
    pub value: Option<f64>,
    /// What the residual is measured against.
    pub scale: String,
}

impl Tolerance {
    pub fn exact() -> Self {
        Tolerance {
            value: None,
            scale: "exact".into(),
        }
    }

    pub fn below(value: f64, scale: &str) -> Self {
        Tolerance {
            value: Some(value),
            scale: scale.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Witness {
    /// `"z"` or `"w"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<String>,
    /// Sample point `[re, im]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<[f64; 2]>,
    /// Polynomial exponent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<usize>,
    /// Exact Gaussian rational `[re_num, re_den, im_num, im_den]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<[String; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    pub fn at(p: ChartPoint, value: f64) -> Self {
        Witness {
            chart: Some(
                match p.chart {
                    Chart::Z => "z",
                    Chart::W => "w",
                }
                .into(),
            ),
            at: Some([p.at.re, p.at.im]),
            value: Some(value),
            ..Witness::default()
        }
    }

    pub fn at_z(z: C64, value: f64) -> Self {
        Witness::at(ChartPoint::z(z), value)
    }

    pub fn note(text: impl Into<String>) -> Self {
        Witness {
            note: Some(text.into()),
            ..Witness::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Samples {
    pub used: usize,
    pub masked: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<Stats>,
    pub samples: Samples,
    pub tolerance: Tolerance,
    /// Reported quantity (order, rank set, integer, …).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl Check {
    /// Pass iff every residual is finite and strictly below `tol`; the
    /// largest one is the witness.
    pub fn residuals(
        name: &str,
        values: &[(ChartPoint, f64)],
        masked: usize,
        tol: Tolerance,
    ) -> Check {
        let limit = tol.value.unwrap_or(0.0);
        let worst = values
            .iter()
            .copied()
            .max_by(|a, b| nan_last(a.1).total_cmp(&nan_last(b.1)));
        let vs: Vec<f64> = values.iter().map(|v| v.1).collect();
        let pass = !values.is_empty() && vs.iter().all(|v| *v < limit);
        Check {
            name: name.into(),
            status: Status::of(pass),
            stats: Stats::of(&vs),
            samples: Samples {
                used: values.len(),
                masked,
            },
            tolerance: tol,
            value: None,
            witness: Some(
                worst.map_or_else(|| Witness::note("no samples"), |(p, v)| Witness::at(p, v)),
            ),
            wall_time_ms: None,
        }
    }

    /// A yes/no check; a failure needs a witness.
    pub fn verdict(name: &str, pass: bool, tol: Tolerance, witness: Option<Witness>) -> Check {
        let witness = match (pass, witness) {
            (false, None) => Some(Witness::note("check failed")),
            (_, w) => w,
        };
        Check {
            name: name.into(),
            status: Status::of(pass),
            stats: None,
            samples: Samples::default(),
            tolerance: tol,
            value: None,
            witness,
            wall_time_ms: None,
        }
    }

    pub fn with_value(mut self, v: impl Into<Value>) -> Self {
        self.value = Some(v.into());
        self
    }

    pub fn with_samples(mut self, used: usize, masked: usize) -> Self {
        self.samples = Samples { used, masked };
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One line for the terminal.
    pub fn summary_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let mut line = format!("{status} {}", self.name);
        if let Some(s) = &self.stats {
            line += &format!(" max={:.3e} mean={:.3e}", s.max, s.mean);
        }
        match self.tolerance.value {
            Some(t) => line += &format!(" tol={t:e} ({})", self.tolerance.scale),
            None => line += &format!(" tol={}", self.tolerance.scale),
        }
        if let Some(v) = &self.value {
            line += &format!(" value={v}");
        }
        if self.status == Status::Fail {
            if let Some(w) = &self.witness {
                line += &format!(" witness={}", serde_json::to_string(w).unwrap_or_default());
            }
        }
        line
    }
}

fn nan_last(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    /// Generator and parameters of the input surface.
    pub surface: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl ReportDocument {
    pub fn new(command: &str, surface: String, checks: Vec<Check>) -> Self {
        let status = Status::of(checks.iter().all(Check::passed));
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            surface,
            status,
            checks,
            wall_time_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
