//! The surface file format.
//!
//! Rationals are written as decimal strings, Gaussian rationals as
//! `[re_num, re_den, im_num, im_den]`, so a document reproduces its datum
//! exactly.

use crational::{quad_from_strings, quad_to_strings, CPoly, GQ, Q};
use serde::{Deserialize, Serialize};
use weierstrass::{Provenance, WeierstrassData};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Closed-form surfaces a document may name.
pub const CLOSED_FORMS: [&str; 4] = ["plane", "round-sphere", "cylinder", "veronese"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceKind {
    Weierstrass,
    ClosedForm,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    pub k: Option<usize>,
    pub m: Option<usize>,
}

/// Denominator `z² (zⁿ − 1)²` of `x_z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleDescriptor {
    pub n: usize,
    pub denominator: String,
    /// Finite poles: `0` and the `n`-th roots of unity.
    pub count: usize,
}

impl PoleDescriptor {
    pub fn for_n(n: usize) -> Self {
        PoleDescriptor {
            n,
            denominator: format!("z^2 (z^{n} - 1)^2"),
            count: n + 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ProvenanceDoc {
    pub generator: String,
    pub seed: Option<u64>,
    /// `τ₀, …` as `[num, den]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_scale: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nullity: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SurfaceDocument {
    pub schema_version: u32,
    pub kind: SurfaceKind,
    pub ambient_dim: usize,
    pub parameters: Parameters,
    /// Closed-form surface name; absent for Weierstrass data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Per coordinate, coefficients of `z⁰, z¹, …` of the numerator of `x_z`.
    pub numerators: Vec<Vec<[String; 4]>>,
    pub poles: Option<PoleDescriptor>,
    pub provenance: ProvenanceDoc,
}

fn q_strings(q: &Q) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

fn q_parse(s: &[String; 2]) -> Result<Q, CliError> {
    let quad = [s[0].clone(), s[1].clone(), "0".into(), "1".into()];
    Ok(quad_from_strings(&quad)
        .map_err(|e| CliError::Usage(format!("bad rational {s:?}: {e}")))?
        .re)
}

fn gq_parse(s: &[String; 4]) -> Result<GQ, CliError> {
    quad_from_strings(s).map_err(|e| CliError::Usage(format!("bad coefficient {s:?}: {e}")))
}

impl SurfaceDocument {
    pub fn from_weierstrass(w: &WeierstrassData) -> Self {
        let p = &w.provenance;
        SurfaceDocument {
            schema_version: SCHEMA_VERSION,
            kind: SurfaceKind::Weierstrass,
            ambient_dim: w.ambient_dim,
            parameters: Parameters { k: w.k, m: w.m },
            name: None,
            numerators: w
                .numerators
                .iter()
                .map(|poly| poly.coeffs().iter().map(quad_to_strings).collect())
                .collect(),
            poles: Some(PoleDescriptor::for_n(w.n)),
            provenance: ProvenanceDoc {
                generator: p.generator.clone(),
                seed: p.seed,
                tau: p.tau.as_ref().map(|t| t.iter().map(q_strings).collect()),
                lambda_scale: p.lambda_scale.as_ref().map(q_strings),
                nullity: p.nullity,
            },
        }
    }

    pub fn closed_form(name: &str, ambient_dim: usize) -> Self {
        SurfaceDocument {
            schema_version: SCHEMA_VERSION,
            kind: SurfaceKind::ClosedForm,
            ambient_dim,
            parameters: Parameters::default(),
            name: Some(name.to_string()),
            numerators: Vec::new(),
            poles: None,
            provenance: ProvenanceDoc {
                generator: name.to_string(),
                ..ProvenanceDoc::default()
            },
        }
    }

    /// Structural checks beyond what serde enforces.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Usage(format!(
                "unsupported schemaVersion {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        match self.kind {
            SurfaceKind::Weierstrass => {
                let poles = self
                    .poles
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("weierstrass document without poles".into()))?;
                if *poles != PoleDescriptor::for_n(poles.n) || poles.n == 0 {
                    return Err(CliError::Usage(format!(
                        "unsupported pole descriptor {poles:?}"
                    )));
                }
                if self.numerators.len() != self.ambient_dim {
                    return Err(CliError::Usage(format!(
                        "{} numerators for ambientDim {}",
                        self.numerators.len(),
                        self.ambient_dim
                    )));
                }
                if self.name.is_some() {
                    return Err(CliError::Usage("weierstrass document with a name".into()));
                }
            }
            SurfaceKind::ClosedForm => {
                let name = self.name.as_deref().unwrap_or_default();
                if !CLOSED_FORMS.contains(&name) {
                    return Err(CliError::Usage(format!(
                        "unknown closed-form surface {name:?}"
                    )));
                }
                if !self.numerators.is_empty() || self.poles.is_some() {
                    return Err(CliError::Usage(
                        "closed-form document carries numerators or poles".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_weierstrass(&self) -> Result<WeierstrassData, CliError> {
        self.validate()?;
        let poles = match (&self.kind, &self.poles) {
            (SurfaceKind::Weierstrass, Some(p)) => p,
            _ => {
                return Err(CliError::Usage(format!(
                    "{:?} is not a Weierstrass datum",
                    self.name.as_deref().unwrap_or("document")
                )))
            }
        };
        let numerators = self
            .numerators
            .iter()
            .map(|cs| {
                cs.iter()
                    .map(gq_parse)
                    .collect::<Result<Vec<GQ>, CliError>>()
                    .map(CPoly::from_coeffs)
            })
            .collect::<Result<Vec<CPoly>, CliError>>()?;
        let p = &self.provenance;
        Ok(WeierstrassData {
            ambient_dim: self.ambient_dim,
            k: self.parameters.k,
            m: self.parameters.m,
            n: poles.n,
            numerators,
            provenance: Provenance {
                generator: p.generator.clone(),
                seed: p.seed,
                tau: p
                    .tau
                    .as_ref()
                    .map(|t| t.iter().map(q_parse).collect::<Result<Vec<Q>, CliError>>())
                    .transpose()?,
                lambda_scale: p.lambda_scale.as_ref().map(q_parse).transpose()?,
                nullity: p.nullity,
            },
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let d: SurfaceDocument = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("invalid surface document: {e}")))?;
        d.validate()?;
        Ok(d)
    }
}
