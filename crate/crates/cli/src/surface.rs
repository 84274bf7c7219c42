//! Reading documents into evaluable surfaces, and atomic file output.

use std::io::Write;
use std::path::Path;

use moebius::{ClosedForm, MinimalSurface, SurfaceSource};
use weierstrass::WeierstrassData;

use crate::document::{SurfaceDocument, SurfaceKind};
use crate::CliError;

/// A parsed document with its surface.
pub struct Loaded {
    pub doc: SurfaceDocument,
    /// Present for Weierstrass documents.
    pub datum: Option<WeierstrassData>,
    pub label: String,
}

impl Loaded {
    pub fn from_document(doc: SurfaceDocument) -> Result<Self, CliError> {
        doc.validate()?;
        let datum = match doc.kind {
            SurfaceKind::Weierstrass => Some(doc.to_weierstrass()?),
            SurfaceKind::ClosedForm => None,
        };
        let label = match (&doc.parameters.k, &doc.parameters.m) {
            (Some(k), Some(m)) => format!("{} k={k} m={m}", doc.provenance.generator),
            (None, Some(m)) => format!("{} m={m}", doc.provenance.generator),
            _ => doc.provenance.generator.clone(),
        };
        Ok(Loaded { doc, datum, label })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_document(SurfaceDocument::from_json(&text)?)
    }

    pub fn datum(&self, command: &str) -> Result<&WeierstrassData, CliError> {
        self.datum
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("{command} needs a weierstrass document")))
    }

    /// The surface `x = F + conj F` or the named closed form.
    pub fn source(&self) -> Result<Box<dyn SurfaceSource>, CliError> {
        if let Some(w) = &self.datum {
            return Ok(Box::new(MinimalSurface::from_weierstrass(w)?));
        }
        Ok(match self.doc.name.as_deref() {
            Some("plane") => Box::new(ClosedForm::plane()),
            Some("round-sphere") => Box::new(ClosedForm::round_sphere()),
            Some("cylinder") => Box::new(ClosedForm::cylinder()),
            Some("veronese") => Box::new(twistor::veronese()),
            other => return Err(CliError::Usage(format!("unknown surface {other:?}"))),
        })
    }

    pub fn minimal(&self, command: &str) -> Result<MinimalSurface, CliError> {
        Ok(MinimalSurface::from_weierstrass(self.datum(command)?)?)
    }
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
