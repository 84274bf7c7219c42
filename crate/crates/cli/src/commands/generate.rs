use crate::args::{Example, GenerateArgs};
use crate::document::SurfaceDocument;
use crate::CliError;

pub fn generate(a: &GenerateArgs) -> Result<SurfaceDocument, CliError> {
    let Some(example) = a.example else {
        let (k, m) = match (a.k, a.m) {
            (Some(k), Some(m)) => (k, m),
            _ => return Err(CliError::Usage("generate needs --k and --m".into())),
        };
        return Ok(SurfaceDocument::from_weierstrass(&weierstrass::generate(
            k, m, a.seed,
        )?));
    };
    let size = |default: usize, min: usize| -> Result<usize, CliError> {
        let m = a.m.unwrap_or(default);
        if m < min {
            return Err(CliError::Usage(format!("--m must be at least {min}")));
        }
        Ok(m)
    };
    let w = match example {
        Example::Bryant => weierstrass::bryant_peng_xiao(size(4, 2)?),
        Example::R4 => weierstrass::r4_example(size(2, 1)?),
        Example::TotallyIsotropic => twistor::build_totally_isotropic_example(),
        Example::Plane => return Ok(SurfaceDocument::closed_form("plane", 3)),
        Example::RoundSphere => return Ok(SurfaceDocument::closed_form("round-sphere", 3)),
        Example::Cylinder => return Ok(SurfaceDocument::closed_form("cylinder", 3)),
        Example::Veronese => return Ok(SurfaceDocument::closed_form("veronese", 4)),
    };
    Ok(SurfaceDocument::from_weierstrass(&w))
}
