use crate::profile::{gaussian_profile, piecewise_profile, torus2_profile, BaseProfile};
use crate::{ProfileError, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// On-disk profile description.
///
/// ```json
/// { "name": "tent", "kind": "piecewise",
///   "breakpoints": [[0.0, 0.0], [0.5, 1.0], [1.0, 0.0]] }
/// ```
///
/// `kind` is one of `"torus2"`, `"gaussian"`, `"piecewise"`; breakpoints are
/// only consulted for piecewise profiles.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileDefinition {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub breakpoints: Vec<[f64; 2]>,
}

/// Instantiates a profile from a parsed definition, validating piecewise data.
pub fn profile_from_definition(def: &ProfileDefinition) -> Result<BaseProfile> {
    match def.kind.as_str() {
        "torus2" => Ok(torus2_profile()),
        "gaussian" => Ok(gaussian_profile()),
        "piecewise" => {
            let pts: Vec<(f64, f64)> = def.breakpoints.iter().map(|b| (b[0], b[1])).collect();
            piecewise_profile(&def.name, &pts)
        }
        other => Err(ProfileError::InvalidDefinition {
            reason: format!("unknown profile kind `{other}`"),
        }),
    }
}

/// Reads and instantiates a profile definition from a JSON file.
pub fn load_profile(path: impl AsRef<Path>) -> Result<BaseProfile> {
    let text = std::fs::read_to_string(path)?;
    let def: ProfileDefinition = serde_json::from_str(&text)?;
    profile_from_definition(&def)
}
