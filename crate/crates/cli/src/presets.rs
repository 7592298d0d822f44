//! Shipped surface and cover presets, and the group catalog.

use mwbound::group::{group_preset_names, GroupSpec};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::CliError;

/// Preset names are stable identifiers.
pub const SURFACE_PRESETS: &[(&str, &str)] = &[
    ("cyclic3-inversion", include_str!("../presets/cyclic3-inversion.json")),
    ("generic-12I1", include_str!("../presets/generic-12I1.json")),
    ("hesse-trivialG", include_str!("../presets/hesse-trivialG.json")),
    ("unramified-z2-genus1", include_str!("../presets/unramified-z2-genus1.json")),
    ("z3-branched-hesse", include_str!("../presets/z3-branched-hesse.json")),
];

pub fn surface_preset(name: &str) -> Result<RunConfig, CliError> {
    let (_, text) = SURFACE_PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| CliError::Validation(format!("unknown preset {name:?}")))?;
    RunConfig::from_json(text).map_err(|e| CliError::Internal(format!("shipped preset {name:?} does not parse: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetEntry {
    pub name: String,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetCatalog {
    pub groups: Vec<PresetEntry>,
    pub surfaces: Vec<PresetEntry>,
}

fn group_description(name: &str) -> String {
    let words: Vec<&str> = name.split_whitespace().collect();
    match words.as_slice() {
        ["cyclic", _] => "cyclic group".into(),
        ["dihedral", n] => format!("dihedral group, symmetries of a {n}-gon"),
        ["symmetric", n] => format!("symmetric group on {n} letters"),
        ["quaternion", _] => "quaternion group".into(),
        ["elementary", "abelian", pk] => format!("elementary abelian group ({pk})"),
        _ => "group".into(),
    }
}

pub fn list_presets() -> Result<PresetCatalog, CliError> {
    let groups = group_preset_names()
        .into_iter()
        .map(|name| {
            let order = GroupSpec::parse(&name)?.build()?.order();
            Ok(PresetEntry { description: format!("{} (order {order})", group_description(&name)), name })
        })
        .collect::<Result<_, CliError>>()?;
    let surfaces = SURFACE_PRESETS
        .iter()
        .map(|(name, _)| {
            let cfg = surface_preset(name)?;
            Ok(PresetEntry { name: name.to_string(), description: cfg.description.unwrap_or_default() })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(PresetCatalog { groups, surfaces })
}
