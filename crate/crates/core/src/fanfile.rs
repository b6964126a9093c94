//! JSON fan files: `{"rank", "rays", "maximal_cones", "name"?}`.
//!
//! Reading goes through serde; writing is done by hand so the output is
//! canonical (sorted primitive rays, sorted cones, fixed layout) and
//! byte-identical across runs.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::LatticeVector;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Vec<usize>>,
    #[serde(default)]
    pub name: Option<String>,
}

impl FanFile {
    pub fn parse(text: &str) -> Result<FanFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Validates the file contents as a fan.
    pub fn to_fan(&self) -> Result<Fan> {
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.rank {
                return Err(Error::Parse(format!(
                    "ray {i} has {} coordinates, expected rank {}",
                    r.len(),
                    self.rank
                )));
            }
        }
        Fan::new(
            self.rank,
            self.rays.iter().map(|r| LatticeVector::from_i64(r)).collect(),
            self.maximal_cones.clone(),
        )
    }
}

/// Parses and validates a fan file, returning the fan and its optional name.
pub fn read_fan(text: &str) -> Result<(Fan, Option<String>)> {
    let file = FanFile::parse(text)?;
    let fan = file.to_fan()?;
    Ok((fan, file.name))
}

/// Canonical fan-file text for `fan`.
pub fn write_fan(fan: &Fan, name: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"rank\": {},", fan.rank());
    let rays: Vec<String> = fan
        .skeleton()
        .iter()
        .map(|r| list(r.coords().iter()))
        .collect();
    let _ = writeln!(out, "  \"rays\": [{}],", rays.join(", "));
    let cones: Vec<String> = fan
        .maximal_cone_indices()
        .iter()
        .map(|c| list(c.iter()))
        .collect();
    let _ = write!(out, "  \"maximal_cones\": [{}]", cones.join(", "));
    if let Some(name) = name {
        let quoted = serde_json::to_string(name).expect("strings serialize");
        let _ = write!(out, ",\n  \"name\": {quoted}");
    }
    out.push_str("\n}\n");
    out
}

fn list<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    let parts: Vec<String> = items.map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
