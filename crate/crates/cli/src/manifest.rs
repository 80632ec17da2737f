//! The run manifest: every setting needed to reproduce a run, plus a short
//! summary of its result.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::args::{Centrality, Dissimilarity, Format};
use crate::error::Failure;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool_version: String,

    pub input: PathBuf,
    pub format: Format,
    pub largest_component: bool,
    pub centrality: Centrality,
    pub uniform_radius: Option<f64>,

    pub dissimilarity: Dissimilarity,
    pub p: usize,
    pub lambda: f64,
    pub epsilon: Option<f64>,
    pub max_iters: usize,
    pub seed: u64,
    pub delta_cache: Option<PathBuf>,

    pub out: PathBuf,
    pub no_edges: bool,
    pub guides: bool,
    pub record_timings: bool,

    /// Filled in after the run; ignored on replay.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<RunResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub nodes: usize,
    pub edges: usize,
    /// Commute-time distances carry the graph-volume factor.
    pub ectd_volume_scaled: bool,
    pub epsilon_used: f64,
    pub iterations: usize,
    pub termination: String,
    pub final_stress: f64,
    pub final_objective: f64,
}

impl RunManifest {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|source| Failure::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let m: RunManifest = serde_json::from_str(&text).map_err(|source| Failure::Manifest {
            path: path.to_path_buf(),
            source,
        })?;
        if m.schema_version != SCHEMA_VERSION {
            return Err(Failure::Usage(format!(
                "{}: unsupported manifest schema version {}",
                path.display(),
                m.schema_version
            )));
        }
        if m.tool_version != env!("CARGO_PKG_VERSION") {
            log::warn!(
                "manifest was written by radmds {}, this is {}; outputs may differ",
                m.tool_version,
                env!("CARGO_PKG_VERSION")
            );
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}
