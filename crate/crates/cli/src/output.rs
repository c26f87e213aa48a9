// Copyright 2026 The optqrc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Output directories: atomic file writes plus a run manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::config::Settings;
use crate::CliError;

pub const RUN_MANIFEST: &str = "run.json";

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub config: std::collections::BTreeMap<String, String>,
    pub config_hash: String,
    pub seed: Option<u64>,
    pub version: String,
    pub outputs: Vec<String>,
    pub status: String,
    pub wall_time_s: f64,
}

pub struct OutputDir {
    dir: PathBuf,
    written: Vec<String>,
    started: Instant,
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

impl OutputDir {
    pub fn create(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Config(format!("cannot create {}: {e}", dir.display())))?;
        Ok(OutputDir {
            dir: dir.to_path_buf(),
            written: Vec::new(),
            started: Instant::now(),
        })
    }

    pub fn path(&self) -> &Path {
        &self.dir
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        write_atomic(&self.dir.join(name), contents.as_bytes())
            .map_err(|e| CliError::Runtime(format!("writing {name}: {e}")))?;
        if !self.written.iter().any(|w| w == name) {
            self.written.push(name.to_string());
        }
        Ok(())
    }

    /// Writes `run.json`; called on success and on runtime failure alike.
    pub fn finish(self, settings: &Settings, seed: Option<u64>, ok: bool) -> Result<(), CliError> {
        let manifest = RunManifest {
            command: std::env::args().collect(),
            config: settings.resolved().clone(),
            config_hash: settings.hash(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: self.written.clone(),
            status: if ok { "ok" } else { "partial" }.to_string(),
            wall_time_s: self.started.elapsed().as_secs_f64(),
        };
        let mut text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        text.push('\n');
        write_atomic(&self.dir.join(RUN_MANIFEST), text.as_bytes())
            .map_err(|e| CliError::Runtime(format!("writing {RUN_MANIFEST}: {e}")))
    }
}
