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

pub mod data;
pub mod ising;
pub mod majorization;
pub mod pauli_map;
pub mod qrc;

use std::path::PathBuf;

use clap::Args;

use crate::config::Settings;
use crate::output::OutputDir;
use crate::CliError;

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Base seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Common {
    pub fn settings(&self) -> Result<Settings, CliError> {
        Settings::load(self.config.as_deref())
    }

    /// Resolves `jobs` and `out`, rejects unknown config keys, sizes the
    /// thread pool and creates the output directory.
    pub fn finish(&self, s: &mut Settings, default_out: &str) -> Result<OutputDir, CliError> {
        let jobs = s.value("jobs", self.jobs, 0usize)?;
        let out = s.value(
            "out",
            self.out.as_ref().map(|p| p.display().to_string()),
            default_out.to_string(),
        )?;
        s.check_unused()?;
        if jobs > 0 {
            // Fails only if a pool already exists, which is harmless.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
        }
        OutputDir::create(&PathBuf::from(out))
    }
}

/// Runs `body`; on a runtime error the manifest is still written with
/// status `partial` before the error is returned.
pub fn with_manifest<F>(mut out: OutputDir, s: &Settings, seed: Option<u64>, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut OutputDir) -> Result<(), CliError>,
{
    let result = body(&mut out);
    out.finish(s, seed, result.is_ok())?;
    result
}
