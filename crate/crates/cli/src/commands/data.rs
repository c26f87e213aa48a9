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

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Subcommand};

use optqrc::dataset::{linspace, Archive, MANIFEST_FILE};
use optqrc::hamiltonian::SYNTHETIC_FAMILIES;

use super::{with_manifest, Common};
use crate::config::parse_list;
use crate::CliError;

#[derive(Subcommand, Debug)]
pub enum DataCommand {
    /// Write a synthetic dataset archive.
    Gen(GenArgs),
    /// Summarize an archive: grid, gap curve, qubits and split sizes.
    Inspect(InspectArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Synthetic family name.
    pub family: String,
    /// Qubits.
    #[arg(long)]
    pub n: Option<usize>,
    /// Grid points.
    #[arg(long)]
    pub points: Option<usize>,
    /// Smallest grid value.
    #[arg(long)]
    pub lo: Option<f64>,
    /// Largest grid value.
    #[arg(long)]
    pub hi: Option<f64>,
    /// Test window `lo,hi`.
    #[arg(long)]
    pub window: Option<String>,
    /// Excited level used for the target gap.
    #[arg(long)]
    pub k: Option<usize>,
    /// Archive name; defaults to `<family>-<n>`.
    #[arg(long)]
    pub name: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct InspectArgs {
    /// Archive directory.
    pub dir: PathBuf,
}

pub fn run(cmd: DataCommand) -> Result<(), CliError> {
    match cmd {
        DataCommand::Gen(a) => generate(a),
        DataCommand::Inspect(a) => inspect(a),
    }
}

fn generate(args: GenArgs) -> Result<(), CliError> {
    if !SYNTHETIC_FAMILIES.contains(&args.family.as_str()) {
        return Err(CliError::Config(format!(
            "unknown synthetic family `{}`; known: {SYNTHETIC_FAMILIES:?}",
            args.family
        )));
    }
    let mut s = args.common.settings()?;
    let n = s.value("n", args.n, 6usize)?;
    let points = s.value("points", args.points, 100usize)?;
    let lo = s.value("lo", args.lo, 0.2)?;
    let hi = s.value("hi", args.hi, 3.0)?;
    let window = s.value("window", args.window, "0.76,1.6".to_string())?;
    let k = s.value("k", args.k, 1usize)?;
    let name = s.value("name", args.name, format!("{}-{n}", args.family))?;
    let default_out = format!("data/{name}");
    let out = args.common.finish(&mut s, &default_out)?;

    let w: Vec<f64> = parse_list("window", &window)?;
    if w.len() != 2 {
        return Err(CliError::Config("`window` must be `lo,hi`".into()));
    }
    let archive = Archive::synthetic(&name, &args.family, n, &linspace(lo, hi, points), (w[0], w[1]), k)
        .map_err(|e| CliError::Config(e.to_string()))?;
    // Building validates the grid, the gaps and the split before anything is written.
    let dataset = archive.build().map_err(|e| CliError::Config(e.to_string()))?;

    with_manifest(out, &s, None, |out| {
        archive.write(out.path())?;
        eprintln!(
            "{name}: {} records, {} test, {} excluded",
            dataset.records.len(),
            dataset.split.test.len(),
            dataset.excluded.len()
        );
        Ok(())
    })
}

fn inspect(args: InspectArgs) -> Result<(), CliError> {
    if !args.dir.join(MANIFEST_FILE).is_file() {
        return Err(CliError::Config(format!(
            "{} has no {MANIFEST_FILE}",
            args.dir.display()
        )));
    }
    let archive = Archive::load(&args.dir).map_err(|e| CliError::Config(e.to_string()))?;
    let d = archive.build()?;
    let m = &archive.manifest;
    let mut text = String::new();
    let _ = writeln!(text, "name: {}", m.name);
    let _ = writeln!(text, "qubits: {}", m.n_qubits);
    let _ = writeln!(text, "excited level: {}", m.k);
    let _ = writeln!(
        text,
        "grid: {} points on [{}, {}]",
        m.grid.len(),
        m.grid.first().copied().unwrap_or(f64::NAN),
        m.grid.last().copied().unwrap_or(f64::NAN)
    );
    let _ = writeln!(text, "test window: [{}, {}]", m.split_window[0], m.split_window[1]);
    let _ = writeln!(
        text,
        "records: {} ({} train, {} test, {} excluded)",
        d.records.len(),
        d.split.train.len(),
        d.split.test.len(),
        d.excluded.len()
    );
    let _ = writeln!(text, "R,E0,E1,E2,gap,split");
    for (i, r) in d.records.iter().enumerate() {
        let split = if d.split.test.contains(&i) { "test" } else { "train" };
        let _ = writeln!(
            text,
            "{},{},{},{},{},{split}",
            r.r, r.energies[0], r.energies[1], r.energies[2], r.target
        );
    }
    print!("{text}");
    Ok(())
}
