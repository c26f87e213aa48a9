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
use std::path::Path;

use clap::Args;
use serde::Serialize;

use optqrc::dataset::{tfim6_archive, Archive, Dataset};
use optqrc::families::FamilyId;
use optqrc::qrc::{run_experiment, ExperimentConfig, IsingMode, Reservoir, DEFAULT_ALPHA, DEFAULT_RESERVOIRS};

use super::{with_manifest, Common};
use crate::config::parse_list;
use crate::CliError;

#[derive(Args, Debug)]
pub struct QrcArgs {
    /// `tfim6` (built in) or a dataset archive directory.
    #[arg(long)]
    pub dataset: Option<String>,
    /// Comma-separated families; `ISING` adds the Ising reservoir, `all` selects everything.
    #[arg(long)]
    pub families: Option<String>,
    /// Gate counts for G1, G2, G3 and MG.
    #[arg(long)]
    pub gates: Option<String>,
    /// Reservoir realizations per cell.
    #[arg(long)]
    pub seeds: Option<usize>,
    /// Ridge regularization.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Ising evolution: `exact` or `trotter:<steps>`.
    #[arg(long)]
    pub ising: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct CellSummary {
    family: String,
    n_gates: String,
    n: usize,
    failures: usize,
    mean: f64,
    std: f64,
    stderr: f64,
}

fn parse_ising(text: &str) -> Result<IsingMode, CliError> {
    if text == "exact" {
        return Ok(IsingMode::Exact);
    }
    text.strip_prefix("trotter:")
        .and_then(|m| m.parse().ok())
        .filter(|&m| m > 0)
        .map(|steps| IsingMode::Trotter { steps })
        .ok_or_else(|| CliError::Config(format!("`ising` must be `exact` or `trotter:<steps>`, got `{text}`")))
}

fn reservoirs(families: &str, gates: &[usize], ising: IsingMode) -> Result<Vec<Reservoir>, CliError> {
    let names: Vec<String> = if families.eq_ignore_ascii_case("all") {
        FamilyId::ALL.iter().map(|f| f.to_string()).chain(["ISING".to_string()]).collect()
    } else {
        parse_list("families", families)?
    };
    let mut out = Vec::new();
    for name in names {
        if name.eq_ignore_ascii_case("ising") {
            out.push(Reservoir::Ising { mode: ising });
            continue;
        }
        let family: FamilyId = name
            .parse()
            .map_err(|_| CliError::Config(format!("unknown family `{name}`")))?;
        if family.is_diagonal() {
            out.push(Reservoir::Family { family, n_gates: 0 });
        } else {
            out.extend(gates.iter().map(|&n_gates| Reservoir::Family { family, n_gates }));
        }
    }
    Ok(out)
}

pub fn load_dataset(reference: &str) -> Result<(String, Dataset), CliError> {
    let path = Path::new(reference);
    let archive = if path.is_dir() {
        Archive::load(path).map_err(|e| CliError::Config(format!("{reference}: {e}")))?
    } else if reference == "tfim6" {
        tfim6_archive()?
    } else {
        return Err(CliError::Config(format!(
            "dataset `{reference}` is neither `tfim6` nor an archive directory"
        )));
    };
    let dataset = archive.build()?;
    Ok((archive.manifest.name.clone(), dataset))
}

pub fn run(args: QrcArgs) -> Result<(), CliError> {
    let mut s = args.common.settings()?;
    let seed = s.value("seed", args.common.seed, 0u64)?;
    let dataset_ref = s.value("dataset", args.dataset, "tfim6".to_string())?;
    let families = s.value("families", args.families, "all".to_string())?;
    let gates = s.value("gates", args.gates, "20,50,100,150,200".to_string())?;
    let seeds = s.value("seeds", args.seeds, DEFAULT_RESERVOIRS)?;
    let alpha = s.value("alpha", args.alpha, DEFAULT_ALPHA)?;
    let ising = s.value("ising", args.ising, "exact".to_string())?;
    let out = args.common.finish(&mut s, "out/qrc")?;

    let gates: Vec<usize> = parse_list("gates", &gates)?;
    let cells = reservoirs(&families, &gates, parse_ising(&ising)?)?;
    if seeds == 0 {
        return Err(CliError::Config("`seeds` must be at least 1".into()));
    }
    if !(alpha > 0.0) {
        return Err(CliError::Config("`alpha` must be positive".into()));
    }
    let (name, dataset) = load_dataset(&dataset_ref)?;

    with_manifest(out, &s, Some(seed), |out| {
        let mut summary = Vec::new();
        let mut failed = 0;
        let mut outcome = Ok(());
        for reservoir in cells {
            let family = reservoir.family_label();
            let gates = reservoir.gates_label(dataset.n_qubits);
            let config = ExperimentConfig {
                reservoir,
                n_reservoirs: seeds,
                base_seed: seed,
                alpha,
            };
            let result = match run_experiment(&dataset, &config) {
                Ok(r) => r,
                Err(e) => {
                    outcome = Err(CliError::Runtime(format!("{family} {gates}: {e}")));
                    break;
                }
            };
            out.write(&format!("{name}_{family}_{gates}.csv"), &result.to_csv())?;
            failed += result.failures();
            eprintln!("{family:>5} {gates:>6}  mean {:.6e}  stderr {:.2e}", result.mean, result.stderr);
            summary.push(CellSummary {
                family,
                n_gates: gates,
                n: result.n,
                failures: result.failures(),
                mean: result.mean,
                std: result.std,
                stderr: result.stderr,
            });
        }
        let mut csv = String::from("family,n_gates,n,failures,mean,std,stderr\n");
        for c in &summary {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{}",
                c.family, c.n_gates, c.n, c.failures, c.mean, c.std, c.stderr
            );
        }
        out.write("summary.csv", &csv)?;
        let mut json = serde_json::to_string_pretty(&summary).map_err(|e| CliError::Runtime(e.to_string()))?;
        json.push('\n');
        out.write("summary.json", &json)?;
        outcome?;
        if failed > 0 {
            return Err(CliError::Runtime(format!("{failed} reservoir seeds failed; see the per-cell CSVs")));
        }
        Ok(())
    })
}
