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

use clap::Args;

use optqrc::families::{FamilyId, SampleSpec};
use optqrc::majorization::{
    ensemble_fluctuations, haar_baseline, EnsembleOptions, FluctuationReport, Frame, InputState, ReportSource,
};

use super::{with_manifest, Common};
use crate::config::parse_list;
use crate::CliError;

#[derive(Args, Debug)]
pub struct MajorizationArgs {
    /// Qubits.
    #[arg(long)]
    pub n: Option<usize>,
    /// Circuits per ensemble (also the Haar sample count).
    #[arg(long)]
    pub circuits: Option<usize>,
    /// Comma-separated families or `all`.
    #[arg(long)]
    pub families: Option<String>,
    /// Gate counts for G1, G2 and G3.
    #[arg(long)]
    pub gates: Option<String>,
    /// Gate counts for MG.
    #[arg(long)]
    pub mg_gates: Option<String>,
    /// Reuse the base seed for every member (zero-spread sanity check).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub seed_pin: Option<bool>,
    /// Member input: `random-product` or `zero`.
    #[arg(long)]
    pub input: Option<String>,
    /// Readout basis: `auto`, `computational` or `hadamard`.
    #[arg(long)]
    pub frame: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

fn parse_input(text: &str) -> Result<InputState, CliError> {
    match text {
        "random-product" => Ok(InputState::RandomProduct),
        "zero" => Ok(InputState::Zero),
        _ => Err(CliError::Config(format!("`input` must be `random-product` or `zero`, got `{text}`"))),
    }
}

fn parse_frame(text: &str) -> Result<Frame, CliError> {
    match text {
        "auto" => Ok(Frame::Auto),
        "computational" => Ok(Frame::Computational),
        "hadamard" => Ok(Frame::Hadamard),
        _ => Err(CliError::Config(format!(
            "`frame` must be `auto`, `computational` or `hadamard`, got `{text}`"
        ))),
    }
}

fn parse_families(text: &str) -> Result<Vec<FamilyId>, CliError> {
    if text.eq_ignore_ascii_case("all") {
        Ok(FamilyId::ALL.to_vec())
    } else {
        parse_list("families", text)
    }
}

pub fn run(args: MajorizationArgs) -> Result<(), CliError> {
    let mut s = args.common.settings()?;
    let seed = s.value("seed", args.common.seed, 0u64)?;
    let n = s.value("n", args.n, 6usize)?;
    let circuits = s.value("circuits", args.circuits, 400usize)?;
    let families = s.value("families", args.families, "all".to_string())?;
    let gates = s.value("gates", args.gates, "200".to_string())?;
    let mg_gates = s.value("mg-gates", args.mg_gates, "20".to_string())?;
    let pin = s.value("seed-pin", args.seed_pin, false)?;
    let input = s.value("input", args.input, "random-product".to_string())?;
    let frame = s.value("frame", args.frame, "auto".to_string())?;
    let out = args.common.finish(&mut s, "out/majorization")?;

    let families = parse_families(&families)?;
    let gates: Vec<usize> = parse_list("gates", &gates)?;
    let mg_gates: Vec<usize> = parse_list("mg-gates", &mg_gates)?;
    let options = EnsembleOptions {
        input: parse_input(&input)?,
        frame: parse_frame(&frame)?,
        pin_seed: pin,
    };
    if circuits < 2 {
        return Err(CliError::Config("`circuits` must be at least 2".into()));
    }
    let mut specs = Vec::new();
    for family in families {
        let counts: &[usize] = match family {
            FamilyId::MG => &mg_gates,
            f if f.is_diagonal() => &[0],
            _ => &gates,
        };
        for &g in counts {
            let spec = SampleSpec::new(family, n, g, seed);
            spec.validate().map_err(|e| CliError::Config(e.to_string()))?;
            specs.push(spec);
        }
    }

    with_manifest(out, &s, Some(seed), |out| {
        let mut reports: Vec<FluctuationReport> = Vec::new();
        for spec in &specs {
            let report = ensemble_fluctuations(spec, circuits, &options)?;
            out.write(&format!("majorization_{}.csv", report.source.label()), &report.to_csv())?;
            eprintln!(
                "{:>8}  summary {:.6}  stderr {:.6}",
                report.source.label(),
                report.summary,
                report.summary_stderr
            );
            reports.push(report);
        }
        let haar = haar_baseline(n, circuits, seed)?;
        out.write("majorization_haar.csv", &haar.to_csv())?;
        eprintln!("{:>8}  summary {:.6}  stderr {:.6}", "haar", haar.summary, haar.summary_stderr);
        reports.push(haar);

        let mut order: Vec<usize> = (0..reports.len()).collect();
        order.sort_by(|&a, &b| {
            reports[a]
                .summary
                .total_cmp(&reports[b].summary)
                .then_with(|| reports[a].source.label().cmp(&reports[b].source.label()))
        });
        let mut csv = String::from("rank,source,n_qubits,n_gates,circuits,summary,stderr\n");
        for (rank, &i) in order.iter().enumerate() {
            let r = &reports[i];
            let gates = match &r.source {
                ReportSource::Family(spec) => spec.effective_gates().to_string(),
                ReportSource::Haar { .. } => String::new(),
            };
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{}",
                rank + 1,
                r.source.label(),
                n,
                gates,
                r.n_circuits,
                r.summary,
                r.summary_stderr
            );
        }
        out.write("ranking.csv", &csv)
    })
}
