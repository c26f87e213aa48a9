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
use serde::Serialize;

use optqrc::ising::{
    exact_evolution, gate_count, sample_ising, trotter_circuit, GateCount, DEFAULT_T, DEFAULT_TROTTER_STEPS,
    REFERENCE_GATES_H2O, REFERENCE_GATES_LIH,
};
use optqrc::CMatrix;

use super::{with_manifest, Common};
use crate::CliError;

#[derive(Args, Debug)]
pub struct IsingArgs {
    /// Qubits.
    #[arg(long)]
    pub n: Option<usize>,
    /// Trotter steps for the reported gate count.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Evolution time.
    #[arg(long)]
    pub time: Option<f64>,
    /// Largest step count of the doubling ladder in trotter_error.csv.
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct CountReport {
    n_qubits: usize,
    steps: usize,
    counts: GateCount,
    reference_gates_lih: usize,
    reference_gates_h2o: usize,
}

/// Largest singular value.
fn spectral_norm(m: CMatrix) -> f64 {
    m.singular_values().max()
}

pub fn run(args: IsingArgs) -> Result<(), CliError> {
    let mut s = args.common.settings()?;
    let seed = s.value("seed", args.common.seed, 0u64)?;
    let n = s.value("n", args.n, 4usize)?;
    let steps = s.value("steps", args.steps, DEFAULT_TROTTER_STEPS)?;
    let time = s.value("time", args.time, DEFAULT_T)?;
    let max_steps = s.value("max-steps", args.max_steps, 64usize)?;
    let out = args.common.finish(&mut s, "out/ising")?;
    if steps == 0 || max_steps == 0 {
        return Err(CliError::Config("step counts must be at least 1".into()));
    }
    let params = sample_ising(n, seed)
        .map_err(|e| CliError::Config(e.to_string()))?
        .with_time(time);

    with_manifest(out, &s, Some(seed), |out| {
        let mut json = params.to_json()?;
        json.push('\n');
        out.write("params.json", &json)?;

        let report = CountReport {
            n_qubits: n,
            steps,
            counts: gate_count(&trotter_circuit(&params, steps)?),
            reference_gates_lih: REFERENCE_GATES_LIH,
            reference_gates_h2o: REFERENCE_GATES_H2O,
        };
        let mut json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Runtime(e.to_string()))?;
        json.push('\n');
        out.write("gate_count.json", &json)?;

        let exact = exact_evolution(&params)?;
        let mut csv = String::from("steps,error\n");
        let mut m = 1;
        while m <= max_steps {
            let u = trotter_circuit(&params, m)?.unitary()?;
            let err = spectral_norm(u - &exact);
            let _ = writeln!(csv, "{m},{err}");
            eprintln!("m={m:>4}  error {err:.6e}");
            m *= 2;
        }
        out.write("trotter_error.csv", &csv)
    })
}
