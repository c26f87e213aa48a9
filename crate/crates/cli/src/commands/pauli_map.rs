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
use optqrc::pauli_space::{centroid_distances, ensemble_cloud, haar_cloud, pca_project, CloudRow, DEFAULT_CLOUD_SIZE};

use super::{with_manifest, Common};
use crate::config::parse_list;
use crate::CliError;

#[derive(Args, Debug)]
pub struct PauliMapArgs {
    /// Comma-separated two-qubit families.
    #[arg(long)]
    pub families: Option<String>,
    /// Gate counts for G1, G2, G3 and MG.
    #[arg(long)]
    pub gates: Option<String>,
    /// Circuits per cloud (also the Haar sample count).
    #[arg(long)]
    pub circuits: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

fn label(rows: &[CloudRow]) -> String {
    match rows.first() {
        Some(r) if r.family == "haar" => "haar".to_string(),
        Some(r) => format!("{}-{}", r.family, r.n_gates),
        None => String::new(),
    }
}

pub fn run(args: PauliMapArgs) -> Result<(), CliError> {
    let mut s = args.common.settings()?;
    let seed = s.value("seed", args.common.seed, 0u64)?;
    let families = s.value("families", args.families, "G1,G2,G3,MG".to_string())?;
    let gates = s.value("gates", args.gates, "200".to_string())?;
    let circuits = s.value("circuits", args.circuits, DEFAULT_CLOUD_SIZE)?;
    let out = args.common.finish(&mut s, "out/pauli-map")?;

    let families: Vec<FamilyId> = parse_list("families", &families)?;
    let gates: Vec<usize> = parse_list("gates", &gates)?;
    if circuits < 3 {
        return Err(CliError::Config("`circuits` must be at least 3".into()));
    }
    let mut specs = Vec::new();
    for family in families {
        let counts: &[usize] = if family.is_diagonal() { &[0] } else { &gates };
        for &g in counts {
            let spec = SampleSpec::new(family, 2, g, seed);
            spec.validate().map_err(|e| CliError::Config(e.to_string()))?;
            specs.push(spec);
        }
    }

    with_manifest(out, &s, Some(seed), |out| {
        let mut clouds = Vec::new();
        for spec in &specs {
            clouds.push(ensemble_cloud(spec, circuits)?);
        }
        clouds.push(haar_cloud(circuits, seed)?);

        let mut csv = String::from("family,n_gates,seed");
        for i in 0..16 {
            let _ = write!(csv, ",c{i}_re,c{i}_im");
        }
        csv.push('\n');
        for row in clouds.iter().flatten() {
            let _ = write!(csv, "{},{},{}", row.family, row.n_gates, row.seed);
            for v in row.values {
                let _ = write!(csv, ",{v}");
            }
            csv.push('\n');
        }
        out.write("cloud.csv", &csv)?;

        // One PCA over every cloud so the maps share axes.
        let all: Vec<Vec<f64>> = clouds.iter().flatten().map(|r| r.values.to_vec()).collect();
        let projection = pca_project(&all, 2)?;
        let mut stats = String::from("source,rows,centroid_distance_mean,centroid_distance_std\n");
        let mut offset = 0;
        for cloud in &clouds {
            let name = label(cloud);
            let mut p = String::from("seed,x,y\n");
            for (i, row) in cloud.iter().enumerate() {
                let c = &projection.coords[offset + i];
                let _ = writeln!(p, "{},{},{}", row.seed, c[0], c[1]);
            }
            offset += cloud.len();
            out.write(&format!("projection_{name}.csv"), &p)?;

            let values: Vec<Vec<f64>> = cloud.iter().map(|r| r.values.to_vec()).collect();
            let d = centroid_distances(&values);
            let (mean, std, _) = optqrc::qrc::summarize(&d);
            let _ = writeln!(stats, "{name},{},{mean},{std}", cloud.len());
            eprintln!("{name:>8}  centroid distance {mean:.6} ± {std:.6}");
        }
        out.write("stats.csv", &stats)?;

        let mut pca = String::from("component,variance");
        for j in 0..projection.mean.len() {
            let _ = write!(pca, ",l{j}");
        }
        pca.push('\n');
        for (k, (axis, var)) in projection.axes.iter().zip(&projection.variances).enumerate() {
            let _ = write!(pca, "{},{var}", k + 1);
            for v in axis {
                let _ = write!(pca, ",{v}");
            }
            pca.push('\n');
        }
        out.write("pca.csv", &pca)
    })
}
