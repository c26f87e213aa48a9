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

//! Parameterized datasets of ground states and excitation-energy targets.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::lowest_eigenpairs;
use crate::error::{Error, Result};
use crate::hamiltonian::{synthetic_family, HamiltonianFile, PauliSum};
use crate::state::State;

/// Ground states closer than this to the first excited level are excluded.
pub const DEGENERACY_TOL: f64 = 1e-9;
pub const MIN_GRID_POINTS: usize = 10;
pub const TEST_FRACTION_RANGE: (f64, f64) = (0.25, 0.35);

/// Supplies the Hamiltonian at a grid point.
pub trait HamiltonianSource: Sync {
    fn n_qubits(&self) -> usize;
    fn hamiltonian(&self, r: f64) -> Result<PauliSum>;
    fn describe(&self) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntheticSource {
    pub name: String,
    pub n_qubits: usize,
}

impl SyntheticSource {
    pub fn new(name: &str, n_qubits: usize) -> Result<Self> {
        synthetic_family(name, n_qubits, 1.0)?;
        Ok(SyntheticSource {
            name: name.to_string(),
            n_qubits,
        })
    }
}

impl HamiltonianSource for SyntheticSource {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn hamiltonian(&self, r: f64) -> Result<PauliSum> {
        synthetic_family(&self.name, self.n_qubits, r)
    }

    fn describe(&self) -> String {
        format!("synthetic:{}:{}", self.name, self.n_qubits)
    }
}

/// Hamiltonians loaded from files, looked up by their grid value.
#[derive(Clone, Debug, PartialEq)]
pub struct FileSource {
    pub label: String,
    n_qubits: usize,
    points: Vec<(f64, PauliSum)>,
}

impl FileSource {
    pub fn new(label: &str, points: Vec<(f64, PauliSum)>) -> Result<Self> {
        let n_qubits = points
            .first()
            .map(|(_, h)| h.n_qubits())
            .ok_or_else(|| Error::InvalidArgument("no Hamiltonian files".into()))?;
        if let Some((_, h)) = points.iter().find(|(_, h)| h.n_qubits() != n_qubits) {
            return Err(Error::LengthMismatch {
                expected: n_qubits,
                got: h.n_qubits(),
            });
        }
        Ok(FileSource {
            label: label.to_string(),
            n_qubits,
            points,
        })
    }

    pub fn points(&self) -> &[(f64, PauliSum)] {
        &self.points
    }
}

impl HamiltonianSource for FileSource {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn hamiltonian(&self, r: f64) -> Result<PauliSum> {
        self.points
            .iter()
            .find(|(p, _)| same_point(*p, r))
            .map(|(_, h)| h.clone())
            .ok_or_else(|| Error::InvalidArgument(format!("no Hamiltonian for R={r}")))
    }

    fn describe(&self) -> String {
        format!("files:{}", self.label)
    }
}

fn same_point(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DatasetRecord {
    pub r: f64,
    pub ground_state: State,
    /// E0 ≤ E1 ≤ E2.
    pub energies: [f64; 3],
    /// E_k − E0.
    pub target: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub source: String,
    pub n_qubits: usize,
    pub k: usize,
    pub records: Vec<DatasetRecord>,
    /// Grid points dropped for a degenerate ground state.
    pub excluded: Vec<f64>,
    /// Indices into `records`; everything is training data until split.
    pub split: Split,
    pub window: Option<(f64, f64)>,
}

impl Dataset {
    pub fn targets(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.target).collect()
    }
}

/// Makes the largest-magnitude amplitude real and positive. Ties go to the
/// lowest index.
pub fn fix_ground_phase(amps: &mut [Complex64]) {
    let mut best = 0;
    for (i, a) in amps.iter().enumerate() {
        if a.norm() > amps[best].norm() * (1.0 + 1e-12) {
            best = i;
        }
    }
    let pivot = amps[best];
    if pivot.norm() == 0.0 {
        return;
    }
    let rot = pivot.conj() / pivot.norm();
    for a in amps.iter_mut() {
        *a *= rot;
    }
}

enum PointOutcome {
    Record(DatasetRecord),
    Degenerate(f64),
}

fn build_point(source: &dyn HamiltonianSource, r: f64, k: usize) -> Result<PointOutcome> {
    let h = source.hamiltonian(r)?.matrix()?;
    let pairs = lowest_eigenpairs(&h, 3.min(h.nrows()))?;
    let e = &pairs.values;
    let energies = [e[0], e[1], *e.get(2).unwrap_or(&e[1])];
    if energies[1] - energies[0] < DEGENERACY_TOL {
        return Ok(PointOutcome::Degenerate(r));
    }
    let mut amps = pairs.vector(0);
    fix_ground_phase(&mut amps);
    Ok(PointOutcome::Record(DatasetRecord {
        r,
        ground_state: State::normalized(amps)?,
        energies,
        target: energies[k] - energies[0],
    }))
}

/// Diagonalizes every grid point in parallel; records keep grid order.
pub fn build_dataset(source: &dyn HamiltonianSource, grid: &[f64], k: usize) -> Result<Dataset> {
    if grid.len() < MIN_GRID_POINTS {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least {MIN_GRID_POINTS} points, got {}",
            grid.len()
        )));
    }
    if grid.iter().any(|r| !r.is_finite()) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "grid must be finite and strictly increasing".into(),
        ));
    }
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidArgument(format!("excited index must be 1 or 2, got {k}")));
    }
    let outcomes = grid
        .par_iter()
        .map(|&r| build_point(source, r, k))
        .collect::<Result<Vec<_>>>()?;
    let mut records = Vec::with_capacity(grid.len());
    let mut excluded = Vec::new();
    for outcome in outcomes {
        match outcome {
            PointOutcome::Record(rec) => records.push(rec),
            PointOutcome::Degenerate(r) => excluded.push(r),
        }
    }
    let train = (0..records.len()).collect();
    Ok(Dataset {
        source: source.describe(),
        n_qubits: source.n_qubits(),
        k,
        records,
        excluded,
        split: Split {
            train,
            test: Vec::new(),
        },
        window: None,
    })
}

/// Test set = records with R in `[lo, hi]`; the rest train.
pub fn split_dataset(mut d: Dataset, window: (f64, f64)) -> Result<Dataset> {
    let (lo, hi) = window;
    let (first, last) = match (d.records.first(), d.records.last()) {
        (Some(a), Some(b)) => (a.r, b.r),
        _ => return Err(Error::InvalidArgument("empty dataset".into())),
    };
    if !(lo <= hi) || lo < first || hi > last {
        return Err(Error::InvalidArgument(format!(
            "window [{lo}, {hi}] outside grid range [{first}, {last}]"
        )));
    }
    let (test, train): (Vec<usize>, Vec<usize>) =
        (0..d.records.len()).partition(|&i| (lo..=hi).contains(&d.records[i].r));
    let fraction = test.len() as f64 / d.records.len() as f64;
    if fraction < TEST_FRACTION_RANGE.0 || fraction > TEST_FRACTION_RANGE.1 {
        return Err(Error::SplitFraction {
            fraction,
            test: test.len(),
            total: d.records.len(),
        });
    }
    d.split = Split { train, test };
    d.window = Some(window);
    Ok(d)
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// `manifest.json` of a dataset archive. Unknown fields written by other
/// producers are kept and written back unchanged.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub n_qubits: usize,
    pub k: usize,
    pub grid: Vec<f64>,
    pub split_window: [f64; 2],
    pub files: Vec<String>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

pub const MANIFEST_FILE: &str = "manifest.json";

/// A directory holding a manifest plus one Hamiltonian file per grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct Archive {
    pub manifest: Manifest,
    pub source: FileSource,
}

impl Archive {
    pub fn load(dir: &Path) -> Result<Self> {
        let text = fs::read_to_string(dir.join(MANIFEST_FILE))?;
        let manifest: Manifest = serde_json::from_str(&text)?;
        if manifest.files.len() != manifest.grid.len() {
            return Err(Error::LengthMismatch {
                expected: manifest.grid.len(),
                got: manifest.files.len(),
            });
        }
        let mut points = Vec::with_capacity(manifest.files.len());
        for (file, &r) in manifest.files.iter().zip(&manifest.grid) {
            let parsed = HamiltonianFile::parse(&fs::read_to_string(dir.join(file))?)
                .map_err(|e| Error::InvalidSpec(format!("{file}: {e}")))?;
            if let Some(fr) = parsed.r {
                if !same_point(fr, r) {
                    return Err(Error::InvalidSpec(format!(
                        "{file} declares R={fr} but the manifest lists {r}"
                    )));
                }
            }
            if parsed.sum.n_qubits() != manifest.n_qubits {
                return Err(Error::InvalidSpec(format!(
                    "{file} has {} qubits, manifest declares {}",
                    parsed.sum.n_qubits(),
                    manifest.n_qubits
                )));
            }
            points.push((r, parsed.sum));
        }
        let source = FileSource::new(&manifest.name, points)?;
        Ok(Archive { manifest, source })
    }

    /// Writes `manifest.json` and the Hamiltonian files into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        for (file, (r, h)) in self.manifest.files.iter().zip(self.source.points()) {
            let text = HamiltonianFile {
                r: Some(*r),
                sum: h.clone(),
            }
            .format();
            fs::write(dir.join(file), text)?;
        }
        let mut json = serde_json::to_string_pretty(&self.manifest)?;
        json.push('\n');
        fs::write(dir.join(MANIFEST_FILE), json)?;
        Ok(())
    }

    /// Materializes a synthetic family on `grid` as an archive.
    pub fn synthetic(
        name: &str,
        family: &str,
        n_qubits: usize,
        grid: &[f64],
        window: (f64, f64),
        k: usize,
    ) -> Result<Self> {
        let points = grid
            .iter()
            .map(|&r| Ok((r, synthetic_family(family, n_qubits, r)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut extra = BTreeMap::new();
        extra.insert("family".to_string(), serde_json::Value::from(family));
        let manifest = Manifest {
            name: name.to_string(),
            n_qubits,
            k,
            grid: grid.to_vec(),
            split_window: [window.0, window.1],
            files: (0..grid.len()).map(|i| format!("point_{i:03}.txt")).collect(),
            extra,
        };
        Ok(Archive {
            manifest,
            source: FileSource::new(name, points)?,
        })
    }

    /// Diagonalizes every point and applies the manifest's split window.
    pub fn build(&self) -> Result<Dataset> {
        let d = build_dataset(&self.source, &self.manifest.grid, self.manifest.k)?;
        split_dataset(d, (self.manifest.split_window[0], self.manifest.split_window[1]))
    }
}

/// The bundled synthetic dataset: six-qubit `tfim-chain` on 100 points in
/// [0.2, 3.0], tested on [0.76, 1.6].
pub fn tfim6_archive() -> Result<Archive> {
    Archive::synthetic("tfim6", "tfim-chain", 6, &linspace(0.2, 3.0, 100), (0.76, 1.6), 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tfim(n: usize) -> SyntheticSource {
        SyntheticSource::new("tfim-chain", n).unwrap()
    }

    #[test]
    fn window_counts() {
        let grid = linspace(0.5, 3.5, 100);
        assert_eq!(grid.iter().filter(|r| (1.1..=2.0).contains(*r)).count(), 30);
        let grid = linspace(0.2, 3.0, 100);
        assert_eq!(grid.iter().filter(|r| (0.76..=1.6).contains(*r)).count(), 30);
        assert_eq!(grid[99], 3.0);
    }

    #[test]
    fn small_dataset_invariants() {
        let grid = linspace(0.2, 3.0, 12);
        let d = build_dataset(&tfim(3), &grid, 2).unwrap();
        assert_eq!(d.records.len(), 12);
        for rec in &d.records {
            let [e0, e1, e2] = rec.energies;
            assert!(e0 <= e1 && e1 <= e2);
            assert!((rec.target - (e2 - e0)).abs() < 1e-15);
            let h = synthetic_family("tfim-chain", 3, rec.r).unwrap();
            assert!((h.expectation(&rec.ground_state).unwrap() - e0).abs() < 1e-8);
            let amps = rec.ground_state.amplitudes();
            let top = amps.iter().map(|a| a.norm()).fold(0.0, f64::max);
            let pivot = amps.iter().find(|a| a.norm() >= top * (1.0 - 1e-12)).unwrap();
            assert!(pivot.im.abs() < 1e-12 && pivot.re > 0.0);
        }
    }

    #[test]
    fn degenerate_points_are_excluded() {
        let mut grid = vec![0.0];
        grid.extend(linspace(0.2, 2.0, 10));
        let d = build_dataset(&tfim(2), &grid, 1).unwrap();
        assert_eq!(d.excluded, vec![0.0]);
        assert_eq!(d.records.len(), 10);
    }

    #[test]
    fn grid_validation() {
        assert!(build_dataset(&tfim(2), &linspace(0.2, 1.0, 9), 1).is_err());
        let mut g = linspace(0.2, 1.0, 12);
        g.swap(3, 4);
        assert!(build_dataset(&tfim(2), &g, 1).is_err());
        assert!(build_dataset(&tfim(2), &linspace(0.2, 1.0, 12), 3).is_err());
    }

    #[test]
    fn split_partitions_and_checks_fraction() {
        let d = build_dataset(&tfim(2), &linspace(0.5, 3.5, 100), 1).unwrap();
        let s = split_dataset(d.clone(), (1.1, 2.0)).unwrap();
        assert_eq!(s.split.test.len(), 30);
        let mut all: Vec<usize> = s.split.train.iter().chain(&s.split.test).copied().collect();
        all.sort();
        assert_eq!(all, (0..100).collect::<Vec<_>>());
        assert!(matches!(
            split_dataset(d.clone(), (1.1, 1.5)),
            Err(Error::SplitFraction { .. })
        ));
        assert!(split_dataset(d, (0.1, 1.0)).is_err());
    }

    #[test]
    fn archive_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let grid = linspace(0.2, 3.0, 20);
        let mut archive = Archive::synthetic("t3", "tfim-chain", 3, &grid, (0.9, 1.7), 1).unwrap();
        archive
            .manifest
            .extra
            .insert("thresholds".into(), serde_json::json!([0.02, 1.98]));
        archive.write(dir.path()).unwrap();
        let loaded = Archive::load(dir.path()).unwrap();
        assert_eq!(loaded, archive);
        let d = loaded.build().unwrap();
        assert_eq!(d.records.len(), 20);
        assert_eq!(d.split.test.len(), 6);

        fs::write(dir.path().join("point_000.txt"), "# R= 9\n1 ZZZ\n").unwrap();
        assert!(Archive::load(dir.path()).is_err());
    }
}
