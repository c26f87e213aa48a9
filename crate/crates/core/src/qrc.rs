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

//! Reservoir features, ridge readout and the seeded experiment loop.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::families::{sample_circuit, FamilyId, SampleSpec};
use crate::ising::{exact_evolution, sample_ising, trotter_circuit};
use crate::pauli::{Pauli, PauliString};
use crate::state::State;
use crate::CMatrix;

pub const DEFAULT_ALPHA: f64 = 1e-7;
pub const DEFAULT_RESERVOIRS: usize = 400;

/// ⟨X_q⟩, ⟨Y_q⟩, ⟨Z_q⟩ for q = 0..n, in that order.
pub fn local_pauli_features(state: &State) -> Vec<f64> {
    let n = state.n_qubits();
    let mut out = Vec::with_capacity(3 * n);
    for q in 0..n {
        for op in [Pauli::X, Pauli::Y, Pauli::Z] {
            let p = PauliString::single(n, q, op);
            out.push(state.expectation(&p).expect("string matches the state"));
        }
    }
    out
}

/// Runs `circuit` on the ground state and reads out the local Paulis.
pub fn extract_features(circuit: &Circuit, ground_state: &State) -> Result<Vec<f64>> {
    Ok(local_pauli_features(&circuit.apply_to(ground_state)?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RidgeModel {
    pub weights: Vec<f64>,
    pub intercept: f64,
    pub alpha: f64,
}

impl RidgeModel {
    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.weights.len() {
            return Err(Error::LengthMismatch {
                expected: self.weights.len(),
                got: x.len(),
            });
        }
        Ok(self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.intercept)
    }
}

pub fn predict(model: &RidgeModel, x: &[f64]) -> Result<f64> {
    model.predict(x)
}

/// (1/N) Σ (w·x_i + b − y_i)² + α‖w‖².
pub fn ridge_objective(weights: &[f64], intercept: f64, x: &[Vec<f64>], y: &[f64], alpha: f64) -> f64 {
    let n = y.len() as f64;
    let sq: f64 = x
        .iter()
        .zip(y)
        .map(|(row, yi)| {
            let p: f64 = row.iter().zip(weights).map(|(a, w)| a * w).sum::<f64>() + intercept;
            (p - yi).powi(2)
        })
        .sum();
    sq / n + alpha * weights.iter().map(|w| w * w).sum::<f64>()
}

/// Minimizes `ridge_objective` with an unpenalized intercept.
///
/// Centering the features and targets removes the intercept, leaving
/// (XcᵀXc + αN I) w = Xcᵀ yc, solved by Cholesky.
pub fn fit_ridge(x: &[Vec<f64>], y: &[f64], alpha: f64) -> Result<RidgeModel> {
    let n = y.len();
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("ridge needs at least 2 samples, got {n}")));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    let d = x[0].len();
    if let Some(row) = x.iter().find(|r| r.len() != d) {
        return Err(Error::LengthMismatch {
            expected: d,
            got: row.len(),
        });
    }
    let nf = n as f64;
    let xm = DMatrix::from_fn(n, d, |i, j| x[i][j]);
    let means: Vec<f64> = (0..d).map(|j| xm.column(j).sum() / nf).collect();
    let y_mean = y.iter().sum::<f64>() / nf;
    let xc = DMatrix::from_fn(n, d, |i, j| x[i][j] - means[j]);
    let yc = DVector::from_iterator(n, y.iter().map(|v| v - y_mean));

    let mut a = xc.transpose() * &xc;
    for i in 0..d {
        a[(i, i)] += alpha * nf;
    }
    let rhs = xc.transpose() * yc;
    let w = a
        .cholesky()
        .ok_or_else(|| Error::InvalidArgument("ridge system is not positive definite".into()))?
        .solve(&rhs);
    let weights: Vec<f64> = w.iter().copied().collect();
    if weights.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("ridge weights are not finite".into()));
    }
    let intercept = y_mean - weights.iter().zip(&means).map(|(w, m)| w * m).sum::<f64>();
    Ok(RidgeModel {
        weights,
        intercept,
        alpha,
    })
}

pub fn mean_squared_error(predicted: &[f64], actual: &[f64]) -> f64 {
    predicted
        .iter()
        .zip(actual)
        .map(|(p, a)| (p - a).powi(2))
        .sum::<f64>()
        / actual.len() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsingMode {
    Exact,
    Trotter { steps: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reservoir {
    Family { family: FamilyId, n_gates: usize },
    Ising { mode: IsingMode },
    /// No reservoir: features are read straight off the ground state.
    Identity,
}

impl Reservoir {
    /// Family name as used in file names and tables.
    pub fn family_label(&self) -> String {
        match self {
            Reservoir::Family { family, .. } => family.to_string(),
            Reservoir::Ising { .. } => "ISING".to_string(),
            Reservoir::Identity => "IDENTITY".to_string(),
        }
    }

    /// Gate-count column: the effective count for families, the evolution
    /// mode for Ising.
    pub fn gates_label(&self, n_qubits: usize) -> String {
        match self {
            Reservoir::Family { family, n_gates } => {
                SampleSpec::new(*family, n_qubits, *n_gates, 0).effective_gates().to_string()
            }
            Reservoir::Ising { mode: IsingMode::Exact } => "exact".to_string(),
            Reservoir::Ising {
                mode: IsingMode::Trotter { steps },
            } => format!("trotter{steps}"),
            Reservoir::Identity => "0".to_string(),
        }
    }
}

/// A reservoir realized for one seed.
enum Instance {
    Circuit(Circuit),
    Unitary(CMatrix),
    Identity,
}

impl Instance {
    fn new(reservoir: &Reservoir, n_qubits: usize, seed: u64) -> Result<Self> {
        Ok(match reservoir {
            Reservoir::Family { family, n_gates } => {
                Instance::Circuit(sample_circuit(&SampleSpec::new(*family, n_qubits, *n_gates, seed))?)
            }
            Reservoir::Ising { mode } => {
                let params = sample_ising(n_qubits, seed)?;
                match mode {
                    IsingMode::Exact => Instance::Unitary(exact_evolution(&params)?),
                    IsingMode::Trotter { steps } => Instance::Circuit(trotter_circuit(&params, *steps)?),
                }
            }
            Reservoir::Identity => Instance::Identity,
        })
    }

    fn features(&self, ground: &State) -> Result<Vec<f64>> {
        Ok(match self {
            Instance::Circuit(c) => extract_features(c, ground)?,
            Instance::Unitary(u) => local_pauli_features(&ground.apply_matrix(u)?),
            Instance::Identity => local_pauli_features(ground),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub reservoir: Reservoir,
    pub n_reservoirs: usize,
    pub base_seed: u64,
    pub alpha: f64,
}

impl ExperimentConfig {
    pub fn new(reservoir: Reservoir, n_reservoirs: usize, base_seed: u64) -> Self {
        ExperimentConfig {
            reservoir,
            n_reservoirs,
            base_seed,
            alpha: DEFAULT_ALPHA,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedOutcome {
    pub seed: u64,
    pub mse: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub dataset: String,
    pub n_qubits: usize,
    pub k: usize,
    pub outcomes: Vec<SeedOutcome>,
    /// Statistics over the seeds that succeeded.
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub stderr: f64,
}

impl ExperimentResult {
    pub fn per_seed_mse(&self) -> Vec<f64> {
        self.outcomes.iter().filter_map(|o| o.mse).collect()
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| o.mse.is_none()).count()
    }

    /// `family,n_gates,seed,mse` rows; a failed seed leaves `mse` empty.
    pub fn to_csv(&self) -> String {
        let family = self.config.reservoir.family_label();
        let gates = self.config.reservoir.gates_label(self.n_qubits);
        let mut out = String::from("family,n_gates,seed,mse\n");
        for o in &self.outcomes {
            let mse = o.mse.map(|m| m.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{family},{gates},{},{mse}", o.seed);
        }
        out
    }
}

/// Test-set MSE of one reservoir realization.
pub fn run_seed(dataset: &Dataset, reservoir: &Reservoir, seed: u64, alpha: f64) -> Result<f64> {
    let instance = Instance::new(reservoir, dataset.n_qubits, seed)?;
    let features = dataset
        .records
        .iter()
        .map(|r| instance.features(&r.ground_state))
        .collect::<Result<Vec<_>>>()?;
    let pick = |idx: &[usize]| -> (Vec<Vec<f64>>, Vec<f64>) {
        idx.iter()
            .map(|&i| (features[i].clone(), dataset.records[i].target))
            .unzip()
    };
    let (x_train, y_train) = pick(&dataset.split.train);
    let (x_test, y_test) = pick(&dataset.split.test);
    let model = fit_ridge(&x_train, &y_train, alpha)?;
    let predicted = x_test
        .iter()
        .map(|x| model.predict(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(mean_squared_error(&predicted, &y_test))
}

/// Seeds `base_seed + i` for `i < n_reservoirs`, run in parallel and
/// reported in seed order. Seeds that fail are kept with their error.
pub fn run_experiment(dataset: &Dataset, config: &ExperimentConfig) -> Result<ExperimentResult> {
    if config.n_reservoirs == 0 {
        return Err(Error::InvalidArgument("n_reservoirs must be at least 1".into()));
    }
    if dataset.split.test.is_empty() || dataset.split.train.len() < 2 {
        return Err(Error::InvalidArgument("dataset has no train/test split".into()));
    }
    let outcomes: Vec<SeedOutcome> = (0..config.n_reservoirs as u64)
        .into_par_iter()
        .map(|i| {
            let seed = config.base_seed.wrapping_add(i);
            match run_seed(dataset, &config.reservoir, seed, config.alpha) {
                Ok(mse) => SeedOutcome {
                    seed,
                    mse: Some(mse),
                    error: None,
                },
                Err(e) => SeedOutcome {
                    seed,
                    mse: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let values: Vec<f64> = outcomes.iter().filter_map(|o| o.mse).collect();
    let (mean, std, stderr) = summarize(&values);
    Ok(ExperimentResult {
        config: config.clone(),
        dataset: dataset.source.clone(),
        n_qubits: dataset.n_qubits,
        k: dataset.k,
        outcomes,
        n: values.len(),
        mean,
        std,
        stderr,
    })
}

/// Mean, sample standard deviation and standard error; NaN where undefined.
pub fn summarize(values: &[f64]) -> (f64, f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, f64::NAN, f64::NAN);
    }
    let std = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    (mean, std, std / n.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{build_dataset, linspace, split_dataset, SyntheticSource};
    use crate::gate::Gate;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn feature_examples() {
        let zero = State::zero(2).unwrap();
        assert_eq!(extract_features(&Circuit::new(2), &zero).unwrap(), vec![0., 0., 1., 0., 0., 1.]);
        let h0 = Circuit::from_gates(2, vec![Gate::h(0)]).unwrap();
        let f = extract_features(&h0, &zero).unwrap();
        let expect = [1., 0., 0., 0., 0., 1.];
        assert!(f.iter().zip(expect).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn ridge_recovers_linear_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let w = [0.5, -1.25, 2.0];
        let x: Vec<Vec<f64>> = (0..30)
            .map(|_| (0..3).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let y: Vec<f64> = x.iter().map(|r| r.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() + 3.0).collect();
        let m = fit_ridge(&x, &y, 1e-12).unwrap();
        for (a, b) in m.weights.iter().zip(&w) {
            assert!((a - b).abs() < 1e-6);
        }
        assert!((m.intercept - 3.0).abs() < 1e-6);
        for (r, t) in x.iter().zip(&y) {
            assert!((m.predict(r).unwrap() - t).abs() < 1e-6);
        }
    }

    #[test]
    fn ridge_on_zero_design() {
        let x = vec![vec![0.0; 4]; 5];
        let y = [1.0, 2.0, 3.0, 4.0, 5.0];
        let m = fit_ridge(&x, &y, 1e-7).unwrap();
        assert!(m.weights.iter().all(|w| *w == 0.0));
        assert!((m.intercept - 3.0).abs() < 1e-15);
    }

    #[test]
    fn ridge_rejects_bad_input() {
        assert!(fit_ridge(&[vec![1.0]], &[1.0], 1e-7).is_err());
        assert!(fit_ridge(&[vec![1.0], vec![2.0]], &[1.0, 2.0], 0.0).is_err());
        assert!(fit_ridge(&[vec![1.0], vec![2.0, 3.0]], &[1.0, 2.0], 1e-7).is_err());
        let m = RidgeModel {
            weights: vec![0.0; 2],
            intercept: 4.0,
            alpha: 1e-7,
        };
        assert_eq!(m.predict(&[9.0, -9.0]).unwrap(), 4.0);
        assert!(m.predict(&[1.0]).is_err());
    }

    #[test]
    fn predict_matches_dot_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = RidgeModel {
            weights: (0..6).map(|_| rng.random_range(-2.0..2.0)).collect(),
            intercept: 0.3,
            alpha: 1e-7,
        };
        for _ in 0..10 {
            let x: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mut manual = 0.3;
            for i in 0..6 {
                manual += m.weights[i] * x[i];
            }
            assert!((m.predict(&x).unwrap() - manual).abs() < 1e-14);
        }
    }

    fn small_dataset() -> Dataset {
        let src = SyntheticSource::new("tfim-chain", 3).unwrap();
        let d = build_dataset(&src, &linspace(0.2, 3.0, 20), 1).unwrap();
        split_dataset(d, (0.9, 1.7)).unwrap()
    }

    #[test]
    fn identity_reservoir_on_constant_targets() {
        let mut d = small_dataset();
        for r in &mut d.records {
            r.target = 2.5;
        }
        let res = run_experiment(&d, &ExperimentConfig::new(Reservoir::Identity, 1, 0)).unwrap();
        assert!(res.mean.abs() < 1e-20);
    }

    #[test]
    fn experiments_are_deterministic() {
        let d = small_dataset();
        let reservoir = Reservoir::Family {
            family: FamilyId::G3,
            n_gates: 30,
        };
        let cfg = ExperimentConfig::new(reservoir, 8, 5);
        let a = run_experiment(&d, &cfg).unwrap();
        let b = run_experiment(&d, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n, 8);
        let seeds: Vec<u64> = a.outcomes.iter().map(|o| o.seed).collect();
        assert_eq!(seeds, (5..13).collect::<Vec<_>>());
        let mse = a.per_seed_mse();
        let lo = mse.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = mse.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(lo <= a.mean && a.mean <= hi);
        assert!(a.to_csv().starts_with("family,n_gates,seed,mse\nG3,30,5,"));
    }

    #[test]
    fn failed_seeds_are_recorded() {
        let d = small_dataset();
        let reservoir = Reservoir::Family {
            family: FamilyId::G1,
            n_gates: 0,
        };
        let res = run_experiment(&d, &ExperimentConfig::new(reservoir, 3, 0)).unwrap();
        assert_eq!(res.failures(), 3);
        assert!(res.outcomes.iter().all(|o| o.error.is_some()));
        assert!(res.mean.is_nan());
    }
}
