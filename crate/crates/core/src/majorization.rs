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

//! Cumulant curves, majorization and the ensemble fluctuation indicator.
//!
//! Sorting a probability vector in non-increasing order and taking partial
//! sums gives its cumulants F(1) ≤ … ≤ F(2^n) = 1. Over an ensemble of
//! circuits, the spread of each F(k) measures how far the ensemble is from
//! producing typical, Haar-like output distributions: lower spread means a
//! more complex family.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{haar_state, random_product_state, sample_circuit, SampleSpec};
use crate::gate::Gate;
use crate::state::State;

pub const MAJORIZATION_TOL: f64 = 1e-12;
const NORMALIZATION_TOL: f64 = 1e-8;

/// Stream used for the per-member random input state.
const INPUT_STREAM: u64 = 1;
/// Stream used for Haar reference states.
const HAAR_STREAM: u64 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct CumulantCurve {
    cumulants: Vec<f64>,
}

impl CumulantCurve {
    pub fn values(&self) -> &[f64] {
        &self.cumulants
    }

    pub fn len(&self) -> usize {
        self.cumulants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cumulants.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.cumulants
    }
}

pub fn cumulants(p: &[f64]) -> Result<CumulantCurve> {
    if p.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(Error::InvalidArgument(
            "probabilities must be finite and non-negative".into(),
        ));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized(total));
    }
    Ok(sorted_partial_sums(p))
}

fn sorted_partial_sums(p: &[f64]) -> CumulantCurve {
    let mut sorted = p.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    for x in &mut sorted {
        acc += *x;
        *x = acc;
    }
    CumulantCurve { cumulants: sorted }
}

/// Whether `y` majorizes `x`: every cumulant of `y` is at least the
/// matching cumulant of `x`, and the totals agree.
pub fn majorizes(y: &[f64], x: &[f64]) -> Result<bool> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch {
            expected: y.len(),
            got: x.len(),
        });
    }
    let fy = cumulants(y)?;
    let fx = cumulants(x)?;
    let dominated = fy
        .values()
        .iter()
        .zip(fx.values())
        .all(|(a, b)| *a >= *b - MAJORIZATION_TOL);
    let totals = match (fy.values().last(), fx.values().last()) {
        (Some(a), Some(b)) => (a - b).abs() <= MAJORIZATION_TOL.max(NORMALIZATION_TOL),
        _ => true,
    };
    Ok(dominated && totals)
}

/// State fed to every ensemble member.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum InputState {
    /// |0…0⟩.
    Zero,
    /// A fresh product of Haar single-qubit states per member, drawn from the
    /// member seed on its own stream.
    #[default]
    RandomProduct,
    Fixed(State),
}

/// Basis in which output probabilities are read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    /// Hadamard frame for the diagonal families, computational otherwise.
    #[default]
    Auto,
    Computational,
    /// Conjugate the circuit by a layer of Hadamards, i.e. measure H^n U H^n.
    Hadamard,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EnsembleOptions {
    pub input: InputState,
    pub frame: Frame,
    /// Reuse `spec.seed` for every member; the ensemble then has zero spread.
    pub pin_seed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportSource {
    Family(SampleSpec),
    Haar { n_qubits: usize, seed: u64 },
}

impl ReportSource {
    pub fn label(&self) -> String {
        match self {
            ReportSource::Family(spec) if spec.family.is_diagonal() => spec.family.to_string(),
            ReportSource::Family(spec) => format!("{}-{}", spec.family, spec.n_gates),
            ReportSource::Haar { .. } => "haar".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluctuationReport {
    pub source: ReportSource,
    pub n_circuits: usize,
    pub per_k_mean: Vec<f64>,
    /// Sample standard deviation (n−1 denominator) of each cumulant.
    pub per_k_std: Vec<f64>,
    /// Mean of `per_k_std` over k.
    pub summary: f64,
    /// Jackknife standard error of `summary`.
    pub summary_stderr: f64,
}

impl FluctuationReport {
    /// Aggregates cumulant curves of equal length, in the given order.
    pub fn from_curves(source: ReportSource, curves: &[Vec<f64>]) -> Result<Self> {
        let n = curves.len();
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "an ensemble needs at least 2 members, got {n}"
            )));
        }
        let dim = curves[0].len();
        if let Some(bad) = curves.iter().find(|c| c.len() != dim) {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        let nf = n as f64;
        let mut mean = vec![0.0; dim];
        for c in curves {
            for (m, x) in mean.iter_mut().zip(c) {
                *m += x;
            }
        }
        mean.iter_mut().for_each(|m| *m /= nf);
        let mut sq = vec![0.0; dim];
        for c in curves {
            for k in 0..dim {
                let d = c[k] - mean[k];
                sq[k] += d * d;
            }
        }
        let per_k_std: Vec<f64> = sq.iter().map(|q| (q / (nf - 1.0)).sqrt()).collect();
        let summary = per_k_std.iter().sum::<f64>() / dim as f64;

        let summary_stderr = if n < 3 {
            0.0
        } else {
            // Leave-one-out: removing member j shifts the deviation sums to
            // Σd = −d_j and Σd² = Q − d_j².
            let m = nf - 1.0;
            let loo: Vec<f64> = curves
                .iter()
                .map(|c| {
                    let mut s = 0.0;
                    for k in 0..dim {
                        let d = c[k] - mean[k];
                        let var = ((sq[k] - d * d) - d * d / m) / (m - 1.0);
                        s += var.max(0.0).sqrt();
                    }
                    s / dim as f64
                })
                .collect();
            let centre = loo.iter().sum::<f64>() / nf;
            let spread: f64 = loo.iter().map(|t| (t - centre).powi(2)).sum();
            ((nf - 1.0) / nf * spread).sqrt()
        };

        Ok(FluctuationReport {
            source,
            n_circuits: n,
            per_k_mean: mean,
            per_k_std,
            summary,
            summary_stderr,
        })
    }

    /// One `#` comment line describing the source and summary, then `k,mean,std`
    /// rows with k counted from 1.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "# source={}", self.source.label());
        match &self.source {
            ReportSource::Family(spec) => {
                let _ = write!(
                    out,
                    " family={} n_qubits={} gates={} seed={}",
                    spec.family,
                    spec.n_qubits,
                    spec.effective_gates(),
                    spec.seed
                );
            }
            ReportSource::Haar { n_qubits, seed } => {
                let _ = write!(out, " n_qubits={n_qubits} seed={seed}");
            }
        }
        let _ = writeln!(
            out,
            " circuits={} summary={} stderr={}",
            self.n_circuits, self.summary, self.summary_stderr
        );
        out.push_str("k,mean,std\n");
        for (k, (m, s)) in self.per_k_mean.iter().zip(&self.per_k_std).enumerate() {
            let _ = writeln!(out, "{},{},{}", k + 1, m, s);
        }
        out
    }
}

fn member_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Cumulant curve of one ensemble member.
pub fn member_curve(spec: &SampleSpec, options: &EnsembleOptions) -> Result<Vec<f64>> {
    let n = spec.n_qubits;
    let circuit = sample_circuit(spec)?;
    let mut state = match &options.input {
        InputState::Zero => State::zero(n)?,
        InputState::RandomProduct => random_product_state(n, &mut member_rng(spec.seed, INPUT_STREAM))?,
        InputState::Fixed(s) => {
            if s.n_qubits() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: s.n_qubits(),
                });
            }
            s.clone()
        }
    };
    let hadamard = match options.frame {
        Frame::Auto => spec.family.is_diagonal(),
        Frame::Computational => false,
        Frame::Hadamard => true,
    };
    if hadamard {
        hadamard_layer(&mut state)?;
    }
    circuit.apply(&mut state)?;
    if hadamard {
        hadamard_layer(&mut state)?;
    }
    Ok(sorted_partial_sums(&state.probabilities()).into_values())
}

fn hadamard_layer(state: &mut State) -> Result<()> {
    for q in 0..state.n_qubits() {
        state.apply_gate(&Gate::h(q))?;
    }
    Ok(())
}

/// Runs `n_circuits` members with seeds `spec.seed, spec.seed + 1, …`.
/// Members are evaluated in parallel and aggregated in seed order.
pub fn ensemble_fluctuations(
    spec: &SampleSpec,
    n_circuits: usize,
    options: &EnsembleOptions,
) -> Result<FluctuationReport> {
    spec.validate()?;
    if n_circuits < 2 {
        return Err(Error::InvalidArgument(format!(
            "an ensemble needs at least 2 members, got {n_circuits}"
        )));
    }
    let curves = (0..n_circuits as u64)
        .into_par_iter()
        .map(|i| {
            let seed = if options.pin_seed {
                spec.seed
            } else {
                spec.seed.wrapping_add(i)
            };
            member_curve(&spec.with_seed(seed), options)
        })
        .collect::<Result<Vec<_>>>()?;
    FluctuationReport::from_curves(ReportSource::Family(spec.clone()), &curves)
}

/// The same statistics over Haar-random pure states.
pub fn haar_baseline(n_qubits: usize, n_samples: usize, seed: u64) -> Result<FluctuationReport> {
    if n_samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "an ensemble needs at least 2 members, got {n_samples}"
        )));
    }
    State::zero(n_qubits)?;
    let curves = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = member_rng(seed.wrapping_add(i), HAAR_STREAM);
            let state = haar_state(n_qubits, &mut rng)?;
            Ok(sorted_partial_sums(&state.probabilities()).into_values())
        })
        .collect::<Result<Vec<_>>>()?;
    FluctuationReport::from_curves(ReportSource::Haar { n_qubits, seed }, &curves)
}
