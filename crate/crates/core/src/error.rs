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

use thiserror::Error;

/// Errors produced by the simulation, sampling and learning routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {got} outside the supported range {min}..={max}")]
    QubitCount { got: usize, min: usize, max: usize },

    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NonUnitary(f64),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("invalid targets {targets:?} for a {n_qubits}-qubit register")]
    InvalidTargets { targets: Vec<usize>, n_qubits: usize },

    #[error("gate of dimension {dim} cannot act on {n_targets} target qubit(s)")]
    GateDimension { dim: usize, n_targets: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vector is not normalized (total {0:.12})")]
    NotNormalized(f64),

    #[error("dimension {dim} exceeds the limit {max}")]
    DimensionGuard { dim: usize, max: usize },

    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("determinants differ by {0:.3e}")]
    DeterminantMismatch(f64),

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("invalid sample spec: {0}")]
    InvalidSpec(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("test fraction {fraction:.3} outside [0.25, 0.35] ({test} of {total} records)")]
    SplitFraction {
        fraction: f64,
        test: usize,
        total: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
