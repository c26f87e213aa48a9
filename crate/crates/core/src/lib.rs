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

//! Quantum reservoir computing with random circuits.
//!
//! The crate covers the whole desk-scale pipeline:
//!
//! * [`state`], [`gate`], [`circuit`]: dense statevector simulation with
//!   qubit 0 as the most significant bit of a basis index.
//! * [`eigen`]: Hermitian eigensolver used for exact ground states.
//! * [`families`]: seeded samplers for the G1, G2, G3, MG, D2, D3 and DN
//!   circuit families.
//! * [`majorization`]: cumulant (Lorenz) curves and the ensemble
//!   fluctuation complexity indicator.
//! * [`hamiltonian`], [`dataset`]: Pauli-sum Hamiltonians, parameterized
//!   ground-state datasets and extrapolation splits.
//! * [`qrc`]: local Pauli features, ridge readout and the experiment loop.
//! * [`ising`]: the transverse-field Ising reservoir, exact and Trotterized.
//! * [`pauli_space`]: two-qubit unitaries in the Pauli basis and a PCA
//!   projection of ensemble clouds.

pub mod circuit;
pub mod dataset;
pub mod eigen;
pub mod error;
pub mod families;
pub mod gate;
pub mod hamiltonian;
pub mod ising;
pub mod majorization;
pub mod pauli;
pub mod pauli_space;
pub mod qrc;
pub mod state;

pub use num_complex::Complex64;

/// Dense complex matrix used for unitaries and Hamiltonians.
pub type CMatrix = nalgebra::DMatrix<Complex64>;

pub use circuit::Circuit;
pub use error::{Error, Result};
pub use gate::{Gate, GateLabel};
pub use pauli::{Pauli, PauliString};
pub use state::State;

/// Largest entry modulus, `max_ij |m_ij|`.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
