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

//! Dense pure-state simulation.
//!
//! Amplitudes are indexed with qubit 0 as the most significant bit, so
//! qubit `q` of an `n`-qubit register lives at bit `n - 1 - q`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::{Gate, Operator};
use crate::pauli::{i_pow, PauliString};
use crate::CMatrix;

pub const MAX_QUBITS: usize = 12;

/// Tolerance on `|‖ψ‖² − 1|` for a valid state.
pub const NORM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct State {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl State {
    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(State { n_qubits, amps })
    }

    /// Wraps an already-normalized amplitude vector.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(State { n_qubits, amps })
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Ok(State { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &State) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Computational-basis outcome probabilities `|a_i|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨ψ|P|ψ⟩`, evaluated without building the Pauli matrix.
    pub fn expectation(&self, p: &PauliString) -> Result<f64> {
        if p.len() != self.n_qubits {
            return Err(Error::LengthMismatch {
                expected: self.n_qubits,
                got: p.len(),
            });
        }
        let (x, z, ny) = p.masks();
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, a) in self.amps.iter().enumerate() {
            let term = self.amps[b ^ x].conj() * a;
            if (b & z).count_ones() % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Ok((acc * i_pow(ny)).re)
    }

    /// Applies `gate` in place by strided updates over the amplitude array.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.check_fits(self.n_qubits)?;
        let n = self.n_qubits;
        let targets = gate.targets();
        match gate.operator() {
            Operator::Dense(m) if targets.len() == 1 => {
                apply_single(&mut self.amps, n - 1 - targets[0], m)
            }
            Operator::Dense(m) => apply_dense(&mut self.amps, n, targets, m),
            Operator::Diagonal(d) => apply_diagonal(&mut self.amps, n, targets, d),
        }
        Ok(())
    }

    /// Consuming variant of [`State::apply_gate`].
    pub fn with_gate(mut self, gate: &Gate) -> Result<Self> {
        self.apply_gate(gate)?;
        Ok(self)
    }

    /// Multiplies by a full-register matrix.
    pub fn apply_matrix(&self, u: &CMatrix) -> Result<State> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: u.nrows(),
            });
        }
        let amps = (0..self.dim())
            .map(|r| {
                u.row(r)
                    .iter()
                    .zip(&self.amps)
                    .map(|(m, a)| m * a)
                    .sum::<Complex64>()
            })
            .collect();
        Ok(State {
            n_qubits: self.n_qubits,
            amps,
        })
    }
}

fn check_qubits(n: usize) -> Result<()> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount {
            got: n,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "amplitude vector length {len} is not a power of two ≥ 2"
        )));
    }
    let n = len.trailing_zeros() as usize;
    check_qubits(n)?;
    Ok(n)
}

fn apply_single(amps: &mut [Complex64], bit: usize, m: &CMatrix) {
    let (m00, m01, m10, m11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let stride = 1usize << bit;
    for chunk in amps.chunks_mut(stride << 1) {
        let (lo, hi) = chunk.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x0, x1) = (*a0, *a1);
            *a0 = m00 * x0 + m01 * x1;
            *a1 = m10 * x0 + m11 * x1;
        }
    }
}

/// Offset of each local basis state `l` of the gate within the register.
/// `targets[0]` is the most significant bit of `l`.
fn local_offsets(n: usize, targets: &[usize]) -> Vec<usize> {
    let k = targets.len();
    (0..1usize << k)
        .map(|l| {
            targets
                .iter()
                .enumerate()
                .filter(|(j, _)| (l >> (k - 1 - j)) & 1 == 1)
                .map(|(_, &t)| 1usize << (n - 1 - t))
                .sum()
        })
        .collect()
}

/// Inserts a zero at each of `positions` (ascending) into the bits of `i`.
#[inline]
fn deposit(mut i: usize, positions: &[usize]) -> usize {
    for &p in positions {
        let low = i & ((1usize << p) - 1);
        i = ((i >> p) << (p + 1)) | low;
    }
    i
}

fn apply_dense(amps: &mut [Complex64], n: usize, targets: &[usize], m: &CMatrix) {
    let offsets = local_offsets(n, targets);
    let d = offsets.len();
    let mut positions: Vec<usize> = targets.iter().map(|&t| n - 1 - t).collect();
    positions.sort_unstable();
    let rows: Vec<Complex64> = (0..d)
        .flat_map(|r| (0..d).map(move |c| (r, c)))
        .map(|(r, c)| m[(r, c)])
        .collect();
    let mut buf = vec![Complex64::new(0.0, 0.0); d];
    for i in 0..1usize << (n - targets.len()) {
        let base = deposit(i, &positions);
        for (slot, off) in buf.iter_mut().zip(&offsets) {
            *slot = amps[base + off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let row = &rows[r * d..(r + 1) * d];
            amps[base + off] = row.iter().zip(&buf).map(|(a, b)| a * b).sum();
        }
    }
}

fn apply_diagonal(amps: &mut [Complex64], n: usize, targets: &[usize], diag: &[Complex64]) {
    let k = targets.len();
    let bits: Vec<usize> = targets.iter().map(|&t| n - 1 - t).collect();
    for (b, a) in amps.iter_mut().enumerate() {
        let mut local = 0usize;
        for (j, &bit) in bits.iter().enumerate() {
            local |= ((b >> bit) & 1) << (k - 1 - j);
        }
        *a *= diag[local];
    }
}
