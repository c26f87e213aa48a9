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

#![allow(dead_code)]

use optqrc::{CMatrix, Circuit, Complex64, Gate, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn outer(i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    m[(i, j)] = Complex64::new(1.0, 0.0);
    m
}

/// Full 2^n matrix of a gate, built as Σ_{ij} G_ij ⊗_q M_q with M_q either
/// |i_k⟩⟨j_k| on the k-th target or the identity.
pub fn embed(gate: &Gate, n: usize) -> CMatrix {
    let g = gate.matrix();
    let targets = gate.targets();
    let k = targets.len();
    let dim = 1usize << n;
    let mut full = CMatrix::zeros(dim, dim);
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            if g[(i, j)].norm() == 0.0 {
                continue;
            }
            let mut term = CMatrix::identity(1, 1);
            for q in 0..n {
                let factor = match targets.iter().position(|&t| t == q) {
                    Some(pos) => {
                        let shift = k - 1 - pos;
                        outer((i >> shift) & 1, (j >> shift) & 1)
                    }
                    None => CMatrix::identity(2, 2),
                };
                term = term.kronecker(&factor);
            }
            full += term * g[(i, j)];
        }
    }
    full
}

/// Product of embedded gate matrices, last gate leftmost.
pub fn dense_unitary(circuit: &Circuit) -> CMatrix {
    let n = circuit.n_qubits();
    let mut u = CMatrix::identity(1 << n, 1 << n);
    for g in circuit.gates() {
        u = embed(g, n) * u;
    }
    u
}

pub fn random_state(n: usize, seed: u64) -> State {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..1usize << n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    State::normalized(amps).unwrap()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
