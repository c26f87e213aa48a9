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

//! Random transverse-field Ising reservoir: exact and Trotterized evolution.
//!
//! H = Σ_{i<j} J_ij Z_i Z_j + Σ_i h_i X_i, evolved as U = e^{+iHT}.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::Normal;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, MAX_UNITARY_QUBITS};
use crate::eigen::eigh;
use crate::error::{Error, Result};
use crate::families::circuit_rng;
use crate::gate::Gate;
use crate::hamiltonian::PauliSum;
use crate::pauli::{Pauli, PauliString};
use crate::state::MAX_QUBITS;
use crate::CMatrix;

pub const DEFAULT_T: f64 = 10.0;
pub const DEFAULT_TROTTER_STEPS: usize = 10;
pub const J_MEAN: f64 = 0.75;
pub const J_STD: f64 = 0.1;
pub const H_MEAN: f64 = 1.0;
pub const H_STD: f64 = 0.1;

/// Published average {H, CNOT, T} gate counts of the synthesized Ising
/// circuits for LiH and H2O. Kept for comparison only; Rz synthesis is not
/// performed here.
pub const REFERENCE_GATES_LIH: usize = 11381;
pub const REFERENCE_GATES_H2O: usize = 17335;

#[derive(Clone, Debug, PartialEq)]
pub struct IsingParams {
    n_qubits: usize,
    j: Vec<Vec<f64>>,
    h: Vec<f64>,
    t: f64,
    seed: Option<u64>,
}

impl IsingParams {
    /// `j` must be symmetric with a zero diagonal.
    pub fn new(j: Vec<Vec<f64>>, h: Vec<f64>, t: f64) -> Result<Self> {
        let n = h.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount {
                got: n,
                min: 1,
                max: MAX_QUBITS,
            });
        }
        if j.len() != n || j.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument("J must be n×n".into()));
        }
        let finite = j.iter().flatten().chain(&h).all(|x| x.is_finite()) && t.is_finite();
        if !finite {
            return Err(Error::InvalidArgument("non-finite Ising parameter".into()));
        }
        for a in 0..n {
            if j[a][a] != 0.0 {
                return Err(Error::InvalidArgument("J must have a zero diagonal".into()));
            }
            for b in 0..a {
                if j[a][b] != j[b][a] {
                    return Err(Error::InvalidArgument("J must be symmetric".into()));
                }
            }
        }
        Ok(IsingParams {
            n_qubits: n,
            j,
            h,
            t,
            seed: None,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn j(&self) -> &[Vec<f64>] {
        &self.j
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    /// Each unordered pair contributes one `J_ij Z_i Z_j` term.
    pub fn hamiltonian(&self) -> Result<PauliSum> {
        let n = self.n_qubits;
        let mut terms = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let mut ops = vec![Pauli::I; n];
                ops[a] = Pauli::Z;
                ops[b] = Pauli::Z;
                terms.push((self.j[a][b], PauliString::new(ops)));
            }
        }
        for (q, &h) in self.h.iter().enumerate() {
            terms.push((h, PauliString::single(n, q, Pauli::X)));
        }
        PauliSum::new(n, terms)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&IsingDoc::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: IsingDoc = serde_json::from_str(text)?;
        let n = doc.h.len();
        let expected = n * n.saturating_sub(1) / 2;
        if doc.j_upper.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: doc.j_upper.len(),
            });
        }
        let mut j = vec![vec![0.0; n]; n];
        let mut it = doc.j_upper.iter();
        for a in 0..n {
            for b in a + 1..n {
                let v = *it.next().expect("length checked");
                j[a][b] = v;
                j[b][a] = v;
            }
        }
        let mut p = IsingParams::new(j, doc.h, doc.t)?;
        p.seed = doc.seed;
        Ok(p)
    }
}

/// JSON form: the strict upper triangle of J in row-major order.
#[derive(Serialize, Deserialize)]
struct IsingDoc {
    n_qubits: usize,
    j_upper: Vec<f64>,
    h: Vec<f64>,
    t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

impl From<&IsingParams> for IsingDoc {
    fn from(p: &IsingParams) -> Self {
        let n = p.n_qubits;
        let j_upper = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .map(|(a, b)| p.j[a][b])
            .collect();
        IsingDoc {
            n_qubits: n,
            j_upper,
            h: p.h.clone(),
            t: p.t,
            seed: p.seed,
        }
    }
}

/// J_ij for i<j (row-major), then h_i, from the seed's stream; T = 10.
pub fn sample_ising(n_qubits: usize, seed: u64) -> Result<IsingParams> {
    if !(2..=MAX_QUBITS).contains(&n_qubits) {
        return Err(Error::QubitCount {
            got: n_qubits,
            min: 2,
            max: MAX_QUBITS,
        });
    }
    let mut rng = circuit_rng(seed);
    let jd = Normal::new(J_MEAN, J_STD).expect("valid normal");
    let hd = Normal::new(H_MEAN, H_STD).expect("valid normal");
    let mut j = vec![vec![0.0; n_qubits]; n_qubits];
    for a in 0..n_qubits {
        for b in a + 1..n_qubits {
            let v: f64 = rng.sample(jd);
            j[a][b] = v;
            j[b][a] = v;
        }
    }
    let h = (0..n_qubits).map(|_| rng.sample(hd)).collect();
    let mut p = IsingParams::new(j, h, DEFAULT_T)?;
    p.seed = Some(seed);
    Ok(p)
}

/// U = e^{+iHT} from the eigendecomposition of H.
pub fn exact_evolution(p: &IsingParams) -> Result<CMatrix> {
    if p.n_qubits > MAX_UNITARY_QUBITS {
        return Err(Error::DimensionGuard {
            dim: 1 << p.n_qubits,
            max: 1 << MAX_UNITARY_QUBITS,
        });
    }
    let eig = eigh(&p.hamiltonian()?.matrix()?)?;
    let v = &eig.vectors;
    let mut scaled = v.clone();
    for (c, e) in eig.values.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, e * p.t);
        scaled.column_mut(c).iter_mut().for_each(|x| *x *= phase);
    }
    Ok(scaled * v.adjoint())
}

/// First-order Trotter circuit with `m` steps over the gate set {H, CNOT, RZ}.
///
/// RZ(θ) = exp(−iθZ/2), so each step uses θ = −2·J_ij·T/m conjugated by
/// CNOTs for the couplings and θ = −2·h_i·T/m conjugated by Hadamards for the
/// fields, which gives exp(+i J_ij T/m Z_i Z_j) and exp(+i h_i T/m X_i).
pub fn trotter_circuit(p: &IsingParams, m: usize) -> Result<Circuit> {
    if m == 0 {
        return Err(Error::InvalidArgument("Trotter steps must be at least 1".into()));
    }
    let n = p.n_qubits;
    let dt = p.t / m as f64;
    let mut c = Circuit::new(n);
    for _ in 0..m {
        for a in 0..n {
            for b in a + 1..n {
                let jab = p.j[a][b];
                if jab == 0.0 {
                    continue;
                }
                c.push(Gate::cnot(a, b))?;
                c.push(Gate::rz(-2.0 * jab * dt, b))?;
                c.push(Gate::cnot(a, b))?;
            }
        }
        for (q, &h) in p.h.iter().enumerate() {
            c.push(Gate::h(q))?;
            c.push(Gate::rz(-2.0 * h * dt, q))?;
            c.push(Gate::h(q))?;
        }
    }
    Ok(c)
}

/// Gate tally by label name, with RZ angles pooled.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCount {
    pub by_label: BTreeMap<String, usize>,
    pub total: usize,
}

pub fn gate_count(c: &Circuit) -> GateCount {
    let mut count = GateCount::default();
    for g in c.gates() {
        *count.by_label.entry(g.label().name().to_string()).or_default() += 1;
        count.total += 1;
    }
    count
}
