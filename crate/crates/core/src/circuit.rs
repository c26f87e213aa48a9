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

//! Ordered gate lists and their JSON form.
//!
//! ```json
//! {"n_qubits": 2, "gates": [
//!   {"label": "H", "targets": [0]},
//!   {"label": "MG", "targets": [0, 1], "matrix": [[re, im], ...]},
//!   {"label": "D2", "targets": [0, 1], "diagonal": [[re, im], ...]}
//! ]}
//! ```
//!
//! Standard gates (H, X, S, T, CNOT) carry no matrix. Dense matrices are
//! row-major. Diagonal gates store only their diagonal.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::{standard_operator, Gate, GateLabel, Operator};
use crate::state::State;
use crate::CMatrix;

/// Largest register for which [`Circuit::unitary`] builds a dense matrix.
pub const MAX_UNITARY_QUBITS: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.check_fits(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Applies the gates in list order.
    pub fn apply(&self, state: &mut State) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::LengthMismatch {
                expected: self.n_qubits,
                got: state.n_qubits(),
            });
        }
        for g in &self.gates {
            state.apply_gate(g)?;
        }
        Ok(())
    }

    pub fn apply_to(&self, state: &State) -> Result<State> {
        let mut out = state.clone();
        self.apply(&mut out)?;
        Ok(out)
    }

    /// Dense unitary; column `k` is the circuit applied to basis state `k`.
    pub fn unitary(&self) -> Result<CMatrix> {
        if self.n_qubits > MAX_UNITARY_QUBITS {
            return Err(Error::DimensionGuard {
                dim: 1 << self.n_qubits,
                max: 1 << MAX_UNITARY_QUBITS,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut u = CMatrix::zeros(dim, dim);
        for k in 0..dim {
            let mut s = State::basis(self.n_qubits, k)?;
            self.apply(&mut s)?;
            u.column_mut(k).copy_from_slice(s.amplitudes());
        }
        Ok(u)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&CircuitDoc::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CircuitDoc = serde_json::from_str(text)?;
        doc.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    n_qubits: usize,
    gates: Vec<GateDoc>,
}

#[derive(Serialize, Deserialize)]
struct GateDoc {
    label: String,
    targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    diagonal: Option<Vec<[f64; 2]>>,
}

fn pairs(values: impl Iterator<Item = Complex64>) -> Vec<[f64; 2]> {
    values.map(|z| [z.re, z.im]).collect()
}

fn complexes(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect()
}

impl From<&Circuit> for CircuitDoc {
    fn from(c: &Circuit) -> Self {
        let gates = c
            .gates
            .iter()
            .map(|g| {
                let (matrix, diagonal) = if g.label().is_standard() {
                    (None, None)
                } else {
                    match g.operator() {
                        Operator::Dense(m) => {
                            let d = m.nrows();
                            let row_major = (0..d).flat_map(|r| (0..d).map(move |c| (r, c)));
                            (Some(pairs(row_major.map(|rc| m[rc]))), None)
                        }
                        Operator::Diagonal(d) => (None, Some(pairs(d.iter().copied()))),
                    }
                };
                GateDoc {
                    label: g.label().to_string(),
                    targets: g.targets().to_vec(),
                    matrix,
                    diagonal,
                }
            })
            .collect();
        CircuitDoc {
            n_qubits: c.n_qubits,
            gates,
        }
    }
}

impl TryFrom<CircuitDoc> for Circuit {
    type Error = Error;

    fn try_from(doc: CircuitDoc) -> Result<Circuit> {
        let mut circuit = Circuit::new(doc.n_qubits);
        for g in doc.gates {
            let label: GateLabel = g.label.parse()?;
            let op = match (g.matrix, g.diagonal) {
                (Some(m), None) => {
                    let d = (m.len() as f64).sqrt().round() as usize;
                    if d * d != m.len() {
                        return Err(Error::InvalidArgument(format!(
                            "matrix with {} entries is not square",
                            m.len()
                        )));
                    }
                    Operator::Dense(CMatrix::from_row_slice(d, d, &complexes(&m)))
                }
                (None, Some(d)) => Operator::Diagonal(complexes(&d)),
                (None, None) => standard_operator(label).ok_or_else(|| {
                    Error::InvalidArgument(format!("gate `{label}` needs a matrix"))
                })?,
                (Some(_), Some(_)) => {
                    return Err(Error::InvalidArgument(
                        "gate has both matrix and diagonal".into(),
                    ))
                }
            };
            circuit.push(Gate::new(label, g.targets, op)?)?;
        }
        Ok(circuit)
    }
}
