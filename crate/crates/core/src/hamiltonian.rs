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

//! Real-weighted Pauli-sum Hamiltonians and their text format.
//!
//! One term per line, `<coefficient> <pauli string>`, with `#` comments and
//! blank lines ignored. A `# R= <value>` line binds a file to a point of a
//! parameter grid.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::state::{State, MAX_QUBITS};
use crate::CMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliSum {
    /// Builds a sum, merging repeated strings into their first occurrence.
    pub fn new(n_qubits: usize, terms: Vec<(f64, PauliString)>) -> Result<Self> {
        let mut merged: Vec<(f64, PauliString)> = Vec::with_capacity(terms.len());
        let mut index: HashMap<PauliString, usize> = HashMap::new();
        for (c, p) in terms {
            if !c.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite coefficient {c}")));
            }
            if p.len() != n_qubits {
                return Err(Error::LengthMismatch {
                    expected: n_qubits,
                    got: p.len(),
                });
            }
            match index.get(&p) {
                Some(&i) => merged[i].0 += c,
                None => {
                    index.insert(p.clone(), merged.len());
                    merged.push((c, p));
                }
            }
        }
        Ok(PauliSum {
            n_qubits,
            terms: merged,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// ⟨ψ|H|ψ⟩ evaluated term by term.
    pub fn expectation(&self, state: &State) -> Result<f64> {
        self.terms
            .iter()
            .map(|(c, p)| Ok(c * state.expectation(p)?))
            .sum()
    }

    /// Dense matrix, guarded at `MAX_QUBITS`.
    pub fn matrix(&self) -> Result<CMatrix> {
        if self.n_qubits > MAX_QUBITS {
            return Err(Error::DimensionGuard {
                dim: 1usize << self.n_qubits.min(usize::BITS as usize - 1),
                max: 1 << MAX_QUBITS,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut m = CMatrix::zeros(dim, dim);
        for (c, p) in &self.terms {
            p.accumulate_into(&mut m, *c);
        }
        Ok(m)
    }
}

pub fn pauli_sum_matrix(h: &PauliSum) -> Result<CMatrix> {
    h.matrix()
}

/// A parsed Hamiltonian file: the sum plus its optional grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianFile {
    pub r: Option<f64>,
    pub sum: PauliSum,
}

impl HamiltonianFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut r = None;
        let mut terms = Vec::new();
        let mut width: Option<usize> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(value) = comment.trim_start().strip_prefix("R=") {
                    let value = value.trim();
                    let parsed: f64 = value.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("bad R value `{value}`"),
                    })?;
                    if r.replace(parsed).is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            message: "duplicate R line".into(),
                        });
                    }
                }
                continue;
            }
            let mut fields = line.split_whitespace();
            let (Some(coef), Some(string), None) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(Error::Parse {
                    line: line_no,
                    message: "expected `<coefficient> <pauli string>`".into(),
                });
            };
            let c: f64 = coef.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad coefficient `{coef}`"),
            })?;
            if !c.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("non-finite coefficient `{coef}`"),
                });
            }
            let p: PauliString = string.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad pauli string `{string}`"),
            })?;
            match width {
                None => width = Some(p.len()),
                Some(w) if w != p.len() => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("string `{string}` has {} qubits, expected {w}", p.len()),
                    })
                }
                _ => {}
            }
            terms.push((c, p));
        }
        let n = width.ok_or(Error::Parse {
            line: 0,
            message: "no terms".into(),
        })?;
        Ok(HamiltonianFile {
            r,
            sum: PauliSum::new(n, terms)?,
        })
    }

    /// Shortest round-trip decimal coefficients, one term per line.
    pub fn format(&self) -> String {
        let mut out = String::new();
        if let Some(r) = self.r {
            let _ = writeln!(out, "# R= {r}");
        }
        for (c, p) in self.sum.terms() {
            let _ = writeln!(out, "{c} {p}");
        }
        out
    }
}

pub fn parse_pauli_sum(text: &str) -> Result<PauliSum> {
    Ok(HamiltonianFile::parse(text)?.sum)
}

pub fn format_pauli_sum(h: &PauliSum) -> String {
    HamiltonianFile {
        r: None,
        sum: h.clone(),
    }
    .format()
}

pub const SYNTHETIC_FAMILIES: [&str; 1] = ["tfim-chain"];

/// `tfim-chain`: Σ Z_i Z_{i+1} on an open chain plus R Σ X_i.
pub fn synthetic_family(name: &str, n_qubits: usize, r: f64) -> Result<PauliSum> {
    if name != "tfim-chain" {
        return Err(Error::UnknownName(name.to_string()));
    }
    if n_qubits < 2 || n_qubits > MAX_QUBITS {
        return Err(Error::QubitCount {
            got: n_qubits,
            min: 2,
            max: MAX_QUBITS,
        });
    }
    if !r.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite parameter {r}")));
    }
    let mut terms = Vec::with_capacity(2 * n_qubits - 1);
    for i in 0..n_qubits - 1 {
        let mut ops = vec![Pauli::I; n_qubits];
        ops[i] = Pauli::Z;
        ops[i + 1] = Pauli::Z;
        terms.push((1.0, PauliString::new(ops)));
    }
    for i in 0..n_qubits {
        terms.push((r, PauliString::single(n_qubits, i, Pauli::X)));
    }
    PauliSum::new(n_qubits, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::eigh;
    use num_complex::Complex64;

    #[test]
    fn parse_examples() {
        let h = parse_pauli_sum("1.0 ZZ").unwrap();
        assert_eq!(h.n_qubits(), 2);
        assert_eq!(h.len(), 1);
        let merged = parse_pauli_sum("0.5 XI\n0.5 XI").unwrap();
        assert_eq!(merged.terms(), &[(1.0, "XI".parse().unwrap())]);
    }

    #[test]
    fn parse_metadata_and_comments() {
        let text = "# generated\n# R= 1.25\n\n  -0.5 IZ  \n0.25 XY # trailing\n";
        assert!(matches!(
            HamiltonianFile::parse(text),
            Err(Error::Parse { line: 5, .. })
        ));
        let file = HamiltonianFile::parse("# R= 1.25\n-0.5 IZ\n0.25 XY\n").unwrap();
        assert_eq!(file.r, Some(1.25));
        assert_eq!(file.sum.len(), 2);
        assert_eq!(HamiltonianFile::parse(&file.format()).unwrap(), file);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("1.0 ZZ\nabc XX", 2),
            ("1.0 ZZ\n2.0 ZZZ", 2),
            ("\n\n1.0 ZQ", 3),
            ("1.0", 1),
            ("nan Z", 1),
            ("# R= x\n1 Z", 1),
        ];
        for (text, line) in cases {
            match parse_pauli_sum(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(parse_pauli_sum("# only comments\n").is_err());
    }

    #[test]
    fn matrix_examples() {
        let z = parse_pauli_sum("1.0 Z").unwrap().matrix().unwrap();
        assert_eq!(z[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(z[(1, 1)], Complex64::new(-1.0, 0.0));
        let xx = parse_pauli_sum("1.0 XX").unwrap().matrix().unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let expect = if r + c == 3 { 1.0 } else { 0.0 };
                assert_eq!(xx[(r, c)], Complex64::new(expect, 0.0));
            }
        }
    }

    #[test]
    fn tfim_chain() {
        let h = synthetic_family("tfim-chain", 5, 0.7).unwrap();
        assert_eq!(h.len(), 4 + 5);
        assert!(synthetic_family("heisenberg", 5, 0.7).is_err());

        let h0 = synthetic_family("tfim-chain", 2, 0.0).unwrap();
        let e = eigh(&h0.matrix().unwrap()).unwrap().values;
        assert!((e[0] + 1.0).abs() < 1e-12 && (e[1] + 1.0).abs() < 1e-12);

        // Z⊗Z + X⊗I + I⊗X commutes with swap; on the symmetric sector the
        // ground energy is −√5, on the antisymmetric one it is −1.
        let h1 = synthetic_family("tfim-chain", 2, 1.0).unwrap();
        let e = eigh(&h1.matrix().unwrap()).unwrap().values;
        assert!((e[0] + 5f64.sqrt()).abs() < 1e-12);
        assert!((e[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_matches_matrix() {
        let h = synthetic_family("tfim-chain", 3, 0.4).unwrap();
        let m = h.matrix().unwrap();
        let amps: Vec<Complex64> = (0..8)
            .map(|i| Complex64::new((i as f64 * 0.7).cos(), (i as f64 * 1.3).sin()))
            .collect();
        let s = State::normalized(amps).unwrap();
        let v = nalgebra::DVector::from_column_slice(s.amplitudes());
        let dense = (v.adjoint() * &m * &v)[(0, 0)].re;
        assert!((h.expectation(&s).unwrap() - dense).abs() < 1e-12);
    }
}
