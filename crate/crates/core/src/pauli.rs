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

//! Single-qubit Pauli operators and tensor-product strings.
//!
//! Strings are stored left to right starting from qubit 0, which is the
//! most significant bit of a basis index.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::CMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A tensor product of single-qubit Paulis, one per qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    ops: Vec<Pauli>,
}

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Self {
        PauliString { ops }
    }

    pub fn identity(n_qubits: usize) -> Self {
        PauliString {
            ops: vec![Pauli::I; n_qubits],
        }
    }

    /// `op` on `qubit`, identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, op: Pauli) -> Self {
        let mut s = Self::identity(n_qubits);
        s.ops[qubit] = op;
        s
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    /// Bit masks `(x, z)` over basis indices and the number of `Y` factors.
    ///
    /// `P|b⟩ = i^{n_y} (-1)^{popcount(b & z)} |b ^ x⟩`.
    pub fn masks(&self) -> (usize, usize, u32) {
        let n = self.ops.len();
        let mut x = 0usize;
        let mut z = 0usize;
        let mut ny = 0u32;
        for (q, op) in self.ops.iter().enumerate() {
            let bit = 1usize << (n - 1 - q);
            match op {
                Pauli::I => {}
                Pauli::X => x |= bit,
                Pauli::Z => z |= bit,
                Pauli::Y => {
                    x |= bit;
                    z |= bit;
                    ny += 1;
                }
            }
        }
        (x, z, ny)
    }

    /// Dense `2^n × 2^n` matrix. Built column by column from the masks.
    pub fn matrix(&self) -> CMatrix {
        let dim = 1usize << self.ops.len();
        let mut m = CMatrix::zeros(dim, dim);
        self.accumulate_into(&mut m, 1.0);
        m
    }

    /// Adds `coefficient · P` to `m`.
    pub(crate) fn accumulate_into(&self, m: &mut CMatrix, coefficient: f64) {
        let (x, z, ny) = self.masks();
        let phase = i_pow(ny) * coefficient;
        for b in 0..m.ncols() {
            let sign = if (b & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            m[(b ^ x, b)] += phase * sign;
        }
    }
}

pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            write!(f, "{}", op.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ops = s
            .chars()
            .map(|c| {
                Pauli::from_char(c).ok_or_else(|| {
                    Error::InvalidArgument(format!("`{c}` is not one of I, X, Y, Z"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if ops.is_empty() {
            return Err(Error::InvalidArgument("empty Pauli string".into()));
        }
        Ok(PauliString { ops })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
        a.kronecker(b)
    }

    fn single(p: Pauli) -> CMatrix {
        let m = p.matrix();
        CMatrix::from_fn(2, 2, |r, c| m[r][c])
    }

    #[test]
    fn matrix_matches_kronecker_products() {
        for s in ["XYZ", "ZIY", "YYX", "IIZ", "XIX"] {
            let p: PauliString = s.parse().unwrap();
            let mut oracle = CMatrix::identity(1, 1);
            for op in p.ops() {
                oracle = kron(&oracle, &single(*op));
            }
            assert!(crate::max_abs(&(p.matrix() - oracle)) < 1e-15, "{s}");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("XQZ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
        assert_eq!("XYZI".parse::<PauliString>().unwrap().to_string(), "XYZI");
    }
}
