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

//! Unitary gates acting on an ordered list of target qubits.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::CMatrix;

/// Tolerance on `‖M†M − I‖_max` accepted for input gates.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateLabel {
    H,
    X,
    S,
    T,
    Cnot,
    Mg,
    D2,
    D3,
    Dn,
    Rz(f64),
    /// Arbitrary user-supplied unitary.
    Unitary,
}

impl GateLabel {
    /// Named gates whose matrix is implied by the label alone.
    pub fn is_standard(self) -> bool {
        matches!(
            self,
            GateLabel::H | GateLabel::X | GateLabel::S | GateLabel::T | GateLabel::Cnot
        )
    }

    /// Short name without parameters, used for tallies.
    pub fn name(self) -> &'static str {
        match self {
            GateLabel::H => "H",
            GateLabel::X => "X",
            GateLabel::S => "S",
            GateLabel::T => "T",
            GateLabel::Cnot => "CNOT",
            GateLabel::Mg => "MG",
            GateLabel::D2 => "D2",
            GateLabel::D3 => "D3",
            GateLabel::Dn => "DN",
            GateLabel::Rz(_) => "RZ",
            GateLabel::Unitary => "U",
        }
    }
}

impl fmt::Display for GateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateLabel::Rz(theta) => write!(f, "RZ({theta})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for GateLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "H" => GateLabel::H,
            "X" => GateLabel::X,
            "S" => GateLabel::S,
            "T" => GateLabel::T,
            "CNOT" => GateLabel::Cnot,
            "MG" => GateLabel::Mg,
            "D2" => GateLabel::D2,
            "D3" => GateLabel::D3,
            "DN" => GateLabel::Dn,
            "U" => GateLabel::Unitary,
            _ => {
                let theta = s
                    .strip_prefix("RZ(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|t| t.parse::<f64>().ok())
                    .ok_or_else(|| Error::UnknownName(s.to_string()))?;
                GateLabel::Rz(theta)
            }
        })
    }
}

/// Matrix storage. Diagonal gates on many qubits never materialize the
/// full `2^k × 2^k` matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Operator {
    Dense(CMatrix),
    Diagonal(Vec<Complex64>),
}

impl Operator {
    pub fn dim(&self) -> usize {
        match self {
            Operator::Dense(m) => m.nrows(),
            Operator::Diagonal(d) => d.len(),
        }
    }

    pub fn to_dense(&self) -> CMatrix {
        match self {
            Operator::Dense(m) => m.clone(),
            Operator::Diagonal(d) => CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d)),
        }
    }

    /// `‖M†M − I‖_max`.
    pub fn unitarity_error(&self) -> f64 {
        match self {
            Operator::Dense(m) => unitarity_error(m),
            Operator::Diagonal(d) => d
                .iter()
                .map(|z| (z.norm_sqr() - 1.0).abs())
                .fold(0.0, f64::max),
        }
    }
}

/// `‖M†M − I‖_max` for a square matrix.
pub fn unitarity_error(m: &CMatrix) -> f64 {
    let prod = m.adjoint() * m;
    let mut worst = 0.0f64;
    for r in 0..prod.nrows() {
        for c in 0..prod.ncols() {
            let target = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((prod[(r, c)] - target).norm());
        }
    }
    worst
}

/// Nearest unitary in the polar sense, by Newton iteration
/// `X ← (X + X^{-†}) / 2`.
pub fn polar_unitarize(m: &CMatrix) -> Result<CMatrix> {
    let mut x = m.clone();
    for _ in 0..50 {
        if unitarity_error(&x) <= 1e-15 {
            break;
        }
        let inv = x
            .clone()
            .try_inverse()
            .ok_or(Error::NonUnitary(f64::INFINITY))?;
        x = (&x + inv.adjoint()) * Complex64::new(0.5, 0.0);
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    label: GateLabel,
    targets: Vec<usize>,
    op: Operator,
}

impl Gate {
    /// Validated constructor: `2^|targets|` must equal the operator
    /// dimension, targets must be distinct, and the operator unitary within
    /// [`UNITARY_TOL`].
    pub fn new(label: GateLabel, targets: Vec<usize>, op: Operator) -> Result<Self> {
        if targets.is_empty() || op.dim() != 1usize << targets.len() {
            return Err(Error::GateDimension {
                dim: op.dim(),
                n_targets: targets.len(),
            });
        }
        if has_duplicates(&targets) {
            return Err(Error::InvalidTargets {
                targets,
                n_qubits: 0,
            });
        }
        let err = op.unitarity_error();
        if err > UNITARY_TOL {
            return Err(Error::NonUnitary(err));
        }
        Ok(Gate { label, targets, op })
    }

    pub fn dense(label: GateLabel, targets: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        Gate::new(label, targets, Operator::Dense(matrix))
    }

    /// Like [`Gate::dense`], but a sampled matrix that drifted past the
    /// tolerance is first re-unitarized by polar correction.
    pub fn sampled(label: GateLabel, targets: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        let matrix = if unitarity_error(&matrix) > UNITARY_TOL {
            polar_unitarize(&matrix)?
        } else {
            matrix
        };
        Gate::dense(label, targets, matrix)
    }

    pub fn diagonal(label: GateLabel, targets: Vec<usize>, diag: Vec<Complex64>) -> Result<Self> {
        Gate::new(label, targets, Operator::Diagonal(diag))
    }

    pub fn h(q: usize) -> Self {
        Self::standard(GateLabel::H, vec![q])
    }

    pub fn x(q: usize) -> Self {
        Self::standard(GateLabel::X, vec![q])
    }

    pub fn s(q: usize) -> Self {
        Self::standard(GateLabel::S, vec![q])
    }

    pub fn t(q: usize) -> Self {
        Self::standard(GateLabel::T, vec![q])
    }

    /// # Panics
    /// If `control == target`.
    pub fn cnot(control: usize, target: usize) -> Self {
        assert_ne!(control, target, "CNOT control and target must differ");
        Self::standard(GateLabel::Cnot, vec![control, target])
    }

    /// `exp(-iθZ/2) = diag(e^{-iθ/2}, e^{iθ/2})`.
    pub fn rz(theta: f64, q: usize) -> Self {
        Gate {
            label: GateLabel::Rz(theta),
            targets: vec![q],
            op: Operator::Diagonal(vec![
                Complex64::from_polar(1.0, -theta / 2.0),
                Complex64::from_polar(1.0, theta / 2.0),
            ]),
        }
    }

    fn standard(label: GateLabel, targets: Vec<usize>) -> Self {
        Gate {
            label,
            targets,
            op: standard_operator(label).expect("standard label"),
        }
    }

    pub fn label(&self) -> GateLabel {
        self.label
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn operator(&self) -> &Operator {
        &self.op
    }

    pub fn matrix(&self) -> CMatrix {
        self.op.to_dense()
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.op, Operator::Diagonal(_))
    }

    /// Same operator on different targets.
    pub fn retarget(&self, targets: Vec<usize>) -> Result<Self> {
        Gate::new(self.label, targets, self.op.clone())
    }

    /// Checks the targets fit an `n_qubits` register.
    pub fn check_fits(&self, n_qubits: usize) -> Result<()> {
        if self.targets.iter().any(|&t| t >= n_qubits) {
            return Err(Error::InvalidTargets {
                targets: self.targets.clone(),
                n_qubits,
            });
        }
        Ok(())
    }
}

/// Operator for labels that fully determine their matrix.
pub fn standard_operator(label: GateLabel) -> Option<Operator> {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    Some(match label {
        GateLabel::H => Operator::Dense(CMatrix::from_row_slice(2, 2, &[h, h, h, -h])),
        GateLabel::X => Operator::Dense(CMatrix::from_row_slice(2, 2, &[o, l, l, o])),
        GateLabel::S => Operator::Diagonal(vec![l, Complex64::new(0.0, 1.0)]),
        GateLabel::T => Operator::Diagonal(vec![l, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]),
        GateLabel::Cnot => Operator::Dense(CMatrix::from_row_slice(
            4,
            4,
            &[l, o, o, o, o, l, o, o, o, o, o, l, o, o, l, o],
        )),
        GateLabel::Rz(theta) => Operator::Diagonal(vec![
            Complex64::from_polar(1.0, -theta / 2.0),
            Complex64::from_polar(1.0, theta / 2.0),
        ]),
        _ => return None,
    })
}

fn has_duplicates(targets: &[usize]) -> bool {
    targets
        .iter()
        .enumerate()
        .any(|(i, t)| targets[..i].contains(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_gates_are_unitary() {
        for g in [Gate::h(0), Gate::x(0), Gate::s(0), Gate::t(0), Gate::cnot(0, 1), Gate::rz(0.3, 0)] {
            assert!(g.operator().unitarity_error() < 1e-15, "{}", g.label());
        }
    }

    #[test]
    fn rejects_non_unitary_and_bad_targets() {
        let m = CMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        assert!(matches!(
            Gate::dense(GateLabel::Unitary, vec![0], m),
            Err(Error::NonUnitary(_))
        ));
        let id = CMatrix::identity(4, 4);
        assert!(Gate::dense(GateLabel::Unitary, vec![1, 1], id.clone()).is_err());
        assert!(Gate::dense(GateLabel::Unitary, vec![0], id).is_err());
    }

    #[test]
    fn polar_correction_restores_unitarity() {
        let mut m = Gate::h(0).matrix();
        m[(0, 0)] += Complex64::new(1e-7, -2e-7);
        assert!(unitarity_error(&m) > UNITARY_TOL);
        let g = Gate::sampled(GateLabel::Unitary, vec![0], m.clone()).unwrap();
        assert!(g.operator().unitarity_error() < 1e-14);
        assert!(crate::max_abs(&(g.matrix() - m)) < 1e-6);
    }

    #[test]
    fn labels_round_trip_through_strings() {
        for l in [GateLabel::H, GateLabel::Cnot, GateLabel::Dn, GateLabel::Rz(-0.125), GateLabel::Unitary] {
            assert_eq!(l.to_string().parse::<GateLabel>().unwrap(), l);
        }
        assert!("FOO".parse::<GateLabel>().is_err());
    }
}
