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

//! Seeded samplers for the seven reservoir circuit families.
//!
//! | family | gates |
//! |--------|-------|
//! | G1 | uniform over {CNOT, H, X} |
//! | G2 | uniform over {CNOT, H, S} |
//! | G3 | uniform over {CNOT, H, T} |
//! | MG | matchgates G(A, B) with Haar A, B and det B = det A |
//! | D2, D3, DN | one random diagonal gate per qubit pair / triple / the whole register |
//!
//! All draws for one circuit come from a single ChaCha8 stream seeded with
//! the spec's seed, so a spec always yields the same circuit.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, GateLabel};
use crate::state::{State, MAX_QUBITS};
use crate::CMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    G1,
    G2,
    G3,
    MG,
    D2,
    D3,
    DN,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::G1,
        FamilyId::G2,
        FamilyId::G3,
        FamilyId::MG,
        FamilyId::D2,
        FamilyId::D3,
        FamilyId::DN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::G1 => "G1",
            FamilyId::G2 => "G2",
            FamilyId::G3 => "G3",
            FamilyId::MG => "MG",
            FamilyId::D2 => "D2",
            FamilyId::D3 => "D3",
            FamilyId::DN => "DN",
        }
    }

    /// D2, D3 and DN: gate count fixed by the register size.
    pub fn is_diagonal(self) -> bool {
        matches!(self, FamilyId::D2 | FamilyId::D3 | FamilyId::DN)
    }

    pub fn min_qubits(self) -> usize {
        if self == FamilyId::D3 {
            3
        } else {
            2
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub family: FamilyId,
    pub n_qubits: usize,
    /// Requested gate count; ignored by the diagonal families.
    pub n_gates: usize,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(family: FamilyId, n_qubits: usize, n_gates: usize, seed: u64) -> Self {
        SampleSpec {
            family,
            n_qubits,
            n_gates,
            seed,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        SampleSpec { seed, ..self.clone() }
    }

    /// Gates actually emitted: `n_gates`, or C(n,2), C(n,3), 1 for D2, D3, DN.
    pub fn effective_gates(&self) -> usize {
        let n = self.n_qubits;
        match self.family {
            FamilyId::D2 => binomial(n, 2),
            FamilyId::D3 => binomial(n, 3),
            FamilyId::DN => 1,
            _ => self.n_gates,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let min = self.family.min_qubits();
        if self.n_qubits < min || self.n_qubits > MAX_QUBITS {
            return Err(Error::InvalidSpec(format!(
                "{} needs {}..={} qubits, got {}",
                self.family, min, MAX_QUBITS, self.n_qubits
            )));
        }
        if !self.family.is_diagonal() && self.n_gates == 0 {
            return Err(Error::InvalidSpec(format!(
                "{} needs at least one gate",
                self.family
            )));
        }
        Ok(())
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The per-circuit random stream.
pub fn circuit_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sample_circuit(spec: &SampleSpec) -> Result<Circuit> {
    spec.validate()?;
    let mut rng = circuit_rng(spec.seed);
    let n = spec.n_qubits;
    let mut circuit = Circuit::new(n);
    match spec.family {
        FamilyId::G1 | FamilyId::G2 | FamilyId::G3 => {
            let third: fn(usize) -> Gate = match spec.family {
                FamilyId::G1 => Gate::x,
                FamilyId::G2 => Gate::s,
                _ => Gate::t,
            };
            for _ in 0..spec.n_gates {
                let gate = match rng.random_range(0..3) {
                    0 => {
                        let (c, t) = ordered_pair(n, &mut rng);
                        Gate::cnot(c, t)
                    }
                    1 => Gate::h(rng.random_range(0..n)),
                    _ => third(rng.random_range(0..n)),
                };
                circuit.push(gate)?;
            }
        }
        FamilyId::MG => {
            for _ in 0..spec.n_gates {
                let (i, j) = unordered_pair(n, &mut rng);
                let a = haar_unitary_from(2, &mut rng)?;
                let mut b = haar_unitary_from(2, &mut rng)?;
                // det(cB) = c² det B, so c = sqrt(det A / det B) matches them.
                let c = (a.determinant() / b.determinant()).sqrt();
                b *= c;
                circuit.push(matchgate(&a, &b, [i, j])?)?;
            }
        }
        FamilyId::D2 | FamilyId::D3 | FamilyId::DN => {
            let (k, label) = match spec.family {
                FamilyId::D2 => (2, GateLabel::D2),
                FamilyId::D3 => (3, GateLabel::D3),
                _ => (n, GateLabel::Dn),
            };
            let mut subsets = combinations(n, k);
            subsets.shuffle(&mut rng);
            for targets in subsets {
                let phases = (0..1usize << k)
                    .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..TAU)))
                    .collect();
                circuit.push(Gate::diagonal(label, targets, phases)?)?;
            }
        }
    }
    Ok(circuit)
}

/// Uniform over the n(n−1) ordered pairs of distinct qubits.
fn ordered_pair<R: Rng>(n: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.random_range(0..n);
    let mut b = rng.random_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Uniform over the C(n,2) unordered pairs, returned ascending.
fn unordered_pair<R: Rng>(n: usize, rng: &mut R) -> (usize, usize) {
    let (a, b) = ordered_pair(n, rng);
    (a.min(b), a.max(b))
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Haar-random `d × d` unitary for `d ∈ {2, 4}`.
pub fn haar_unitary(d: usize, seed: u64) -> Result<CMatrix> {
    haar_unitary_from(d, &mut circuit_rng(seed))
}

/// Ginibre draw orthonormalized by Gram–Schmidt. The implied triangular
/// factor has a real positive diagonal, which is what makes the result
/// Haar distributed.
pub fn haar_unitary_from<R: Rng>(d: usize, rng: &mut R) -> Result<CMatrix> {
    if d != 2 && d != 4 {
        return Err(Error::UnsupportedDimension(d));
    }
    let mut m = CMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    for j in 0..d {
        // Two passes keep the columns orthogonal to machine precision.
        for _ in 0..2 {
            for i in 0..j {
                let proj = m.column(i).dotc(&m.column(j));
                let qi = m.column(i).clone_owned();
                m.column_mut(j).axpy(-proj, &qi, Complex64::new(1.0, 0.0));
            }
        }
        let norm = m.column(j).norm();
        m.column_mut(j).unscale_mut(norm);
    }
    Ok(m)
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn haar_state<R: Rng>(n_qubits: usize, rng: &mut R) -> Result<State> {
    State::normalized((0..1usize << n_qubits).map(|_| complex_gaussian(rng)).collect())
}

/// Tensor product of independent Haar-random single-qubit states.
pub fn random_product_state<R: Rng>(n_qubits: usize, rng: &mut R) -> Result<State> {
    let mut amps = vec![Complex64::new(1.0, 0.0)];
    for _ in 0..n_qubits {
        let u = haar_unitary_from(2, rng)?;
        let (a0, a1) = (u[(0, 0)], u[(1, 0)]);
        amps = amps.iter().flat_map(|&x| [x * a0, x * a1]).collect();
    }
    State::normalized(amps)
}

/// Matchgate `G(A, B)`: `A` on span{|00⟩, |11⟩}, `B` on span{|01⟩, |10⟩}.
pub fn matchgate(a: &CMatrix, b: &CMatrix, targets: [usize; 2]) -> Result<Gate> {
    if a.shape() != (2, 2) || b.shape() != (2, 2) {
        return Err(Error::UnsupportedDimension(a.nrows().max(b.nrows())));
    }
    let gap = (a.determinant() - b.determinant()).norm();
    if gap > 1e-10 {
        return Err(Error::DeterminantMismatch(gap));
    }
    let mut g = CMatrix::zeros(4, 4);
    let outer = [0, 3];
    let inner = [1, 2];
    for r in 0..2 {
        for c in 0..2 {
            g[(outer[r], outer[c])] = a[(r, c)];
            g[(inner[r], inner[c])] = b[(r, c)];
        }
    }
    Gate::sampled(GateLabel::Mg, targets.to_vec(), g)
}
