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

//! Two-qubit unitaries in the Pauli basis, ensemble clouds and a PCA map.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{haar_unitary, sample_circuit, SampleSpec};
use crate::gate::unitarity_error;
use crate::pauli::{Pauli, PauliString};
use crate::CMatrix;

pub const UNITARY_TOL: f64 = 1e-9;
pub const DEFAULT_CLOUD_SIZE: usize = 4000;
pub const CLOUD_WIDTH: usize = 32;

/// The 16 two-qubit Pauli strings II, IX, IY, IZ, XI, …, ZZ.
pub fn two_qubit_basis() -> Vec<PauliString> {
    Pauli::ALL
        .iter()
        .flat_map(|&a| Pauli::ALL.iter().map(move |&b| PauliString::new(vec![a, b])))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliCoefficients {
    pub coeffs: [Complex64; 16],
}

impl PauliCoefficients {
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// re/im interleaved.
    pub fn to_reals(&self) -> [f64; CLOUD_WIDTH] {
        let mut out = [0.0; CLOUD_WIDTH];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.re;
            out[2 * i + 1] = c.im;
        }
        out
    }

    /// Σ c_P P.
    pub fn reconstruct(&self) -> CMatrix {
        let mut m = CMatrix::zeros(4, 4);
        for (c, p) in self.coeffs.iter().zip(two_qubit_basis()) {
            m += p.matrix() * *c;
        }
        m
    }
}

/// c_P = Tr(P† U) / 4.
pub fn pauli_coefficients(u: &CMatrix) -> Result<PauliCoefficients> {
    if u.shape() != (4, 4) {
        return Err(Error::UnsupportedDimension(u.nrows()));
    }
    let err = unitarity_error(u);
    if err > UNITARY_TOL {
        return Err(Error::NonUnitary(err));
    }
    let mut coeffs = [Complex64::new(0.0, 0.0); 16];
    for (slot, p) in coeffs.iter_mut().zip(two_qubit_basis()) {
        // P is Hermitian, and P|c⟩ = phase(c)|c ⊕ x⟩, so
        // Tr(P U) = Σ_c phase(c) U[c, c ⊕ x].
        let (x, z, ny) = p.masks();
        let base = crate::pauli::i_pow(ny);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in 0..4usize {
            let sign = if (c & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            acc += base * sign * u[(c, c ^ x)];
        }
        *slot = acc / 4.0;
    }
    Ok(PauliCoefficients { coeffs })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CloudRow {
    pub family: String,
    pub n_gates: usize,
    pub seed: u64,
    pub values: [f64; CLOUD_WIDTH],
}

/// One row per circuit with seeds `spec.seed + i`.
pub fn ensemble_cloud(spec: &SampleSpec, n_circuits: usize) -> Result<Vec<CloudRow>> {
    if spec.n_qubits != 2 {
        return Err(Error::InvalidSpec(format!(
            "Pauli-space clouds need 2 qubits, got {}",
            spec.n_qubits
        )));
    }
    spec.validate()?;
    let gates = spec.effective_gates();
    (0..n_circuits as u64)
        .into_par_iter()
        .map(|i| {
            let seed = spec.seed.wrapping_add(i);
            let u = sample_circuit(&spec.with_seed(seed))?.unitary()?;
            Ok(CloudRow {
                family: spec.family.to_string(),
                n_gates: gates,
                seed,
                values: pauli_coefficients(&u)?.to_reals(),
            })
        })
        .collect()
}

/// Uniform reference: Haar unitaries on two qubits, family `haar`.
pub fn haar_cloud(n_samples: usize, seed: u64) -> Result<Vec<CloudRow>> {
    (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            Ok(CloudRow {
                family: "haar".to_string(),
                n_gates: 0,
                seed: s,
                values: pauli_coefficients(&haar_unitary(4, s)?)?.to_reals(),
            })
        })
        .collect()
}

/// Euclidean distance of every row to the cloud's centroid.
pub fn centroid_distances(rows: &[Vec<f64>]) -> Vec<f64> {
    if rows.is_empty() {
        return Vec::new();
    }
    let d = rows[0].len();
    let n = rows.len() as f64;
    let mut centroid = vec![0.0; d];
    for r in rows {
        for (c, v) in centroid.iter_mut().zip(r) {
            *c += v / n;
        }
    }
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(&centroid)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    /// One row of `dims` coordinates per input row.
    pub coords: Vec<Vec<f64>>,
    /// Principal axes as unit vectors; zero for padded components.
    pub axes: Vec<Vec<f64>>,
    /// Covariance eigenvalues along each axis (n−1 denominator).
    pub variances: Vec<f64>,
    pub mean: Vec<f64>,
}

/// Projects mean-centered rows onto the top `dims` covariance eigenvectors.
///
/// Each axis is signed so its largest-magnitude loading is positive.
/// Components with numerically zero variance are padded with zeros.
pub fn pca_project(rows: &[Vec<f64>], dims: usize) -> Result<Projection> {
    let n = rows.len();
    if n < dims + 1 {
        return Err(Error::InvalidArgument(format!(
            "PCA to {dims} dimensions needs at least {} rows, got {n}",
            dims + 1
        )));
    }
    let d = rows[0].len();
    if let Some(r) = rows.iter().find(|r| r.len() != d) {
        return Err(Error::LengthMismatch {
            expected: d,
            got: r.len(),
        });
    }
    if dims > d {
        return Err(Error::InvalidArgument(format!("cannot project {d} columns to {dims}")));
    }
    let nf = n as f64;
    let mut mean = vec![0.0; d];
    for r in rows {
        for (m, v) in mean.iter_mut().zip(r) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= nf);
    let centered = DMatrix::from_fn(n, d, |i, j| rows[i][j] - mean[j]);
    let cov = (centered.transpose() * &centered) / (nf - 1.0);
    let eig = SymmetricEigen::new(cov);

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let top = eig.eigenvalues[order[0]].max(0.0);
    let floor = top * 1e-12 * d as f64;

    let mut axes = Vec::with_capacity(dims);
    let mut variances = Vec::with_capacity(dims);
    for &idx in order.iter().take(dims) {
        let lambda = eig.eigenvalues[idx];
        if lambda <= floor || lambda <= 0.0 {
            axes.push(vec![0.0; d]);
            variances.push(0.0);
            continue;
        }
        let mut axis: Vec<f64> = eig.eigenvectors.column(idx).iter().copied().collect();
        let mut lead = 0;
        for (i, v) in axis.iter().enumerate() {
            if v.abs() > axis[lead].abs() * (1.0 + 1e-12) {
                lead = i;
            }
        }
        if axis[lead] < 0.0 {
            axis.iter_mut().for_each(|v| *v = -*v);
        }
        axes.push(axis);
        variances.push(lambda);
    }
    let coords = (0..n)
        .map(|i| {
            axes.iter()
                .map(|a| (0..d).map(|j| centered[(i, j)] * a[j]).sum())
                .collect()
        })
        .collect();
    Ok(Projection {
        coords,
        axes,
        variances,
        mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyId;
    use crate::max_abs;

    #[test]
    fn basis_order() {
        let names: Vec<String> = two_qubit_basis().iter().map(|p| p.to_string()).collect();
        assert_eq!(names[..5], ["II", "IX", "IY", "IZ", "XI"]);
        assert_eq!(names[15], "ZZ");
    }

    #[test]
    fn coefficient_examples() {
        let c = pauli_coefficients(&CMatrix::identity(4, 4)).unwrap();
        assert_eq!(c.coeffs[0], Complex64::new(1.0, 0.0));
        assert!(c.coeffs[1..].iter().all(|z| z.norm() == 0.0));

        let xi: PauliString = "XI".parse().unwrap();
        let c = pauli_coefficients(&xi.matrix()).unwrap();
        for (i, z) in c.coeffs.iter().enumerate() {
            let expect = if i == 4 { 1.0 } else { 0.0 };
            assert!((z - Complex64::new(expect, 0.0)).norm() < 1e-15);
        }
        assert!(pauli_coefficients(&(CMatrix::identity(4, 4) * Complex64::new(2.0, 0.0))).is_err());
    }

    #[test]
    fn haar_reconstruction() {
        for seed in 0..50 {
            let u = haar_unitary(4, seed).unwrap();
            let c = pauli_coefficients(&u).unwrap();
            assert!((c.norm_sqr() - 1.0).abs() < 1e-10);
            assert!(max_abs(&(c.reconstruct() - u)) < 1e-10);
        }
    }

    #[test]
    fn family_clouds_are_normalized() {
        let rows = ensemble_cloud(&SampleSpec::new(FamilyId::MG, 2, 10, 0), 50).unwrap();
        assert_eq!(rows.len(), 50);
        for r in &rows {
            let s: f64 = r.values.iter().map(|v| v * v).sum();
            assert!((s - 1.0).abs() < 1e-9);
        }
        assert!(ensemble_cloud(&SampleSpec::new(FamilyId::G1, 3, 10, 0), 5).is_err());
    }

    #[test]
    fn pca_of_identical_rows() {
        let rows = vec![vec![0.3, -1.0, 2.0]; 6];
        let p = pca_project(&rows, 2).unwrap();
        assert!(p.coords.iter().flatten().all(|v| *v == 0.0));
        assert_eq!(p.variances, vec![0.0, 0.0]);
    }

    #[test]
    fn pca_recovers_a_plane() {
        let u = [1.0, 2.0, 0.0, -1.0];
        let v = [0.5, -0.5, 1.0, 0.0];
        let rows: Vec<Vec<f64>> = (0..20)
            .map(|i| {
                let (a, b) = ((i as f64 * 0.37).sin(), (i as f64 * 0.91).cos());
                (0..4).map(|j| 3.0 + a * u[j] + b * v[j]).collect()
            })
            .collect();
        let p = pca_project(&rows, 2).unwrap();
        for (row, c) in rows.iter().zip(&p.coords) {
            for j in 0..4 {
                let back = p.mean[j] + c[0] * p.axes[0][j] + c[1] * p.axes[1][j];
                assert!((back - row[j]).abs() < 1e-10);
            }
        }
        let p3 = pca_project(&rows, 3).unwrap();
        assert_eq!(p3.variances[2], 0.0);
        assert!(p3.coords.iter().all(|c| c[2] == 0.0));
    }

    #[test]
    fn pca_sign_convention() {
        let rows: Vec<Vec<f64>> = (0..5).map(|i| vec![-(i as f64), 0.1 * i as f64]).collect();
        let p = pca_project(&rows, 1).unwrap();
        let a = &p.axes[0];
        assert!(a[0].abs() >= a[1].abs() && a[0] > 0.0);
    }

    #[test]
    fn centroid_distance_of_symmetric_pair() {
        let d = centroid_distances(&[vec![1.0, 0.0], vec![-1.0, 0.0]]);
        assert_eq!(d, vec![1.0, 1.0]);
    }
}
