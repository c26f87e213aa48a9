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


use optqrc::dataset::{build_dataset, linspace, split_dataset, tfim6_archive, Archive, SyntheticSource};
use optqrc::eigen::eigh;
use optqrc::hamiltonian::{format_pauli_sum, parse_pauli_sum, synthetic_family, PauliSum};
use optqrc::{max_abs, CMatrix, Complex64, Pauli, PauliString};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = (f64, PauliString)> {
    (
        -1e3f64..1e3,
        prop::collection::vec(prop::sample::select(Pauli::ALL.to_vec()), 6),
    )
        .prop_map(|(c, ops)| (c, PauliString::new(ops)))
}

fn kron_oracle(h: &PauliSum) -> CMatrix {
    let dim = 1 << h.n_qubits();
    let mut m = CMatrix::zeros(dim, dim);
    for (c, p) in h.terms() {
        let mut t = CMatrix::identity(1, 1);
        for op in p.ops() {
            let a = op.matrix();
            let f = CMatrix::from_row_slice(2, 2, &[a[0][0], a[0][1], a[1][0], a[1][1]]);
            t = t.kronecker(&f);
        }
        m += t * Complex64::new(*c, 0.0);
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn format_then_parse_round_trips(terms in prop::collection::vec(term(), 40)) {
        let h = PauliSum::new(6, terms).unwrap();
        prop_assert_eq!(parse_pauli_sum(&format_pauli_sum(&h)).unwrap(), h);
    }

    #[test]
    fn matrix_matches_kronecker_oracle(terms in prop::collection::vec(term(), 1..12)) {
        let h = PauliSum::new(6, terms).unwrap();
        let m = h.matrix().unwrap();
        prop_assert!(max_abs(&(&m - kron_oracle(&h))) <= 1e-12 * 1e3);
        prop_assert!(max_abs(&(&m - m.adjoint())) <= 1e-12);
    }
}

#[test]
fn tfim_term_count_and_gap() {
    for n in 2..=7 {
        assert_eq!(synthetic_family("tfim-chain", n, 1.3).unwrap().len(), 2 * n - 1);
    }
    let h = synthetic_family("tfim-chain", 2, 1.0).unwrap().matrix().unwrap();
    let full = nalgebra::SymmetricEigen::new(h).eigenvalues;
    let mut e: Vec<f64> = full.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    assert!((e[1] - e[0] - (5f64.sqrt() - 1.0)).abs() < 1e-12);
}

#[test]
fn bundled_dataset_properties() {
    let archive = tfim6_archive().unwrap();
    let d = archive.build().unwrap();
    assert_eq!(d.records.len(), 100);
    assert_eq!(d.split.test.len(), 30);
    assert!(d.excluded.is_empty());
    for (i, rec) in d.records.iter().enumerate() {
        assert!(rec.target > 0.0);
        let h = synthetic_family("tfim-chain", 6, rec.r).unwrap();
        assert!((h.expectation(&rec.ground_state).unwrap() - rec.energies[0]).abs() <= 1e-8);
        let full = eigh(&h.matrix().unwrap()).unwrap().values;
        for k in 0..3 {
            assert!((full[k] - rec.energies[k]).abs() <= 1e-8);
        }
        if i + 1 < d.records.len() {
            let overlap = rec.ground_state.inner(&d.records[i + 1].ground_state).unwrap();
            assert!(overlap.norm() >= 0.99, "R={} overlap {}", rec.r, overlap.norm());
        }
    }
    let test_r: Vec<f64> = d.split.test.iter().map(|&i| d.records[i].r).collect();
    assert!(test_r.iter().all(|r| (0.76..=1.6).contains(r)));
    assert_eq!(d.split.test, (20..50).collect::<Vec<_>>());
}

#[test]
fn checked_in_archive_matches_the_builder() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/tfim6");
    let loaded = Archive::load(&dir).unwrap();
    let built = tfim6_archive().unwrap();
    assert_eq!(loaded.manifest.grid, built.manifest.grid);
    assert_eq!(loaded.source, built.source);
}

#[test]
fn datasets_are_deterministic() {
    let src = SyntheticSource::new("tfim-chain", 4).unwrap();
    let grid = linspace(0.2, 3.0, 30);
    let a = split_dataset(build_dataset(&src, &grid, 2).unwrap(), (0.8, 1.6)).unwrap();
    let b = split_dataset(build_dataset(&src, &grid, 2).unwrap(), (0.8, 1.6)).unwrap();
    assert_eq!(a, b);
}
