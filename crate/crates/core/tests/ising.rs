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

use optqrc::ising::{exact_evolution, sample_ising, trotter_circuit};
use optqrc::{max_abs, CMatrix};
use proptest::prelude::*;

fn spectral_error(p: &optqrc::ising::IsingParams, m: usize, exact: &CMatrix) -> f64 {
    let u = trotter_circuit(p, m).unwrap().unitary().unwrap();
    (u - exact).singular_values().max()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_evolution_is_unitary(seed in any::<u64>(), n in 2usize..=5) {
        let u = exact_evolution(&sample_ising(n, seed).unwrap()).unwrap();
        let d = 1 << n;
        prop_assert!(max_abs(&(u.adjoint() * &u - CMatrix::identity(d, d))) <= 1e-9);
    }
}

#[test]
fn trotter_error_is_monotone_on_a_doubling_ladder() {
    for seed in 0..4 {
        let p = sample_ising(4, seed).unwrap().with_time(1.0);
        let exact = exact_evolution(&p).unwrap();
        let errors: Vec<f64> = [1, 2, 4, 8, 16, 32, 64].iter().map(|&m| spectral_error(&p, m, &exact)).collect();
        assert!(errors.windows(2).all(|w| w[1] <= w[0]), "{errors:?}");
    }
}

#[test]
fn first_order_scaling() {
    // Doubling m halves the error once the steps are short.
    let p = sample_ising(3, 21).unwrap().with_time(1.0);
    let exact = exact_evolution(&p).unwrap();
    let ratio = spectral_error(&p, 64, &exact) / spectral_error(&p, 128, &exact);
    assert!((ratio - 2.0).abs() < 0.1, "{ratio}");
}
