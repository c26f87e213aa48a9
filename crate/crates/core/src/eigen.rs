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

//! Dense Hermitian eigensolver.
//!
//! Householder reflections reduce the matrix to a complex Hermitian
//! tridiagonal form, a diagonal phase similarity makes it real symmetric,
//! and implicit QL iterations with Wilkinson-type shifts diagonalize that.
//! Only the eigenvectors that are asked for are transformed back.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::CMatrix;

pub const MAX_EIGEN_DIM: usize = 4096;

/// Relative tolerance on `‖H − H†‖_max`.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// QL sweeps allowed per eigenvalue before giving up.
const MAX_SWEEPS: usize = 100;

/// Ascending eigenvalues with eigenvectors stored as matrix columns.
#[derive(Clone, Debug)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigenpairs {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i).iter().copied().collect()
    }
}

/// The `k` lowest eigenpairs of a Hermitian matrix.
///
/// Every returned vector has its first non-negligible amplitude made real
/// positive. Vectors sharing an eigenvalue (within `1e-10·‖H‖_F`) are
/// ordered lexicographically by amplitude, larger leading entries first, so
/// the output does not depend on how the solver happened to rotate a
/// degenerate subspace.
pub fn lowest_eigenpairs(h: &CMatrix, k: usize) -> Result<Eigenpairs> {
    let n = h.nrows();
    if h.ncols() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: h.ncols(),
        });
    }
    if n > MAX_EIGEN_DIM {
        return Err(Error::DimensionGuard {
            dim: n,
            max: MAX_EIGEN_DIM,
        });
    }
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "requested {k} eigenpairs of a {n}×{n} matrix"
        )));
    }
    check_hermitian(h)?;
    if n == 0 || k == 0 {
        return Ok(Eigenpairs {
            values: Vec::new(),
            vectors: CMatrix::zeros(n, 0),
        });
    }

    let fro = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tri = tridiagonalize(h);
    let (values, zt) = tql2(tri.diag.clone(), tri.off.clone())?;

    // Extend past k to the end of any degenerate group straddling it.
    let deg_tol = 1e-10 * fro;
    let mut needed = k;
    while needed < n && values[needed] - values[needed - 1] <= deg_tol {
        needed += 1;
    }

    let mut vecs: Vec<Vec<Complex64>> = (0..needed)
        .map(|j| {
            let mut v = tri.back_transform(&zt[j * n..(j + 1) * n]);
            fix_phase(&mut v);
            v
        })
        .collect();

    let mut start = 0;
    while start < needed {
        let mut end = start + 1;
        while end < needed && values[end] - values[end - 1] <= deg_tol {
            end += 1;
        }
        vecs[start..end].sort_by(|a, b| lex_desc(a, b));
        start = end;
    }

    let mut vectors = CMatrix::zeros(n, k);
    for (j, v) in vecs.iter().take(k).enumerate() {
        vectors.column_mut(j).copy_from_slice(v);
    }
    Ok(Eigenpairs {
        values: values[..k].to_vec(),
        vectors,
    })
}

/// Full spectrum; shorthand for `lowest_eigenpairs(h, dim)`.
pub fn eigh(h: &CMatrix) -> Result<Eigenpairs> {
    lowest_eigenpairs(h, h.nrows())
}

fn check_hermitian(h: &CMatrix) -> Result<()> {
    let n = h.nrows();
    let scale = h.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in r..n {
            worst = worst.max((h[(r, c)] - h[(c, r)].conj()).norm());
        }
    }
    if worst > HERMITIAN_TOL * scale || h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NotHermitian(worst));
    }
    Ok(())
}

/// First amplitude above this magnitude is made real positive.
const PHASE_FLOOR: f64 = 1e-10;

pub(crate) fn fix_phase(v: &mut [Complex64]) {
    if let Some(a) = v.iter().find(|a| a.norm() > PHASE_FLOOR) {
        let phase = a.conj() / a.norm();
        for x in v.iter_mut() {
            *x *= phase;
        }
    }
}

fn lex_desc(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

struct Tridiagonal {
    n: usize,
    diag: Vec<f64>,
    /// `|T[i+1, i]|`, padded with a trailing zero.
    off: Vec<f64>,
    /// Diagonal similarity making the off-diagonal real.
    phases: Vec<Complex64>,
    /// Unit reflector for step `k`, acting on indices `k+1..n`.
    reflectors: Vec<Option<Vec<Complex64>>>,
}

impl Tridiagonal {
    /// Maps an eigenvector of the real tridiagonal form back to the
    /// original basis: `Q · D · z`.
    fn back_transform(&self, z: &[f64]) -> Vec<Complex64> {
        let mut y: Vec<Complex64> = z.iter().zip(&self.phases).map(|(&zi, p)| p * zi).collect();
        for (k, refl) in self.reflectors.iter().enumerate().rev() {
            if let Some(v) = refl {
                let tail = &mut y[k + 1..];
                let s: Complex64 = v.iter().zip(tail.iter()).map(|(vi, yi)| vi.conj() * yi).sum();
                let s2 = s * 2.0;
                for (yi, vi) in tail.iter_mut().zip(v) {
                    *yi -= vi * s2;
                }
            }
        }
        debug_assert_eq!(y.len(), self.n);
        y
    }
}

fn tridiagonalize(h: &CMatrix) -> Tridiagonal {
    let n = h.nrows();
    // Row-major working copy.
    let mut a: Vec<Complex64> = (0..n * n).map(|i| h[(i / n, i % n)]).collect();
    let mut diag = vec![0.0; n];
    let mut sub = vec![Complex64::new(0.0, 0.0); n];
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut v: Vec<Complex64> = (0..m).map(|j| a[(k + 1 + j) * n + k]).collect();
        let sigma2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let x0 = v[0];
        diag[k] = a[k * n + k].re;
        if sigma2 - x0.norm_sqr() <= 0.0 {
            sub[k] = x0;
            reflectors.push(None);
            continue;
        }
        let sigma = sigma2.sqrt();
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * sigma;
        v[0] = x0 - alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= vnorm;
        }
        sub[k] = alpha;

        // Two-sided update of the trailing block B = A[k+1.., k+1..]:
        //   p = 2 B v,  w = p − (v†p) v,  B ← B − v w† − w v†.
        let off = k + 1;
        let mut p = vec![Complex64::new(0.0, 0.0); m];
        for (i, pi) in p.iter_mut().enumerate() {
            let row = &a[(off + i) * n + off..(off + i) * n + n];
            *pi = row.iter().zip(&v).map(|(x, y)| x * y).sum::<Complex64>() * 2.0;
        }
        let c: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let c = c.re;
        let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - vi * c).collect();
        let vc: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
        let wc: Vec<Complex64> = w.iter().map(|z| z.conj()).collect();
        for i in 0..m {
            let (vi, wi) = (v[i], w[i]);
            let row = &mut a[(off + i) * n + off..(off + i) * n + n];
            for j in 0..m {
                row[j] -= vi * wc[j] + wi * vc[j];
            }
        }
        reflectors.push(Some(v));
    }
    if n >= 2 {
        diag[n - 2] = a[(n - 2) * n + n - 2].re;
        sub[n - 2] = a[(n - 1) * n + n - 2];
    }
    diag[n - 1] = a[(n - 1) * n + n - 1].re;

    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    let mut off = vec![0.0; n];
    for j in 0..n - 1 {
        let r = sub[j].norm();
        off[j] = r;
        phases[j + 1] = if r > 0.0 { phases[j] * (sub[j] / r) } else { phases[j] };
    }
    Tridiagonal {
        n,
        diag,
        off,
        phases,
        reflectors,
    }
}

/// Implicit QL on a real symmetric tridiagonal matrix.
///
/// `e[i]` is the coupling between `i` and `i+1`, with `e[n-1] = 0`.
/// Returns ascending eigenvalues and eigenvectors as consecutive rows of a
/// row-major `n × n` buffer.
fn tql2(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    let mut zt = vec![0.0; n * n];
    for i in 0..n {
        zt[i * n + i] = 1.0;
    }
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    let mut sweeps_total = 0usize;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                sweeps_total += 1;
                if sweeps > MAX_SWEEPS {
                    return Err(Error::NoConvergence {
                        iterations: sweeps_total,
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (head, tail) = zt.split_at_mut((i + 1) * n);
                    let zi = &mut head[i * n..];
                    let zi1 = &mut tail[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let hb = *b;
                        *b = s * *a + c * hb;
                        *a = c * *a - s * hb;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)));
    let values = order.iter().map(|&i| d[i]).collect();
    let mut sorted = vec![0.0; n * n];
    for (dst, &src) in order.iter().enumerate() {
        sorted[dst * n..(dst + 1) * n].copy_from_slice(&zt[src * n..(src + 1) * n]);
    }
    Ok((values, sorted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn residual(h: &CMatrix, e: &Eigenpairs) -> f64 {
        (0..e.values.len())
            .map(|i| {
                let v = e.vectors.column(i);
                (h * v - v * c(e.values[i], 0.0)).norm()
            })
            .fold(0.0, f64::max)
    }

    fn orthonormality(e: &Eigenpairs) -> f64 {
        let g = e.vectors.adjoint() * &e.vectors;
        crate::max_abs(&(g - CMatrix::identity(e.values.len(), e.values.len())))
    }

    #[test]
    fn pauli_z_ground_state_is_one() {
        let z = "Z".parse::<PauliString>().unwrap().matrix();
        let e = lowest_eigenpairs(&z, 1).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.vectors[(1, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(e.vectors[(0, 0)].norm() < 1e-15);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = "X".parse::<PauliString>().unwrap().matrix();
        let e = eigh(&x).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        assert!(residual(&x, &e) < 1e-14);
    }

    #[test]
    fn identity_yields_standard_basis_in_order() {
        let e = eigh(&CMatrix::identity(4, 4)).unwrap();
        assert_eq!(e.vectors, CMatrix::identity(4, 4));
    }

    #[test]
    fn degenerate_subspace_is_canonicalized() {
        // −Z⊗I has a doubly degenerate ground space spanned by |00⟩, |01⟩.
        let h = "ZI".parse::<PauliString>().unwrap().matrix() * c(-1.0, 0.0);
        let e = lowest_eigenpairs(&h, 1).unwrap();
        // Extended internally to the whole group, then the lexicographically
        // largest vector (|00⟩) comes first.
        assert!((e.vectors[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        let both = lowest_eigenpairs(&h, 2).unwrap();
        assert!((both.vectors[(1, 1)] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian_and_oversized() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = c(0.0, 1.0);
        assert!(matches!(lowest_eigenpairs(&m, 1), Err(Error::NotHermitian(_))));
        assert!(lowest_eigenpairs(&CMatrix::identity(2, 2), 3).is_err());
    }

    #[test]
    fn one_by_one_and_empty_requests() {
        let m = CMatrix::from_element(1, 1, c(2.5, 0.0));
        let e = eigh(&m).unwrap();
        assert_eq!(e.values, vec![2.5]);
        assert_eq!(lowest_eigenpairs(&m, 0).unwrap().values.len(), 0);
    }

    fn hermitian_from(entries: &[(f64, f64)], n: usize) -> CMatrix {
        let mut m = CMatrix::zeros(n, n);
        let mut it = entries.iter();
        for r in 0..n {
            for col in r..n {
                let &(re, im) = it.next().unwrap();
                if r == col {
                    m[(r, col)] = c(re, 0.0);
                } else {
                    m[(r, col)] = c(re, im);
                    m[(col, r)] = c(re, -im);
                }
            }
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn residuals_and_orthonormality(
            n in 1usize..24,
            entries in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 300),
        ) {
            let h = hermitian_from(&entries, n);
            let e = eigh(&h).unwrap();
            let fro = h.norm();
            prop_assert!(residual(&h, &e) <= 1e-8 * fro.max(1.0));
            prop_assert!(orthonormality(&e) <= 1e-8);
            prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
