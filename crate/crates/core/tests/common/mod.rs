//! Independent reference computations used by the integration tests.
//!
//! Nothing here calls into the library's linear algebra, reshape or ε-form
//! code; every quantity is rebuilt from raw amplitudes.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub type Dense = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    c(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

pub fn gaussian_dense(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Dense {
    (0..rows).map(|_| (0..cols).map(|_| gaussian(rng)).collect()).collect()
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &Dense) -> Complex64 {
    let n = m.len();
    match n {
        0 => c(1.0, 0.0),
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut total = c(0.0, 0.0);
            for j in 0..n {
                let minor: Dense = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                    .collect();
                let term = m[0][j] * cofactor_det(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

pub fn dense_matmul(a: &Dense, b: &Dense) -> Dense {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ar, ac, br, bc) = (a.len(), a[0].len(), b.len(), b[0].len());
    (0..ar * br)
        .map(|i| (0..ac * bc).map(|j| a[i / br][j / bc] * b[i % br][j % bc]).collect())
        .collect()
}

/// `ε^{⊗m}` built by repeated Kronecker products.
pub fn dense_epsilon(m: usize) -> Dense {
    let eps = vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(-1.0, 0.0), c(0.0, 0.0)]];
    let mut g = vec![vec![c(1.0, 0.0)]];
    for _ in 0..m {
        g = kron(&g, &eps);
    }
    g
}

/// `σ_y^{⊗m}`.
pub fn dense_sigma_y(m: usize) -> Dense {
    let sy = vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]];
    let mut g = vec![vec![c(1.0, 0.0)]];
    for _ in 0..m {
        g = kron(&g, &sy);
    }
    g
}

pub fn mat_vec(m: &Dense, v: &[Complex64]) -> Vec<Complex64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Bit of qubit `k` (1-based, first qubit most significant) in an index.
pub fn bit(index: usize, n: usize, k: usize) -> usize {
    (index >> (n - k)) & 1
}

/// Coefficient matrix built by decoding every amplitude index bit by bit.
pub fn naive_reshape(amps: &[Complex64], n: usize, selected: &[usize]) -> Dense {
    let unselected: Vec<usize> = (1..=n).filter(|k| !selected.contains(k)).collect();
    let mut z = vec![vec![c(0.0, 0.0); 1 << selected.len()]; 1 << unselected.len()];
    for (idx, &amp) in amps.iter().enumerate() {
        let row = unselected.iter().fold(0, |acc, &k| (acc << 1) | bit(idx, n, k));
        let col = selected.iter().fold(0, |acc, &k| (acc << 1) | bit(idx, n, k));
        z[row][col] = amp;
    }
    z
}

/// Reduced density matrix of the selected qubits by explicit partial trace.
pub fn reduced_density(amps: &[Complex64], n: usize, selected: &[usize]) -> Dense {
    let dim = 1 << selected.len();
    let mut rho = vec![vec![c(0.0, 0.0); dim]; dim];
    let key = |idx: usize| selected.iter().fold(0, |acc, &k| (acc << 1) | bit(idx, n, k));
    let rest = |idx: usize| (1..=n).filter(|k| !selected.contains(k)).fold(0, |acc, k| (acc << 1) | bit(idx, n, k));
    for i in 0..amps.len() {
        for j in 0..amps.len() {
            if rest(i) == rest(j) {
                rho[key(i)][key(j)] += amps[i] * amps[j].conj();
            }
        }
    }
    rho
}

/// Three-tangle from Cayley's hyperdeterminant, `4 |d1 - 2 d2 + 4 d3|`.
pub fn cayley_tangle(a: &[Complex64]) -> f64 {
    let d1 = a[0] * a[0] * a[7] * a[7]
        + a[1] * a[1] * a[6] * a[6]
        + a[2] * a[2] * a[5] * a[5]
        + a[4] * a[4] * a[3] * a[3];
    let d2 = a[0] * a[7] * a[3] * a[4]
        + a[0] * a[7] * a[5] * a[2]
        + a[0] * a[7] * a[6] * a[1]
        + a[3] * a[4] * a[5] * a[2]
        + a[3] * a[4] * a[6] * a[1]
        + a[5] * a[2] * a[6] * a[1];
    let d3 = a[0] * a[6] * a[5] * a[3] + a[7] * a[1] * a[2] * a[4];
    4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm()
}

/// `E` for an `l = 2` partition by the full double sum `2 |P_αβ P^αβ|`, with
/// indices raised through the dense form.
pub fn brute_force_two_column_e(z: &Dense, m: usize) -> f64 {
    let g = dense_epsilon(m);
    let rows = z.len();
    let p = |a: usize, b: usize| z[a][0] * z[b][1] - z[b][0] * z[a][1];
    let mut total = c(0.0, 0.0);
    for a in 0..rows {
        for b in 0..rows {
            let mut raised = c(0.0, 0.0);
            for g1 in 0..rows {
                if g[a][g1] == c(0.0, 0.0) {
                    continue;
                }
                for g2 in 0..rows {
                    raised += g[a][g1] * g[b][g2] * p(g1, g2);
                }
            }
            total += p(a, b) * raised;
        }
    }
    2.0 * total.norm()
}

/// All increasing `size`-subsets of `[0, n)`.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in subsets(n, size - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                let mut v = vec![first];
                v.extend(rest);
                out.push(v);
            }
        }
    }
    out.sort();
    out
}

pub fn select_rows(z: &Dense, rows: &[usize]) -> Dense {
    rows.iter().map(|&r| z[r].clone()).collect()
}

/// `(Σ |P_c|², Σ P_c (gZ)_c)` by explicit minor enumeration.
pub fn minor_sums(z: &Dense, m: usize) -> (f64, Complex64) {
    let raised = dense_matmul(&dense_epsilon(m), z);
    let mut herm = 0.0;
    let mut bil = c(0.0, 0.0);
    for rows in subsets(z.len(), z[0].len()) {
        let p = cofactor_det(&select_rows(z, &rows));
        let q = cofactor_det(&select_rows(&raised, &rows));
        herm += p.norm_sqr();
        bil += p * q;
    }
    (herm, bil)
}

pub fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

pub fn crel(a: Complex64, b: Complex64) -> f64 {
    let s = a.norm().max(b.norm());
    if s == 0.0 {
        0.0
    } else {
        (a - b).norm() / s
    }
}
