#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use slicegate_core::SeifertMatrix;

/// Random `V` with `V − Vᵀ` the standard symplectic form, so always a valid
/// Seifert matrix. Entries stay in `[-5, 5]`.
pub fn random_valid_matrix<R: Rng>(rng: &mut R, n: usize) -> SeifertMatrix {
    assert!(n % 2 == 0);
    let mut v = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let hi = if j == i + 1 && i % 2 == 0 { 4 } else { 5 };
            let a = rng.gen_range(-5..=hi);
            v[i][j] = a;
            v[j][i] = a;
        }
    }
    for i in (0..n).step_by(2) {
        v[i][i + 1] += 1;
    }
    SeifertMatrix::new(v).expect("symplectic difference")
}

/// Product of random elementary matrices: integer with determinant ±1.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<i64>> {
    let mut p: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..(2 * n) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = rng.gen_range(-2..=2);
                for row in p.iter_mut() {
                    row[i] += k * row[j];
                }
            }
            1 if i != j => {
                for row in p.iter_mut() {
                    row.swap(i, j);
                }
            }
            _ => {
                for row in p.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    p
}

/// Signature of `V + Vᵀ` by counting floating-point eigenvalue signs.
pub fn float_signature(v: &[Vec<i64>]) -> i64 {
    let n = v.len();
    if n == 0 {
        return 0;
    }
    let m = DMatrix::from_fn(n, n, |i, j| (v[i][j] + v[j][i]) as f64);
    let eig = m.symmetric_eigenvalues();
    let pos = eig.iter().filter(|e| **e > 1e-7).count() as i64;
    let neg = eig.iter().filter(|e| **e < -1e-7).count() as i64;
    pos - neg
}

/// Determinant of `V − Vᵀ` by cofactor expansion, small `n` only.
pub fn antisym_det(v: &[Vec<i64>]) -> i128 {
    let n = v.len();
    let m: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| (v[i][j] - v[j][i]) as i128).collect())
        .collect();
    cofactor_det(&m)
}

fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| *x).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * cofactor_det(&minor)
        })
        .sum()
}

/// GF(2) quadratic form `x ↦ xVxᵀ` Arf invariant by majority vote,
/// independent of the library's Gray-code sum.
pub fn arf_by_majority(v: &[Vec<i64>]) -> u8 {
    let n = v.len();
    let total = 1u64 << n;
    let mut ones = 0u64;
    for x in 0..total {
        let mut q = 0i64;
        for i in 0..n {
            if x >> i & 1 == 1 {
                for j in 0..n {
                    if x >> j & 1 == 1 {
                        q += v[i][j];
                    }
                }
            }
        }
        ones += (q.rem_euclid(2)) as u64;
    }
    u8::from(ones > total / 2)
}
