//! Exact integer matrix arithmetic for small square matrices.
//!
//! Inverses are only ever formed as `adj(M)` (or `adj(M)/det M` over the rationals), so
//! integrality of the results is structural.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(dim: usize) -> IntMatrix {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn is_square(m: &IntMatrix) -> bool {
    m.iter().all(|row| row.len() == m.len())
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn minor(m: &IntMatrix, skip_row: usize, skip_col: usize) -> IntMatrix {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip_col)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// Adjugate, the transposed cofactor matrix. `adj(M)·M = M·adj(M) = det(M)·I`.
pub fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    if n == 1 {
        return vec![vec![BigInt::one()]];
    }
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in m.iter().enumerate() {
        for j in 0..row.len() {
            let cofactor = determinant(&minor(m, i, j));
            adj[j][i] = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
        }
    }
    adj
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn scale(a: &IntMatrix, k: &BigInt) -> IntMatrix {
    a.iter()
        .map(|row| row.iter().map(|v| v * k).collect())
        .collect()
}

pub fn add_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
