//! Exact integer matrix helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Square matrix stored row-major as nested vectors.
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(m: usize) -> IntMatrix {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Determinant by Bareiss fraction-free elimination.
///
/// Every division is exact, so no rational intermediates appear.
pub fn bareiss_determinant(matrix: &IntMatrix) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = matrix.clone();
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
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant by Laplace expansion along the first row. Exponential cost;
/// meant for small matrices and as an independent check on Bareiss.
pub fn cofactor_determinant(matrix: &IntMatrix) -> BigInt {
    let n = matrix.len();
    match n {
        0 => BigInt::one(),
        1 => matrix[0][0].clone(),
        _ => {
            let mut total = BigInt::zero();
            for j in 0..n {
                if matrix[0][j].is_zero() {
                    continue;
                }
                let minor: IntMatrix = matrix[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &matrix[0][j] * cofactor_determinant(&minor);
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
