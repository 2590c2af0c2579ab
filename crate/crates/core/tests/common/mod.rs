//! Independent oracles shared by the integration tests. Nothing here calls
//! the crate's multiplication, truncation or determinant code.
#![allow(dead_code)]

pub mod golden;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rigidity_core::{reduce, RingElement, RingSpec};

/// Untruncated polynomial: exponent vector -> coefficient.
pub type Poly = BTreeMap<Vec<u32>, BigInt>;

pub fn spec(n: &[u32]) -> RingSpec {
    RingSpec::new(n.to_vec()).unwrap()
}

pub fn to_poly(e: &RingElement) -> Poly {
    e.terms()
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect()
}

pub fn naive_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Full convolution first, truncation only at the end.
pub fn naive_product(a: &RingElement, b: &RingElement) -> RingElement {
    let raw = naive_mul(&to_poly(a), &to_poly(b));
    reduce(raw, a.spec()).unwrap()
}

pub fn linear_poly(coeffs: &[i64]) -> Poly {
    let m = coeffs.len();
    let mut p = Poly::new();
    for (j, &a) in coeffs.iter().enumerate() {
        if a != 0 {
            let mut e = vec![0; m];
            e[j] = 1;
            p.insert(e, BigInt::from(a));
        }
    }
    p
}

/// `(sum a_j x_j)^k` with no truncation at all.
pub fn naive_linear_power(coeffs: &[i64], k: u32) -> Poly {
    let mut acc = Poly::new();
    acc.insert(vec![0; coeffs.len()], BigInt::from(1));
    let y = linear_poly(coeffs);
    for _ in 0..k {
        acc = naive_mul(&acc, &y);
    }
    acc
}

pub fn in_box(mono: &[u32], exps: &[u32]) -> bool {
    mono.iter().zip(exps).all(|(e, n)| e <= n)
}

/// Whether `(sum a_j x_j)^k` lies in the ideal `(x_i^{n_i+1})`.
pub fn oracle_power_vanishes(coeffs: &[i64], exps: &[u32], k: u32) -> bool {
    naive_linear_power(coeffs, k)
        .iter()
        .all(|(m, c)| !in_box(m, exps) || c.is_zero())
}

pub fn oracle_det(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return i128::from(rows[0][0]);
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = rows[1..]
                .iter()
                .map(|r| [&r[..j], &r[j + 1..]].concat())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * i128::from(rows[0][j]) * oracle_det(&minor)
        })
        .sum()
}

pub fn oracle_is_automorphism(rows: &[Vec<i64>], exps: &[u32]) -> bool {
    rows.iter()
        .zip(exps)
        .all(|(r, &n)| oracle_power_vanishes(r, exps, n + 1))
        && oracle_det(rows).abs() == 1
}

/// Every matrix in `[-bound, bound]^{m x m}` passing the oracle, in
/// row-major lexicographic order.
pub fn brute_force_automorphisms(exps: &[u32], bound: i64) -> Vec<Vec<Vec<i64>>> {
    let m = exps.len();
    let cells = m * m;
    let base = 2 * bound + 1;
    let total = base.pow(cells as u32);
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut flat = vec![0i64; cells];
        for slot in flat.iter_mut().rev() {
            *slot = idx % base - bound;
            idx /= base;
        }
        let rows: Vec<Vec<i64>> = flat.chunks(m).map(<[i64]>::to_vec).collect();
        if oracle_is_automorphism(&rows, exps) {
            out.push(rows);
        }
    }
    out
}

pub fn matrix_i64(psi: &rigidity_core::LinearSubstitution) -> Vec<Vec<i64>> {
    psi.matrix()
        .iter()
        .map(|r| r.iter().map(|v| i64::try_from(v).unwrap()).collect())
        .collect()
}
