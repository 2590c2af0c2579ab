//! Seeded randomized checks, shipped so the CLI can re-run them on demand.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classifier::{Sign, SignedPermutation};
use crate::factorizer::factor_isomorphism;
use crate::ring::{degree_one_element, reduce, verify_nonvanishing_powers, RingElement, RingSpec};

/// A random spec with `1..=max_rank` generators and exponents in
/// `1..=max_exponent`.
pub fn random_spec<R: Rng>(rng: &mut R, max_rank: usize, max_exponent: u32) -> RingSpec {
    let m = rng.random_range(1..=max_rank);
    RingSpec::new((0..m).map(|_| rng.random_range(1..=max_exponent)).collect::<Vec<_>>())
        .expect("positive exponents")
}

/// Up to `max_terms` random monomials with coefficients in `[-9, 9]`.
pub fn random_element<R: Rng>(rng: &mut R, spec: &RingSpec, max_terms: usize) -> RingElement {
    let count = rng.random_range(0..=max_terms);
    let raw: Vec<(Vec<u32>, BigInt)> = (0..count)
        .map(|_| {
            let exps = spec
                .exponents()
                .iter()
                .map(|&n| rng.random_range(0..=n))
                .collect();
            (exps, BigInt::from(rng.random_range(-9i64..=9)))
        })
        .collect();
    reduce(raw, spec).expect("lengths match")
}

pub fn random_coefficients<R: Rng>(rng: &mut R, m: usize, full_support: bool) -> Vec<i64> {
    (0..m)
        .map(|_| loop {
            let a = rng.random_range(-9i64..=9);
            if !full_support || a != 0 {
                break a;
            }
        })
        .collect()
}

/// A uniformly random dimension-respecting signed permutation.
pub fn random_signed_permutation<R: Rng>(rng: &mut R, spec: &RingSpec) -> SignedPermutation {
    let m = spec.rank();
    let mut sigma: Vec<usize> = (0..m).collect();
    let mut by_exponent: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
    for i in 0..m {
        by_exponent.entry(spec.exponent(i)).or_default().push(i);
    }
    for block in by_exponent.values() {
        let mut images = block.clone();
        images.shuffle(rng);
        for (&i, &j) in block.iter().zip(&images) {
            sigma[i] = j;
        }
    }
    let signs = (0..m)
        .map(|_| if rng.random_bool(0.5) { Sign::Minus } else { Sign::Plus })
        .collect();
    SignedPermutation::new(spec, sigma, signs).expect("blocks respected")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn ring_axioms(rng: &mut ChaCha8Rng) -> bool {
    let spec = random_spec(rng, 3, 4);
    let a = random_element(rng, &spec, 6);
    let b = random_element(rng, &spec, 6);
    let c = random_element(rng, &spec, 6);
    let add = |x: &RingElement, y: &RingElement| x.try_add(y).unwrap();
    let mul = |x: &RingElement, y: &RingElement| x.try_mul(y).unwrap();
    add(&a, &b) == add(&b, &a)
        && mul(&a, &b) == mul(&b, &a)
        && add(&add(&a, &b), &c) == add(&a, &add(&b, &c))
        && mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c))
        && mul(&a, &add(&b, &c)) == add(&mul(&a, &b), &mul(&a, &c))
        && add(&a, &spec.zero()) == a
        && mul(&a, &spec.one()) == a
}

fn nonvanishing(rng: &mut ChaCha8Rng) -> bool {
    let spec = random_spec(rng, 4, 6);
    let coeffs = random_coefficients(rng, spec.rank(), false);
    verify_nonvanishing_powers(coeffs, &spec)
        .map(|r| r.iter().all(|c| c.nonzero))
        .unwrap_or(false)
}

fn nilpotency_full_support(rng: &mut ChaCha8Rng) -> bool {
    let spec = random_spec(rng, 3, 4);
    let coeffs = random_coefficients(rng, spec.rank(), true);
    let y = degree_one_element(coeffs, &spec).unwrap();
    y.nilpotency_order().ok() == Some(spec.top_degree() + 1)
}

fn multiplicativity(rng: &mut ChaCha8Rng) -> bool {
    let spec = random_spec(rng, 3, 3);
    let psi = random_signed_permutation(rng, &spec).to_substitution();
    let a = random_element(rng, &spec, 5);
    let b = random_element(rng, &spec, 5);
    let lhs = psi.apply(&a.try_mul(&b).unwrap()).unwrap();
    let rhs = psi
        .apply(&a)
        .unwrap()
        .try_mul(&psi.apply(&b).unwrap())
        .unwrap();
    lhs == rhs
}

fn factorization(rng: &mut ChaCha8Rng) -> bool {
    let spec = random_spec(rng, 4, 3);
    let phi = random_signed_permutation(rng, &spec).to_substitution();
    let h_star = random_signed_permutation(rng, &spec).to_substitution();
    factor_isomorphism(&phi, &h_star)
        .map(|f| f.certificate.verified() && f.f_star == phi)
        .unwrap_or(false)
}

type Check = fn(&mut ChaCha8Rng) -> bool;

/// Runs every randomized check `trials` times from one seed.
pub fn run(seed: u64, trials: usize) -> Vec<CheckOutcome> {
    let checks: [(&'static str, Check); 5] = [
        ("ring-axioms", ring_axioms),
        ("nonvanishing-powers", nonvanishing),
        ("nilpotency-full-support", nilpotency_full_support),
        ("substitution-multiplicativity", multiplicativity),
        ("factorization-certificate", factorization),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    checks
        .iter()
        .map(|&(name, check)| {
            let failures = (0..trials).filter(|_| !check(&mut rng)).count();
            CheckOutcome {
                name,
                trials,
                failures,
            }
        })
        .collect()
}
