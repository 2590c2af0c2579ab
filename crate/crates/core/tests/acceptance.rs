//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion, and exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_force_automorphisms, matrix_i64, naive_product, spec};
use rigidity_core::classifier::{
    as_signed_permutation, enumerate_automorphisms, exhaustive_scan, off_block_violations,
    vanishing_rule_violations, verify_structure_theorem, BoxScan, SearchConfig, DEFAULT_CEILING,
};
use rigidity_core::selftest::{random_coefficients, random_element, random_spec};
use rigidity_core::{
    degree_one_element, factor_isomorphism, realize, verify_nonvanishing_powers, RingElement,
};

/// (exponents, bound, expected automorphism count)
const STRUCTURE_CASES: &[(&[u32], u32, usize)] = &[
    (&[1, 1], 3, 8),
    (&[1, 2], 2, 4),
    (&[2, 2], 2, 8),
    (&[1, 1, 1], 1, 48),
    (&[1, 1, 2], 1, 16),
    (&[1, 2, 3], 1, 8),
];

/// `2^m` times the factorials of exponent multiplicities, counted directly.
fn closed_form_order(exps: &[u32]) -> usize {
    let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
    for &n in exps {
        *mult.entry(n).or_default() += 1;
    }
    let fact = |k: usize| (1..=k).product::<usize>();
    (1usize << exps.len()) * mult.values().map(|&k| fact(k)).product::<usize>()
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1(scans: &mut Vec<BoxScan>) -> Outcome {
    let start = Instant::now();
    let mut total_candidates = 0u128;
    for &(exps, bound, expected) in STRUCTURE_CASES {
        let s = spec(exps);
        ensure(closed_form_order(exps) == expected, || {
            format!("{exps:?}: closed form {} != {expected}", closed_form_order(exps))
        })?;
        let report = verify_structure_theorem(&s, &SearchConfig::with_bound(bound))
            .map_err(|e| format!("{exps:?}: {e}"))?;
        let side = (2 * bound as u128 + 1).pow((exps.len() * exps.len()) as u32);
        ensure(report.candidates_scanned == side, || {
            format!("{exps:?}: scanned {} of {side}", report.candidates_scanned)
        })?;
        ensure(report.biconditional_holds, || {
            format!("{exps:?}: counterexamples {:?}", report.counterexamples)
        })?;
        ensure(report.automorphisms_found == expected, || {
            format!("{exps:?}: found {} expected {expected}", report.automorphisms_found)
        })?;
        ensure(report.predicted_order == BigUint::from(expected), || {
            format!("{exps:?}: predicted {}", report.predicted_order)
        })?;

        let scan = exhaustive_scan(&s, bound, DEFAULT_CEILING).map_err(|e| e.to_string())?;
        let oracle = brute_force_automorphisms(exps, i64::from(bound));
        let found: Vec<_> = scan.automorphisms.iter().map(matrix_i64).collect();
        ensure(found == oracle, || format!("{exps:?}: scan disagrees with brute-force oracle"))?;
        total_candidates += scan.candidates;
        scans.push(scan);
    }
    Ok(format!(
        "6 specs, {total_candidates} candidates, counts 8/4/8/48/16/8, {:.1?}",
        start.elapsed()
    ))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2_1);
    let mut checked = 0usize;
    for trial in 0..1000 {
        let s = random_spec(&mut rng, 4, 6);
        let coeffs = random_coefficients(&mut rng, s.rank(), false);
        let report = verify_nonvanishing_powers(coeffs.iter().copied(), &s).map_err(|e| e.to_string())?;
        ensure(report.iter().all(|c| c.nonzero), || {
            format!("trial {trial}: spec {s} coeffs {coeffs:?} report {report:?}")
        })?;
        checked += report.len();
    }
    Ok(format!("1000 random pairs, {checked} powers nonzero"))
}

fn criterion_3() -> Outcome {
    let mut cases: Vec<(&[u32], u32)> = STRUCTURE_CASES
        .iter()
        .filter(|c| c.0.len() <= 2)
        .map(|c| (c.0, c.1))
        .collect();
    cases.push((&[1, 1, 1], 1));
    for &(exps, bound) in &cases {
        let s = spec(exps);
        let cfg = SearchConfig::with_bound(bound);
        let off = enumerate_automorphisms(&s, &cfg).map_err(|e| e.to_string())?;
        let on = enumerate_automorphisms(&s, &cfg.pruned()).map_err(|e| e.to_string())?;
        ensure(off == on, || format!("{exps:?} bound {bound}: {} vs {}", off.len(), on.len()))?;
    }
    Ok(format!("{} spec/bound pairs identical", cases.len()))
}

fn criterion_4(scans: &[BoxScan]) -> Outcome {
    let mut endos = 0usize;
    let mut unimodular = 0usize;
    for scan in scans {
        for (psi, det) in &scan.endomorphisms {
            endos += 1;
            let v = vanishing_rule_violations(psi);
            ensure(v.is_empty(), || format!("{psi:?}: b_ij != 0 with n_i < n_j at {v:?}"))?;
            if det.abs() == BigInt::from(1) {
                unimodular += 1;
                let o = off_block_violations(psi);
                ensure(o.is_empty(), || format!("{psi:?}: off-block entries at {o:?}"))?;
            }
        }
    }
    ensure(!scans.is_empty(), || "criterion 1 produced no scans".into())?;
    Ok(format!("{endos} endomorphisms, {unimodular} unimodular, no violations"))
}

fn criterion_5() -> Outcome {
    let families: &[&[u32]] = &[&[1, 1], &[2, 3], &[1, 2, 3], &[3, 1, 3, 2], &[5]];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5);
    for exps in families {
        let s = spec(exps);
        let add = |x: &RingElement, y: &RingElement| x.try_add(y).unwrap();
        let mul = |x: &RingElement, y: &RingElement| x.try_mul(y).unwrap();
        for trial in 0..1000 {
            let a = random_element(&mut rng, &s, 6);
            let b = random_element(&mut rng, &s, 6);
            let c = random_element(&mut rng, &s, 6);
            let ok = add(&a, &b) == add(&b, &a)
                && mul(&a, &b) == mul(&b, &a)
                && add(&add(&a, &b), &c) == add(&a, &add(&b, &c))
                && mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c))
                && mul(&a, &add(&b, &c)) == add(&mul(&a, &b), &mul(&a, &c))
                && add(&a, &s.zero()) == a
                && mul(&a, &s.one()) == a;
            ensure(ok, || format!("{exps:?} trial {trial}: axioms fail for {a}, {b}, {c}"))?;
        }
        for trial in 0..1000 {
            let a = random_element(&mut rng, &s, 8);
            let b = random_element(&mut rng, &s, 8);
            ensure(mul(&a, &b) == naive_product(&a, &b), || {
                format!("{exps:?} trial {trial}: ({a}) * ({b}) disagrees with oracle")
            })?;
        }
    }
    Ok(format!("{} families x (1000 triples + 1000 oracle pairs)", families.len()))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6);
    let mut specs = 0;
    for m in 1..=3u32 {
        for code in 0..4u32.pow(m) {
            let exps: Vec<u32> = (0..m).map(|i| (code / 4u32.pow(i)) % 4 + 1).collect();
            let s = spec(&exps);
            specs += 1;
            for _ in 0..100 {
                let coeffs = random_coefficients(&mut rng, exps.len(), true);
                let y = degree_one_element(coeffs.iter().copied(), &s).unwrap();
                let order = y.nilpotency_order().map_err(|e| e.to_string())?;
                ensure(order == s.top_degree() + 1, || {
                    format!("spec {s} coeffs {coeffs:?}: order {order}")
                })?;
            }
        }
    }
    Ok(format!("{specs} specs x 100 full-support vectors"))
}

fn criterion_7(scans: &[BoxScan]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7);
    for trial in 0..500 {
        let scan = &scans[rng.random_range(0..scans.len())];
        let phi = scan.automorphisms.choose(&mut rng).unwrap();
        let h_star = scan.automorphisms.choose(&mut rng).unwrap();
        let f = factor_isomorphism(phi, h_star).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(f.certificate.verified() && &f.f_star == phi, || {
            format!("trial {trial}: certificate {:?}", f.certificate)
        })?;
        for i in 0..phi.spec().rank() {
            let x = phi.spec().generator(i).unwrap();
            let chased = phi.apply(&h_star.apply(&x).unwrap()).unwrap();
            ensure(f.g.apply(&x).unwrap() == chased, || format!("trial {trial}: g != phi . h*"))?;
        }
        let normal = as_signed_permutation(&f.g).map_err(|why| format!("trial {trial}: {why}"))?;
        ensure(realize(&normal).induced == f.g, || format!("trial {trial}: realize does not reproduce g"))?;
    }
    Ok("500 random (phi, h_star) pairs certified".into())
}

fn criterion_8() -> Outcome {
    let failures: Vec<String> = common::golden::CASES
        .iter()
        .filter_map(|c| common::golden::check_case(c).err())
        .collect();
    ensure(failures.is_empty(), || failures.join("\n"))?;
    Ok(format!("{} golden transcripts byte-identical", common::golden::CASES.len()))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let result = panic::catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
    match result {
        Ok(detail) => {
            println!("PASS {name}: {detail}");
            true
        }
        Err(why) => {
            println!("FAIL {name}: {why}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut scans = Vec::new();
    let results = [
        run("criterion 1 (exhaustive biconditional)", || criterion_1(&mut scans)),
        run("criterion 2 (nonvanishing powers)", criterion_2),
        run("criterion 3 (pruning equivalence)", criterion_3),
        run("criterion 4 (vanishing and off-block rules)", || criterion_4(&scans)),
        run("criterion 5 (ring axioms and product oracle)", criterion_5),
        run("criterion 6 (full-support nilpotency)", criterion_6),
        run("criterion 7 (factorization round trip)", || {
            if scans.iter().any(|s| s.automorphisms.is_empty()) || scans.is_empty() {
                return Err("criterion 1 scans unavailable".into());
            }
            criterion_7(&scans)
        }),
        run("criterion 8 (CLI golden files)", criterion_8),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
