//! Classification of graded automorphisms of the truncated ring as signed
//! permutations, with exhaustive searches that check the classification
//! instead of assuming it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::morphism::LinearSubstitution;
use crate::ring::{degree_one_element, RingSpec};

/// Default refusal threshold for exhaustive searches.
pub const DEFAULT_CEILING: u128 = 100_000_000;

/// Distinct exponents `N_1 > ... > N_k` with their index blocks
/// `J_l = { i : n_i = N_l }` (zero-based indices, ascending inside a block).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    distinct: Vec<u32>,
    blocks: Vec<Vec<usize>>,
    lower_unions: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl DegreeProfile {
    pub fn distinct_exponents(&self) -> &[u32] {
        &self.distinct
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `J_{<l}`: indices whose exponent is strictly smaller than `N_l`.
    pub fn lower_union(&self, l: usize) -> &[usize] {
        &self.lower_unions[l]
    }

    /// Block number `l` containing index `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn block_count(&self) -> usize {
        self.distinct.len()
    }
}

pub fn degree_profile(spec: &RingSpec) -> DegreeProfile {
    let mut grouped: BTreeMap<std::cmp::Reverse<u32>, Vec<usize>> = BTreeMap::new();
    for (i, &n) in spec.exponents().iter().enumerate() {
        grouped.entry(std::cmp::Reverse(n)).or_default().push(i);
    }
    let distinct: Vec<u32> = grouped.keys().map(|r| r.0).collect();
    let blocks: Vec<Vec<usize>> = grouped.into_values().collect();
    let mut block_of = vec![0; spec.rank()];
    for (l, block) in blocks.iter().enumerate() {
        for &i in block {
            block_of[i] = l;
        }
    }
    let lower_unions = (0..blocks.len())
        .map(|l| {
            let mut lower: Vec<usize> = blocks[l + 1..].iter().flatten().copied().collect();
            lower.sort_unstable();
            lower
        })
        .collect();
    DegreeProfile {
        distinct,
        blocks,
        lower_unions,
        block_of,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn from_unit(v: &BigInt) -> Option<Sign> {
        if v.is_one() {
            Some(Sign::Plus)
        } else if (-v).is_one() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn to_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// `psi(x_i) = signs[i] * x_{sigma[i]}`, zero-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    spec: RingSpec,
    sigma: Vec<usize>,
    signs: Vec<Sign>,
}

impl SignedPermutation {
    /// Validates that `sigma` is a permutation preserving the exponents.
    pub fn new(spec: &RingSpec, sigma: Vec<usize>, signs: Vec<Sign>) -> Result<Self> {
        let m = spec.rank();
        spec.check_len(sigma.len())?;
        spec.check_len(signs.len())?;
        let mut seen = vec![false; m];
        for &s in &sigma {
            if s >= m || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{:?} is not a permutation of 1..={m}",
                    sigma.iter().map(|s| s + 1).collect::<Vec<_>>()
                )));
            }
        }
        if let Some(i) = (0..m).find(|&i| spec.exponent(i) != spec.exponent(sigma[i])) {
            return Err(Error::InvalidPermutation(format!(
                "x{} -> x{} joins exponents {} and {}",
                i + 1,
                sigma[i] + 1,
                spec.exponent(i),
                spec.exponent(sigma[i])
            )));
        }
        Ok(Self {
            spec: spec.clone(),
            sigma,
            signs,
        })
    }

    pub fn identity(spec: &RingSpec) -> Self {
        let m = spec.rank();
        Self {
            spec: spec.clone(),
            sigma: (0..m).collect(),
            signs: vec![Sign::Plus; m],
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn to_substitution(&self) -> LinearSubstitution {
        let m = self.spec.rank();
        let matrix: IntMatrix = (0..m)
            .map(|i| {
                let mut row = vec![BigInt::zero(); m];
                row[self.sigma[i]] = BigInt::from(self.signs[i].to_int());
                row
            })
            .collect();
        LinearSubstitution::new(&self.spec, matrix).expect("square by construction")
    }

    /// `x_{sigma(i)} -> signs[i] x_i`, computed on the permutation directly.
    pub fn inverse(&self) -> SignedPermutation {
        let m = self.spec.rank();
        let mut sigma = vec![0; m];
        let mut signs = vec![Sign::Plus; m];
        for i in 0..m {
            sigma[self.sigma[i]] = i;
            signs[self.sigma[i]] = self.signs[i];
        }
        SignedPermutation {
            spec: self.spec.clone(),
            sigma,
            signs,
        }
    }

    /// `x -> outer(inner(x))`, matching [`crate::morphism::compose`].
    pub fn compose(outer: &SignedPermutation, inner: &SignedPermutation) -> Result<SignedPermutation> {
        outer.spec.check_same(&inner.spec)?;
        let (sigma, signs) = inner
            .sigma
            .iter()
            .zip(&inner.signs)
            .map(|(&s, &e)| (outer.sigma[s], e.times(outer.signs[s])))
            .unzip();
        Ok(SignedPermutation {
            spec: outer.spec.clone(),
            sigma,
            signs,
        })
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation[{}]({})", self.spec, self)
    }
}

/// `x1 -> -x2, x2 -> x1`
impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (&s, e)) in self.sigma.iter().zip(&self.signs).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let minus = if e.is_negative() { "-" } else { "" };
            write!(f, "x{} -> {minus}x{}", i + 1, s + 1)?;
        }
        Ok(())
    }
}

/// Reason a matrix has no signed-permutation normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormalFormFailure {
    NotMonomialMatrix,
    EntryNotUnit,
    ProfileViolation,
}

impl NormalFormFailure {
    pub fn code(self) -> &'static str {
        match self {
            NormalFormFailure::NotMonomialMatrix => "not-monomial-matrix",
            NormalFormFailure::EntryNotUnit => "entry-not-unit",
            NormalFormFailure::ProfileViolation => "profile-violation",
        }
    }
}

impl fmt::Display for NormalFormFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Reads `psi(x_i) = +-x_{sigma(i)}` off the matrix.
pub fn as_signed_permutation(
    psi: &LinearSubstitution,
) -> std::result::Result<SignedPermutation, NormalFormFailure> {
    let spec = psi.spec();
    let m = spec.rank();
    let mut sigma = Vec::with_capacity(m);
    let mut hit = vec![false; m];
    for row in psi.matrix() {
        let mut nonzero = row.iter().enumerate().filter(|(_, v)| !v.is_zero());
        let j = match (nonzero.next(), nonzero.next()) {
            (Some((j, _)), None) => j,
            _ => return Err(NormalFormFailure::NotMonomialMatrix),
        };
        if std::mem::replace(&mut hit[j], true) {
            return Err(NormalFormFailure::NotMonomialMatrix);
        }
        sigma.push(j);
    }
    let signs = sigma
        .iter()
        .enumerate()
        .map(|(i, &j)| Sign::from_unit(psi.entry(i, j)))
        .collect::<Option<Vec<_>>>()
        .ok_or(NormalFormFailure::EntryNotUnit)?;
    if (0..m).any(|i| spec.exponent(i) != spec.exponent(sigma[i])) {
        return Err(NormalFormFailure::ProfileViolation);
    }
    Ok(SignedPermutation {
        spec: spec.clone(),
        sigma,
        signs,
    })
}

/// `2^m * prod_l |J_l|!`.
pub fn automorphism_group_order(spec: &RingSpec) -> BigUint {
    let profile = degree_profile(spec);
    let mut order = BigUint::one() << spec.rank();
    for block in profile.blocks() {
        for k in 2..=block.len() {
            order *= BigUint::from(k);
        }
    }
    order
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pruning {
    On,
    #[default]
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Entries range over `[-bound, bound]`.
    pub bound: u32,
    pub pruning: Pruning,
    pub ceiling: u128,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            bound: 1,
            pruning: Pruning::Off,
            ceiling: DEFAULT_CEILING,
        }
    }
}

impl SearchConfig {
    pub fn with_bound(bound: u32) -> Self {
        Self {
            bound,
            ..Self::default()
        }
    }

    pub fn pruned(mut self) -> Self {
        self.pruning = Pruning::On;
        self
    }
}

/// `(2*bound + 1)^cells`, or `None` on overflow.
pub fn box_size(cells: usize, bound: u32) -> Option<u128> {
    let base = 2 * u128::from(bound) + 1;
    base.checked_pow(u32::try_from(cells).ok()?)
}

fn box_size_exact(cells: usize, bound: u32) -> BigUint {
    BigUint::from(2 * u64::from(bound) + 1).pow(cells as u32)
}

fn check_ceiling(cells: usize, bound: u32, ceiling: u128) -> Result<u64> {
    match box_size(cells, bound) {
        Some(size) if size <= ceiling && size <= u128::from(u64::MAX) => Ok(size as u64),
        _ => Err(Error::SearchSpaceTooLarge {
            size: box_size_exact(cells, bound).to_string(),
            ceiling,
        }),
    }
}

/// Mixed-radix decoding of a candidate index into integer entries.
fn decode_entries(mut index: u64, cells: usize, bound: u32) -> Vec<BigInt> {
    let base = 2 * u64::from(bound) + 1;
    let mut out = vec![BigInt::zero(); cells];
    for slot in out.iter_mut().rev() {
        *slot = BigInt::from(i64::try_from(index % base).unwrap() - i64::from(bound));
        index /= base;
    }
    out
}

fn decode_matrix(index: u64, m: usize, bound: u32) -> IntMatrix {
    let flat = decode_entries(index, m * m, bound);
    flat.chunks(m).map(<[BigInt]>::to_vec).collect()
}

/// All graded automorphisms with entries in `[-bound, bound]`, sorted
/// row-major lexicographically. The result does not depend on the pruning
/// mode.
pub fn enumerate_automorphisms(spec: &RingSpec, config: &SearchConfig) -> Result<Vec<LinearSubstitution>> {
    let mut found = match config.pruning {
        Pruning::Off => enumerate_unpruned(spec, config)?,
        Pruning::On => enumerate_pruned(spec, config)?,
    };
    found.sort();
    Ok(found)
}

fn enumerate_unpruned(spec: &RingSpec, config: &SearchConfig) -> Result<Vec<LinearSubstitution>> {
    let m = spec.rank();
    let total = check_ceiling(m * m, config.bound, config.ceiling)?;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let psi = LinearSubstitution::new(spec, decode_matrix(idx, m, config.bound)).ok()?;
            psi.is_graded_automorphism().then_some(psi)
        })
        .collect())
}

/// Rows admissible for generator `i`: zero where `n_i < n_j`, and
/// `(sum_j v_j x_j)^{n_i+1} = 0`.
fn admissible_rows(spec: &RingSpec, i: usize, bound: u32, ceiling: u128) -> Result<Vec<Vec<BigInt>>> {
    let m = spec.rank();
    let n_i = spec.exponent(i);
    let free: Vec<usize> = (0..m).filter(|&j| spec.exponent(j) <= n_i).collect();
    let total = check_ceiling(free.len(), bound, ceiling)?;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let vals = decode_entries(idx, free.len(), bound);
            let mut row = vec![BigInt::zero(); m];
            for (&j, v) in free.iter().zip(vals) {
                row[j] = v;
            }
            let y = degree_one_element(row.iter().cloned(), spec).ok()?;
            y.pow(n_i + 1).is_zero().then_some(row)
        })
        .collect())
}

fn enumerate_pruned(spec: &RingSpec, config: &SearchConfig) -> Result<Vec<LinearSubstitution>> {
    let m = spec.rank();
    let rows = (0..m)
        .map(|i| admissible_rows(spec, i, config.bound, config.ceiling))
        .collect::<Result<Vec<_>>>()?;
    let product = rows
        .iter()
        .try_fold(1u128, |acc, r| acc.checked_mul(r.len() as u128))
        .filter(|&p| p <= config.ceiling && p <= u128::from(u64::MAX));
    let Some(product) = product else {
        let exact = rows
            .iter()
            .fold(BigUint::one(), |acc, r| acc * BigUint::from(r.len()));
        return Err(Error::SearchSpaceTooLarge {
            size: exact.to_string(),
            ceiling: config.ceiling,
        });
    };
    Ok((0..product as u64)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut matrix = vec![Vec::new(); m];
            for i in (0..m).rev() {
                let len = rows[i].len() as u64;
                matrix[i] = rows[i][(idx % len) as usize].clone();
                idx /= len;
            }
            let psi = LinearSubstitution::new(spec, matrix).ok()?;
            psi.determinant().abs().is_one().then_some(psi)
        })
        .collect())
}

/// Positions `(i, j)` with `n_i < n_j` and `b_ij != 0`.
pub fn vanishing_rule_violations(psi: &LinearSubstitution) -> Vec<(usize, usize)> {
    let spec = psi.spec();
    let m = spec.rank();
    (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| spec.exponent(i) < spec.exponent(j) && !psi.entry(i, j).is_zero())
        .collect()
}

/// Positions `(i, j)` with `i` in `J_l`, `j` in `J_{<l}` and `b_ij != 0`.
pub fn off_block_violations(psi: &LinearSubstitution) -> Vec<(usize, usize)> {
    let profile = degree_profile(psi.spec());
    let mut out = Vec::new();
    for (l, block) in profile.blocks().iter().enumerate() {
        for &i in block {
            for &j in profile.lower_union(l) {
                if !psi.entry(i, j).is_zero() {
                    out.push((i, j));
                }
            }
        }
    }
    out
}

/// Result of conjugating a well-defined endomorphism into block form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTriangularWitness {
    /// `order[p]` is the original index placed at position `p`; exponents
    /// are non-increasing along `order`, ties kept in index order.
    pub order: Vec<usize>,
    /// `P B P^{-1}` over the reordered spec.
    pub conjugate: LinearSubstitution,
    /// Sizes of the diagonal blocks `C_{J_1}, ..., C_{J_k}`.
    pub block_sizes: Vec<usize>,
    /// Whether every entry below the diagonal blocks vanishes.
    pub block_upper_triangular: bool,
}

pub fn block_triangular_witness(psi: &LinearSubstitution) -> Result<BlockTriangularWitness> {
    if let Some(w) = psi.check_endomorphism().witness() {
        return Err(Error::RejectedInput(format!(
            "not a well-defined endomorphism: {w}"
        )));
    }
    let spec = psi.spec();
    let m = spec.rank();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(spec.exponent(i)));

    let sorted_spec = RingSpec::new(order.iter().map(|&i| spec.exponent(i)).collect::<Vec<_>>())?;
    let matrix: IntMatrix = order
        .iter()
        .map(|&i| order.iter().map(|&j| psi.entry(i, j).clone()).collect())
        .collect();
    let conjugate = LinearSubstitution::new(&sorted_spec, matrix)?;

    let profile = degree_profile(&sorted_spec);
    let block_sizes = profile.blocks().iter().map(Vec::len).collect();
    let block_upper_triangular = (0..m).all(|p| {
        (0..m).all(|q| profile.block_of(p) <= profile.block_of(q) || conjugate.entry(p, q).is_zero())
    });
    Ok(BlockTriangularWitness {
        order,
        conjugate,
        block_sizes,
        block_upper_triangular,
    })
}

/// A candidate on which the automorphism test and the normal form disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub matrix: LinearSubstitution,
    pub is_automorphism: bool,
    pub normal_form: std::result::Result<(), NormalFormFailure>,
}

/// Everything observed while visiting every matrix of a bounded box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxScan {
    pub spec: RingSpec,
    pub bound: u32,
    pub candidates: u128,
    /// Well-defined endomorphisms with their determinants, sorted.
    pub endomorphisms: Vec<(LinearSubstitution, BigInt)>,
    /// Graded automorphisms, sorted.
    pub automorphisms: Vec<LinearSubstitution>,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Default)]
struct ScanAcc {
    endomorphisms: Vec<(LinearSubstitution, BigInt)>,
    automorphisms: Vec<LinearSubstitution>,
    counterexamples: Vec<Counterexample>,
}

impl ScanAcc {
    fn merge(mut self, other: ScanAcc) -> ScanAcc {
        self.endomorphisms.extend(other.endomorphisms);
        self.automorphisms.extend(other.automorphisms);
        self.counterexamples.extend(other.counterexamples);
        self
    }
}

/// Unpruned visit of every matrix in `[-bound, bound]^{m x m}`, testing the
/// automorphism predicate against the signed-permutation normal form.
pub fn exhaustive_scan(spec: &RingSpec, bound: u32, ceiling: u128) -> Result<BoxScan> {
    let m = spec.rank();
    let total = check_ceiling(m * m, bound, ceiling)?;
    let acc = (0..total)
        .into_par_iter()
        .fold(ScanAcc::default, |mut acc, idx| {
            let psi = LinearSubstitution::new(spec, decode_matrix(idx, m, bound))
                .expect("decoded matrix is square");
            let well_defined = psi.is_well_defined_endomorphism();
            let mut is_automorphism = false;
            if well_defined {
                let det = psi.determinant();
                is_automorphism = det.abs().is_one();
                acc.endomorphisms.push((psi.clone(), det));
            }
            let normal_form = as_signed_permutation(&psi).map(|_| ());
            if is_automorphism != normal_form.is_ok() {
                acc.counterexamples.push(Counterexample {
                    matrix: psi.clone(),
                    is_automorphism,
                    normal_form,
                });
            }
            if is_automorphism {
                acc.automorphisms.push(psi);
            }
            acc
        })
        .reduce(ScanAcc::default, ScanAcc::merge);

    let ScanAcc {
        mut endomorphisms,
        mut automorphisms,
        mut counterexamples,
    } = acc;
    endomorphisms.sort();
    automorphisms.sort();
    counterexamples.sort_by(|a, b| a.matrix.cmp(&b.matrix));
    Ok(BoxScan {
        spec: spec.clone(),
        bound,
        candidates: u128::from(total),
        endomorphisms,
        automorphisms,
        counterexamples,
    })
}

/// Summary of an exhaustive check that automorphisms are exactly the
/// dimension-respecting signed permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub spec: RingSpec,
    pub bound: u32,
    pub candidates_scanned: u128,
    pub automorphisms_found: usize,
    pub predicted_order: BigUint,
    pub biconditional_holds: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl StructureReport {
    /// Whether the count found matches `2^m prod |J_l|!`.
    pub fn count_matches(&self) -> bool {
        BigUint::from(self.automorphisms_found) == self.predicted_order
    }
}

/// Runs [`exhaustive_scan`]. With pruning on, the pruned enumeration is
/// additionally required to reproduce the scanned automorphism list.
pub fn verify_structure_theorem(spec: &RingSpec, config: &SearchConfig) -> Result<StructureReport> {
    let scan = exhaustive_scan(spec, config.bound, config.ceiling)?;
    if config.pruning == Pruning::On {
        let pruned = enumerate_automorphisms(spec, config)?;
        if pruned != scan.automorphisms {
            return Err(Error::InternalInconsistency(format!(
                "pruned enumeration found {} automorphisms, full scan found {}",
                pruned.len(),
                scan.automorphisms.len()
            )));
        }
    }
    Ok(StructureReport {
        spec: spec.clone(),
        bound: config.bound,
        candidates_scanned: scan.candidates,
        automorphisms_found: scan.automorphisms.len(),
        predicted_order: automorphism_group_order(spec),
        biconditional_holds: scan.counterexamples.is_empty(),
        counterexamples: scan.counterexamples,
    })
}
