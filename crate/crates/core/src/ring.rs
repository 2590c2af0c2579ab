//! Exact arithmetic in the truncated polynomial ring
//! `Z[x_1, ..., x_m] / (x_1^{n_1+1}, ..., x_m^{n_m+1})`.
//!
//! Elements are sparse maps from exponent vectors to nonzero big integers.
//! Every product is truncated immediately, so a stored monomial always lies
//! in the box `0 <= e_i <= n_i`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Truncation exponents `(n_1, ..., n_m)`.
///
/// Cheap to clone; equality compares the exponents, not the allocation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    exponents: Arc<[u32]>,
}

impl RingSpec {
    pub fn new(exponents: impl Into<Vec<u32>>) -> Result<Self> {
        let exponents = exponents.into();
        if exponents.is_empty() {
            return Err(Error::InvalidSpec("at least one generator is required".into()));
        }
        if let Some(pos) = exponents.iter().position(|&n| n == 0) {
            return Err(Error::InvalidSpec(format!(
                "exponent n_{} must be positive",
                pos + 1
            )));
        }
        Ok(Self {
            exponents: exponents.into(),
        })
    }

    /// Number of generators `m`.
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exponents[i]
    }

    /// Polynomial degree of the top class `x_1^{n_1} ... x_m^{n_m}`.
    pub fn top_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Rank of `R` as a free abelian group, `prod (n_i + 1)`.
    pub fn basis_size(&self) -> u128 {
        self.exponents
            .iter()
            .map(|&n| u128::from(n) + 1)
            .product()
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            spec: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> RingElement {
        self.constant(BigInt::one())
    }

    pub fn constant(&self, c: BigInt) -> RingElement {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(self.rank()), c);
        }
        RingElement {
            spec: self.clone(),
            terms,
        }
    }

    /// The degree-2 class `x_{i+1}` (zero-based index).
    pub fn generator(&self, i: usize) -> Result<RingElement> {
        if i >= self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: i + 1,
            });
        }
        let mut exps = vec![0; self.rank()];
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::new(exps), BigInt::one());
        Ok(RingElement {
            spec: self.clone(),
            terms,
        })
    }

    pub(crate) fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: len,
            })
        }
    }
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingSpec{}", self)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, n) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str(")")
    }
}

/// Parses `"n1,n2,..."`, optionally wrapped in parentheses.
impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let exponents = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent {:?} in spec {:?}", t.trim(), s)))
            })
            .collect::<Result<Vec<_>>>()?;
        RingSpec::new(exponents)
    }
}

/// Exponent vector of a monomial `x_1^{e_1} ... x_m^{e_m}`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors compared left to right (so `x_1 > x_2`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exponents: impl Into<Vec<u32>>) -> Self {
        Monomial(exponents.into().into_boxed_slice())
    }

    pub fn unit(m: usize) -> Self {
        Monomial(vec![0; m].into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Polynomial degree `sum e_i`. The cohomological degree is twice this.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn fits(&self, spec: &RingSpec) -> bool {
        self.0.len() == spec.rank() && self.0.iter().zip(spec.exponents()).all(|(e, n)| e <= n)
    }

    /// Product in `R`, or `None` when it lies in the ideal.
    pub fn mul_truncated(&self, other: &Monomial, spec: &RingSpec) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for ((a, b), n) in self.0.iter().zip(other.0.iter()).zip(spec.exponents()) {
            let e = a + b;
            if e > *n {
                return None;
            }
            out.push(e);
        }
        Some(Monomial(out.into_boxed_slice()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..])
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// An element of `R` in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    spec: RingSpec,
    terms: BTreeMap<Monomial, BigInt>,
}

/// Canonical residue of a raw term list modulo the defining ideal.
///
/// Monomials outside the box are dropped, repeated monomials are merged and
/// zero coefficients removed.
pub fn reduce<I>(raw: I, spec: &RingSpec) -> Result<RingElement>
where
    I: IntoIterator<Item = (Vec<u32>, BigInt)>,
{
    let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for (exps, c) in raw {
        spec.check_len(exps.len())?;
        let mono = Monomial::new(exps);
        if !mono.fits(spec) {
            continue;
        }
        *terms.entry(mono).or_default() += c;
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(RingElement {
        spec: spec.clone(),
        terms,
    })
}

/// `sum_j a_j x_j` for a coefficient vector of length `m`.
pub fn degree_one_element<I, T>(coeffs: I, spec: &RingSpec) -> Result<RingElement>
where
    I: IntoIterator<Item = T>,
    T: Into<BigInt>,
{
    let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
    spec.check_len(coeffs.len())?;
    let m = spec.rank();
    let terms = coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            let mut exps = vec![0; m];
            exps[j] = 1;
            (Monomial::new(exps), c)
        })
        .collect();
    Ok(RingElement {
        spec: spec.clone(),
        terms,
    })
}

/// Outcome of checking `y^{n_i} != 0` for one index with `a_i != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerCheck {
    /// Zero-based generator index.
    pub index: usize,
    pub exponent: u32,
    pub nonzero: bool,
}

/// For `y = sum a_j x_j`, computes whether `y^{n_i}` is nonzero for every `i`
/// with `a_i != 0`. Each power is computed from scratch.
pub fn verify_nonvanishing_powers<I, T>(coeffs: I, spec: &RingSpec) -> Result<Vec<PowerCheck>>
where
    I: IntoIterator<Item = T>,
    T: Into<BigInt>,
{
    let y = degree_one_element(coeffs, spec)?;
    let coeffs = y.linear_coefficients().expect("degree-one element");
    Ok(coeffs
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, _)| {
            let exponent = spec.exponent(i);
            PowerCheck {
                index: i,
                exponent,
                nonzero: !y.pow(exponent).is_zero(),
            }
        })
        .collect())
}

impl RingElement {
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(mono, c)| mono.degree() == 0 && c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Polynomial degree if the element is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    /// Coefficients `(a_1, ..., a_m)` if the element is of the form `sum a_j x_j`
    /// (including zero).
    pub fn linear_coefficients(&self) -> Option<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.spec.rank()];
        for (mono, c) in &self.terms {
            if mono.degree() != 1 {
                return None;
            }
            let j = mono.exponents().iter().position(|&e| e == 1)?;
            out[j] = c.clone();
        }
        Some(out)
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> RingElement {
        if k.is_zero() {
            return self.spec.zero();
        }
        RingElement {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement> {
        self.spec.check_same(&other.spec)?;
        let mut terms = self.terms.clone();
        for (mono, c) in &other.terms {
            *terms.entry(mono.clone()).or_default() += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(RingElement {
            spec: self.spec.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.spec.check_same(&other.spec)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &RingElement) -> RingElement {
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(mono) = ma.mul_truncated(mb, &self.spec) {
                    *terms.entry(mono).or_default() += ca * cb;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        RingElement {
            spec: self.spec.clone(),
            terms,
        }
    }

    /// `self^k` by iterated multiplication, truncating after every step.
    pub fn pow(&self, k: u32) -> RingElement {
        let mut acc = self.spec.one();
        for _ in 0..k {
            if acc.is_zero() {
                break;
            }
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Smallest `k >= 1` with `self^k = 0`, for a nonzero `sum a_j x_j`.
    pub fn nilpotency_order(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::Domain("nilpotency order of zero is undefined".into()));
        }
        if self.homogeneous_degree() != Some(1) {
            return Err(Error::Domain(format!(
                "nilpotency order requires a degree-one element, got {self}"
            )));
        }
        let limit = self.spec.top_degree() + 1;
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_zero() {
                return Ok(k);
            }
            acc = acc.mul_unchecked(self);
        }
        Err(Error::InternalInconsistency(format!(
            "{self} survives past degree {limit}"
        )))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement[{}]({})", self.spec, self)
    }
}

/// Human-readable form, leading (largest) term first, e.g. `x1^2 - 3*x1*x2`.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (mono, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mono.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: &[u32]) -> RingSpec {
        RingSpec::new(n.to_vec()).unwrap()
    }

    fn lin(c: &[i64], s: &RingSpec) -> RingElement {
        degree_one_element(c.iter().copied(), s).unwrap()
    }

    fn el(terms: &[(&[u32], i64)], s: &RingSpec) -> RingElement {
        reduce(terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))), s).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(RingSpec::new(vec![]).is_err());
        assert!(RingSpec::new(vec![1, 0]).is_err());
        assert_eq!("1,2,2".parse::<RingSpec>().unwrap().exponents(), &[1, 2, 2]);
        assert_eq!("(3)".parse::<RingSpec>().unwrap().rank(), 1);
        assert!("1,x".parse::<RingSpec>().is_err());
        assert_eq!(spec(&[1, 2]).basis_size(), 6);
    }

    #[test]
    fn reduce_examples() {
        let s = spec(&[1, 1]);
        assert_eq!(el(&[(&[2, 0], 1), (&[1, 1], 3)], &s), el(&[(&[1, 1], 3)], &s));
        let s = spec(&[2]);
        assert!(el(&[(&[1], 5), (&[1], -5)], &s).is_zero());
        assert!(el(&[(&[1], 0)], &s).is_zero());
        let s = spec(&[1, 2]);
        assert_eq!(el(&[(&[0, 3], 7), (&[0, 2], 2)], &s), el(&[(&[0, 2], 2)], &s));
    }

    #[test]
    fn reduce_rejects_wrong_length() {
        let s = spec(&[1, 1]);
        let err = reduce(vec![(vec![1], BigInt::one())], &s).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn reduce_is_idempotent() {
        let s = spec(&[2, 1]);
        let a = el(&[(&[3, 0], 4), (&[1, 1], -2), (&[0, 0], 1)], &s);
        let again = reduce(
            a.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())),
            &s,
        )
        .unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn add_examples() {
        let s = spec(&[1, 1]);
        let x1 = s.generator(0).unwrap();
        let x2 = s.generator(1).unwrap();
        assert!(x1.try_add(&x1.neg()).unwrap().is_zero());
        assert_eq!(x1.try_add(&x2).unwrap(), lin(&[1, 1], &s));
        let a = el(&[(&[1, 1], 2)], &s);
        let b = el(&[(&[1, 1], -2)], &s);
        assert!(a.try_add(&b).unwrap().is_zero());
    }

    #[test]
    fn spec_mismatch_is_reported() {
        let a = spec(&[1, 1]).generator(0).unwrap();
        let b = spec(&[1, 2]).generator(0).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::SpecMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::SpecMismatch { .. })));
    }

    #[test]
    fn mul_examples() {
        let s = spec(&[1, 1]);
        let y = lin(&[1, 1], &s);
        assert_eq!(y.try_mul(&y).unwrap(), el(&[(&[1, 1], 2)], &s));
        let top = el(&[(&[1, 1], 1)], &s);
        assert!(top.try_mul(&s.generator(0).unwrap()).unwrap().is_zero());

        let s = spec(&[2, 1]);
        let x1 = s.generator(0).unwrap();
        assert_eq!(x1.try_mul(&x1).unwrap(), el(&[(&[2, 0], 1)], &s));
    }

    #[test]
    fn pow_examples() {
        let s = spec(&[1, 1]);
        assert!(lin(&[1, 1], &s).pow(3).is_zero());
        assert!(lin(&[4, -2], &s).pow(0).is_one());
        assert!(s.zero().pow(0).is_one());

        let s = spec(&[2, 3]);
        assert_eq!(
            lin(&[1, 1], &s).pow(2),
            el(&[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)], &s)
        );
    }

    #[test]
    fn degree_one_examples() {
        let s = spec(&[1, 1]);
        assert_eq!(lin(&[1, 0], &s), s.generator(0).unwrap());
        assert!(lin(&[0, 0], &s).is_zero());
        let s = spec(&[1, 2]);
        assert_eq!(lin(&[2, -3], &s), el(&[(&[1, 0], 2), (&[0, 1], -3)], &s));
        assert!(matches!(
            degree_one_element([1, 2, 3], &s),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn nonvanishing_examples() {
        let s = spec(&[2, 3]);
        let report = verify_nonvanishing_powers([1, 1], &s).unwrap();
        assert_eq!(report.len(), 2);
        assert!(report.iter().all(|c| c.nonzero));

        let s = spec(&[1, 1]);
        let report = verify_nonvanishing_powers([0, 5], &s).unwrap();
        assert_eq!(
            report,
            vec![PowerCheck {
                index: 1,
                exponent: 1,
                nonzero: true
            }]
        );
        let report = verify_nonvanishing_powers([7, -7], &s).unwrap();
        assert_eq!(report.len(), 2);
        assert!(report.iter().all(|c| c.nonzero));
        assert!(verify_nonvanishing_powers([1], &s).is_err());
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(lin(&[1, 1], &spec(&[1, 1])).nilpotency_order().unwrap(), 3);
        assert_eq!(spec(&[3]).generator(0).unwrap().nilpotency_order().unwrap(), 4);
        assert_eq!(lin(&[1, 1], &spec(&[1, 2])).nilpotency_order().unwrap(), 4);
    }

    #[test]
    fn nilpotency_domain_errors() {
        let s = spec(&[1, 1]);
        assert!(matches!(s.zero().nilpotency_order(), Err(Error::Domain(_))));
        assert!(matches!(s.one().nilpotency_order(), Err(Error::Domain(_))));
        let mixed = s.one().try_add(&s.generator(0).unwrap()).unwrap();
        assert!(matches!(mixed.nilpotency_order(), Err(Error::Domain(_))));
    }

    #[test]
    fn display_is_leading_term_first() {
        let s = spec(&[2, 3]);
        let e = el(&[(&[0, 0], -1), (&[1, 1], 2), (&[2, 0], 1), (&[0, 2], -3)], &s);
        assert_eq!(e.to_string(), "x1^2 + 2*x1*x2 - 3*x2^2 - 1");
        assert_eq!(s.zero().to_string(), "0");
        assert_eq!(s.generator(1).unwrap().neg().to_string(), "-x2");
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![0, 2]);
        let b = Monomial::new(vec![1, 1]);
        let c = Monomial::new(vec![3, 0]);
        let d = Monomial::new(vec![1, 0]);
        assert!(d < a && a < b && b < c);
    }
}
