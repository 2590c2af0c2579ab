//! Structured-text (JSON) documents for specs, elements, matrices, recipes
//! and reports, plus the plain matrix file format.
//!
//! Big integers travel as decimal strings. Indices in documents are
//! one-based.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::classifier::{Counterexample, NormalFormFailure, StructureReport};
use crate::error::{Error, Result};
use crate::factorizer::{Certificate, DiffeoRecipe, Factorization};
use crate::morphism::LinearSubstitution;
use crate::ring::{reduce, RingElement, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDoc {
    pub exponents: Vec<u32>,
}

impl From<&RingSpec> for SpecDoc {
    fn from(spec: &RingSpec) -> Self {
        Self {
            exponents: spec.exponents().to_vec(),
        }
    }
}

impl SpecDoc {
    pub fn to_spec(&self) -> Result<RingSpec> {
        RingSpec::new(self.exponents.clone())
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{s:?} is not a decimal integer")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

/// An element with its ambient spec; terms in ascending graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub spec: SpecDoc,
    pub terms: Vec<TermDoc>,
}

impl From<&RingElement> for ElementDoc {
    fn from(e: &RingElement) -> Self {
        Self {
            spec: e.spec().into(),
            terms: e
                .terms()
                .map(|(m, c)| TermDoc {
                    exponents: m.exponents().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl ElementDoc {
    /// Rebuilds the element, reducing whatever terms were supplied.
    pub fn to_element(&self) -> Result<RingElement> {
        let spec = self.spec.to_spec()?;
        let raw = self
            .terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), parse_int(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        reduce(raw, &spec)
    }
}

fn rows_to_doc(m: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    m.iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn rows_from_doc(rows: &[Vec<String>]) -> Result<Vec<Vec<BigInt>>> {
    rows.iter()
        .map(|r| r.iter().map(|s| parse_int(s)).collect())
        .collect()
}

/// Row-major matrix of decimal strings with its spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub spec: SpecDoc,
    pub rows: Vec<Vec<String>>,
}

impl From<&LinearSubstitution> for MatrixDoc {
    fn from(psi: &LinearSubstitution) -> Self {
        Self {
            spec: psi.spec().into(),
            rows: rows_to_doc(psi.matrix()),
        }
    }
}

impl MatrixDoc {
    pub fn to_substitution(&self) -> Result<LinearSubstitution> {
        LinearSubstitution::new(&self.spec.to_spec()?, rows_from_doc(&self.rows)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeDoc {
    /// One-line notation, one-based.
    pub permutation: Vec<usize>,
    pub conjugate: Vec<bool>,
    pub description: String,
}

impl From<&DiffeoRecipe> for RecipeDoc {
    fn from(r: &DiffeoRecipe) -> Self {
        Self {
            permutation: r.permutation().iter().map(|i| i + 1).collect(),
            conjugate: r.conjugate().to_vec(),
            description: r.to_string(),
        }
    }
}

impl RecipeDoc {
    pub fn to_recipe(&self, spec: &RingSpec) -> Result<DiffeoRecipe> {
        let perm = self
            .permutation
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation("one-based index 0".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        DiffeoRecipe::new(spec, perm, self.conjugate.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleDoc {
    pub rows: Vec<Vec<String>>,
    pub is_automorphism: bool,
    /// `"present"` or the failure code.
    pub normal_form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub spec: SpecDoc,
    pub bound: u32,
    pub candidates_scanned: u64,
    pub automorphisms_found: usize,
    pub predicted_order: String,
    pub biconditional_holds: bool,
    pub counterexamples: Vec<CounterexampleDoc>,
}

impl From<&StructureReport> for ReportDoc {
    fn from(r: &StructureReport) -> Self {
        Self {
            spec: (&r.spec).into(),
            bound: r.bound,
            candidates_scanned: r.candidates_scanned as u64,
            automorphisms_found: r.automorphisms_found,
            predicted_order: r.predicted_order.to_string(),
            biconditional_holds: r.biconditional_holds,
            counterexamples: r
                .counterexamples
                .iter()
                .map(|c| CounterexampleDoc {
                    rows: rows_to_doc(c.matrix.matrix()),
                    is_automorphism: c.is_automorphism,
                    normal_form: match c.normal_form {
                        Ok(()) => "present".into(),
                        Err(why) => why.code().into(),
                    },
                })
                .collect(),
        }
    }
}

fn parse_failure(code: &str) -> Result<std::result::Result<(), NormalFormFailure>> {
    Ok(match code {
        "present" => Ok(()),
        "not-monomial-matrix" => Err(NormalFormFailure::NotMonomialMatrix),
        "entry-not-unit" => Err(NormalFormFailure::EntryNotUnit),
        "profile-violation" => Err(NormalFormFailure::ProfileViolation),
        other => return Err(Error::Parse(format!("unknown normal-form code {other:?}"))),
    })
}

impl ReportDoc {
    pub fn to_report(&self) -> Result<StructureReport> {
        let spec = self.spec.to_spec()?;
        let counterexamples = self
            .counterexamples
            .iter()
            .map(|c| {
                Ok(Counterexample {
                    matrix: LinearSubstitution::new(&spec, rows_from_doc(&c.rows)?)?,
                    is_automorphism: c.is_automorphism,
                    normal_form: parse_failure(&c.normal_form)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StructureReport {
            spec,
            bound: self.bound,
            candidates_scanned: u128::from(self.candidates_scanned),
            automorphisms_found: self.automorphisms_found,
            predicted_order: self
                .predicted_order
                .parse::<BigUint>()
                .map_err(|_| Error::Parse(format!("bad predicted_order {:?}", self.predicted_order)))?,
            biconditional_holds: self.biconditional_holds,
            counterexamples,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub generator_checks: Vec<bool>,
    pub matrix_equal: bool,
    pub recipe_matches: bool,
    pub verified: bool,
}

impl From<&Certificate> for CertificateDoc {
    fn from(c: &Certificate) -> Self {
        Self {
            generator_checks: c.generator_checks.clone(),
            matrix_equal: c.matrix_equal,
            recipe_matches: c.recipe_matches,
            verified: c.verified(),
        }
    }
}

/// All maps of a factorization `phi = (h^{-1} g)^*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub spec: SpecDoc,
    pub phi: Vec<Vec<String>>,
    pub h_star: Vec<Vec<String>>,
    pub g: Vec<Vec<String>>,
    pub recipe: RecipeDoc,
    pub f_star: Vec<Vec<String>>,
    pub certificate: CertificateDoc,
}

impl FactorizationDoc {
    pub fn new(phi: &LinearSubstitution, h_star: &LinearSubstitution, f: &Factorization) -> Self {
        Self {
            spec: phi.spec().into(),
            phi: rows_to_doc(phi.matrix()),
            h_star: rows_to_doc(h_star.matrix()),
            g: rows_to_doc(f.g.matrix()),
            recipe: (&f.recipe).into(),
            f_star: rows_to_doc(f.f_star.matrix()),
            certificate: (&f.certificate).into(),
        }
    }

    /// Recomputes the factorization from the stored `phi` and `h_star`.
    pub fn recompute(&self) -> Result<Factorization> {
        let spec = self.spec.to_spec()?;
        let phi = LinearSubstitution::new(&spec, rows_from_doc(&self.phi)?)?;
        let h_star = LinearSubstitution::new(&spec, rows_from_doc(&self.h_star)?)?;
        crate::factorizer::factor_isomorphism(&phi, &h_star)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses a matrix file: one row per line, whitespace-separated integers.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_matrix_text(text: &str, spec: &RingSpec) -> Result<LinearSubstitution> {
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(parse_int).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    LinearSubstitution::new(spec, rows)
}

pub fn format_matrix_text(psi: &LinearSubstitution) -> String {
    psi.matrix()
        .iter()
        .map(|r| {
            let mut line = r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            line.push('\n');
            line
        })
        .collect()
}
