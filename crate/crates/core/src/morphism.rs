//! Linear substitutions on the degree-2 generators and the graded ring maps
//! they induce.
//!
//! Row `i` of the matrix lists the image of `x_i`:
//! `psi(x_i) = sum_j B[i][j] x_j`. With that convention,
//! `compose(outer, inner)` has matrix `inner * outer`, which is the unique
//! choice making `compose(outer, inner)(x) = outer(inner(x))`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::Result;
use crate::linalg::{self, IntMatrix};
use crate::ring::{degree_one_element, RingElement, RingSpec};

/// Integer matrix acting on generators of one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearSubstitution {
    spec: RingSpec,
    matrix: IntMatrix,
}

/// Why a substitution fails to respect a defining relation `x_i^{n_i+1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoWitness {
    /// Zero-based index of the first offending generator.
    pub generator: usize,
    /// The power `n_i + 1` that should have vanished.
    pub power: u32,
    /// Nonzero value of `psi(x_i)^{n_i+1}` in `R`.
    pub residue: RingElement,
}

impl fmt::Display for EndoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "psi(x{})^{} = {}",
            self.generator + 1,
            self.power,
            self.residue
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndoVerdict {
    WellDefined,
    Fails(EndoWitness),
}

impl EndoVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, EndoVerdict::WellDefined)
    }

    pub fn witness(&self) -> Option<&EndoWitness> {
        match self {
            EndoVerdict::WellDefined => None,
            EndoVerdict::Fails(w) => Some(w),
        }
    }
}

impl LinearSubstitution {
    pub fn new(spec: &RingSpec, matrix: IntMatrix) -> Result<Self> {
        spec.check_len(matrix.len())?;
        for row in &matrix {
            spec.check_len(row.len())?;
        }
        Ok(Self {
            spec: spec.clone(),
            matrix,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_rows<R, T>(spec: &RingSpec, rows: impl IntoIterator<Item = R>) -> Result<Self>
    where
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let matrix = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        Self::new(spec, matrix)
    }

    pub fn identity(spec: &RingSpec) -> Self {
        Self {
            spec: spec.clone(),
            matrix: linalg::identity(spec.rank()),
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.matrix[i][j]
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == linalg::identity(self.spec.rank())
    }

    /// `psi(x_i)` as a ring element.
    pub fn image(&self, i: usize) -> RingElement {
        degree_one_element(self.matrix[i].iter().cloned(), &self.spec)
            .expect("row length checked at construction")
    }

    /// Extends the substitution multiplicatively and reduces.
    pub fn apply(&self, a: &RingElement) -> Result<RingElement> {
        self.spec.check_same(a.spec())?;
        let m = self.spec.rank();
        let mut max_exp = vec![0u32; m];
        for (mono, _) in a.terms() {
            for (mx, &e) in max_exp.iter_mut().zip(mono.exponents()) {
                *mx = (*mx).max(e);
            }
        }
        // powers[j][e] = psi(x_j)^e
        let powers: Vec<Vec<RingElement>> = (0..m)
            .map(|j| {
                let image = self.image(j);
                let mut table = vec![self.spec.one()];
                for e in 1..=max_exp[j] as usize {
                    let next = table[e - 1].try_mul(&image).expect("same spec");
                    table.push(next);
                }
                table
            })
            .collect();

        let mut out = self.spec.zero();
        for (mono, c) in a.terms() {
            let mut term = self.spec.constant(c.clone());
            for (j, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                term = term.try_mul(&powers[j][e as usize])?;
                if term.is_zero() {
                    break;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Checks `psi(x_i)^{n_i+1} = 0` for every generator, stopping at the
    /// first failure.
    pub fn check_endomorphism(&self) -> EndoVerdict {
        for i in 0..self.spec.rank() {
            let power = self.spec.exponent(i) + 1;
            let residue = self.image(i).pow(power);
            if !residue.is_zero() {
                return EndoVerdict::Fails(EndoWitness {
                    generator: i,
                    power,
                    residue,
                });
            }
        }
        EndoVerdict::WellDefined
    }

    pub fn is_well_defined_endomorphism(&self) -> bool {
        self.check_endomorphism().holds()
    }

    pub fn determinant(&self) -> BigInt {
        linalg::bareiss_determinant(&self.matrix)
    }

    /// Well-defined endomorphism with unit determinant.
    pub fn is_graded_automorphism(&self) -> bool {
        self.is_well_defined_endomorphism() && self.determinant().abs().is_one()
    }

    /// `self` after `inner`: the map `x -> self(inner(x))`.
    pub fn after(&self, inner: &LinearSubstitution) -> Result<LinearSubstitution> {
        compose(self, inner)
    }
}

/// The substitution `x -> outer(inner(x))`, with matrix `inner * outer`.
pub fn compose(outer: &LinearSubstitution, inner: &LinearSubstitution) -> Result<LinearSubstitution> {
    outer.spec.check_same(&inner.spec)?;
    Ok(LinearSubstitution {
        spec: outer.spec.clone(),
        matrix: linalg::matmul(&inner.matrix, &outer.matrix),
    })
}

/// Row-major lexicographic order on entries; spec breaks ties.
impl Ord for LinearSubstitution {
    fn cmp(&self, other: &Self) -> Ordering {
        self.matrix
            .iter()
            .flatten()
            .cmp(other.matrix.iter().flatten())
            .then_with(|| self.spec.exponents().cmp(other.spec.exponents()))
    }
}

impl PartialOrd for LinearSubstitution {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LinearSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearSubstitution[{}]{}", self.spec, self)
    }
}

impl fmt::Display for LinearSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.matrix.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
