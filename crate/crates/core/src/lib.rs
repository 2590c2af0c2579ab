//! Truncated polynomial rings `Z[x_1, ..., x_m] / (x_i^{n_i+1})`, the
//! integral cohomology of `CP^{n_1} x ... x CP^{n_m}`, together with their
//! graded automorphisms.
//!
//! * [`ring`]: exact sparse arithmetic with eager truncation.
//! * [`morphism`]: linear substitutions on generators, well-definedness,
//!   determinants and composition.
//! * [`classifier`]: signed-permutation normal forms and exhaustive
//!   automorphism searches.
//! * [`factorizer`]: factoring a cohomology isomorphism through a given
//!   diffeomorphism-induced one, and realization recipes.
//! * [`serial`] and [`expr`]: text formats used by the `rigidity` CLI.

pub mod classifier;
pub mod error;
pub mod expr;
pub mod factorizer;
pub mod linalg;
pub mod morphism;
pub mod ring;
pub mod selftest;
pub mod serial;

pub use classifier::{
    as_signed_permutation, automorphism_group_order, block_triangular_witness, degree_profile,
    enumerate_automorphisms, exhaustive_scan, verify_structure_theorem, BlockTriangularWitness,
    BoxScan, DegreeProfile, NormalFormFailure, Pruning, SearchConfig, Sign, SignedPermutation,
    StructureReport,
};
pub use error::{Error, Result};
pub use expr::parse_element;
pub use factorizer::{factor_direct, factor_isomorphism, realize, DiffeoRecipe, Factorization};
pub use morphism::{compose, EndoVerdict, EndoWitness, LinearSubstitution};
pub use ring::{
    degree_one_element, reduce, verify_nonvanishing_powers, Monomial, PowerCheck, RingElement,
    RingSpec,
};
