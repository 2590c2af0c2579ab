//! Factoring a cohomology isomorphism through a given diffeomorphism-induced
//! one, and symbolic recipes for self-diffeomorphisms of a product of
//! projective spaces.
//!
//! A [`DiffeoRecipe`] is bookkeeping only: a permutation of the factors plus
//! complex conjugation on selected factors. Conjugation on `CP^n` negates the
//! degree-2 generator; permuting factors permutes generators.

use std::fmt;

use crate::classifier::{as_signed_permutation, Sign, SignedPermutation};
use crate::error::{Error, Result};
use crate::morphism::{compose, LinearSubstitution};
use crate::ring::RingSpec;

/// Self-map `g` of `CP^{n_1} x ... x CP^{n_m}` whose `i`-th output factor is
/// input factor `permutation[i]`, conjugated when `conjugate[i]` is set.
/// Induces `x_i -> (-1)^{conjugate[i]} x_{permutation[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffeoRecipe {
    spec: RingSpec,
    permutation: Vec<usize>,
    conjugate: Vec<bool>,
}

impl DiffeoRecipe {
    /// Checks that only factors of equal dimension are exchanged.
    pub fn new(spec: &RingSpec, permutation: Vec<usize>, conjugate: Vec<bool>) -> Result<Self> {
        let signs = conjugate
            .iter()
            .map(|&c| if c { Sign::Minus } else { Sign::Plus })
            .collect();
        SignedPermutation::new(spec, permutation.clone(), signs)?;
        Ok(Self {
            spec: spec.clone(),
            permutation,
            conjugate,
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    /// Zero-based one-line notation.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn conjugate(&self) -> &[bool] {
        &self.conjugate
    }

    pub fn induced_map(&self) -> SignedPermutation {
        let signs = self
            .conjugate
            .iter()
            .map(|&c| if c { Sign::Minus } else { Sign::Plus })
            .collect();
        SignedPermutation::new(&self.spec, self.permutation.clone(), signs)
            .expect("validated at construction")
    }

    pub fn induced_substitution(&self) -> LinearSubstitution {
        self.induced_map().to_substitution()
    }

    /// Nontrivial cycles of the factor permutation, one-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.permutation.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] || self.permutation[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.permutation[i];
            }
            out.push(cycle);
        }
        out
    }
}

/// e.g. `swap factors 1,2; conjugate factor 3`
impl fmt::Display for DiffeoRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize], sep: &str| {
            v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
        };
        let mut parts = Vec::new();
        for cycle in self.cycles() {
            if cycle.len() == 2 {
                parts.push(format!("swap factors {}", join(&cycle, ",")));
            } else {
                parts.push(format!("cycle factors ({})", join(&cycle, " ")));
            }
        }
        let conj: Vec<usize> = (0..self.conjugate.len())
            .filter(|&i| self.conjugate[i])
            .map(|i| i + 1)
            .collect();
        match conj.len() {
            0 => {}
            1 => parts.push(format!("conjugate factor {}", conj[0])),
            _ => parts.push(format!("conjugate factors {}", join(&conj, ","))),
        }
        if parts.is_empty() {
            f.write_str("identity")
        } else {
            f.write_str(&parts.join("; "))
        }
    }
}

/// A recipe together with the substitution it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub recipe: DiffeoRecipe,
    pub induced: LinearSubstitution,
}

/// Factor permutation `sigma`, conjugating exactly the factors with a
/// negative sign.
pub fn realize(psi: &SignedPermutation) -> Realization {
    let recipe = DiffeoRecipe {
        spec: psi.spec().clone(),
        permutation: psi.sigma().to_vec(),
        conjugate: psi.signs().iter().map(|s| s.is_negative()).collect(),
    };
    let induced = recipe.induced_substitution();
    Realization { recipe, induced }
}

/// Evidence that `(h^{-1} g)^*` reproduces `phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Per generator: `f^*(x_i) == phi(x_i)` as ring elements.
    pub generator_checks: Vec<bool>,
    pub matrix_equal: bool,
    /// The recipe's induced map equals `g`.
    pub recipe_matches: bool,
}

impl Certificate {
    pub fn verified(&self) -> bool {
        self.matrix_equal && self.recipe_matches && self.generator_checks.iter().all(|&b| b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// `g^* = phi . h^*`.
    pub g: LinearSubstitution,
    pub g_normal_form: SignedPermutation,
    pub recipe: DiffeoRecipe,
    /// `(h^{-1} g)^* = g^* . (h^*)^{-1}`, which equals `phi`.
    pub f_star: LinearSubstitution,
    pub certificate: Certificate,
}

/// Factors `phi` through `h_star`: finds the self-map `g` with
/// `g^* = phi . h^*`, realizes it, and certifies `f^* = phi` for
/// `f = h^{-1} g`.
pub fn factor_isomorphism(phi: &LinearSubstitution, h_star: &LinearSubstitution) -> Result<Factorization> {
    phi.spec().check_same(h_star.spec())?;
    if !phi.is_graded_automorphism() {
        return Err(Error::NotAutomorphism("phi".into()));
    }
    if !h_star.is_graded_automorphism() {
        return Err(Error::NotAutomorphism("h_star".into()));
    }
    let g = compose(phi, h_star)?;
    let g_normal_form = as_signed_permutation(&g).map_err(|why| {
        Error::InternalInconsistency(format!("g = {g} has no signed-permutation form ({why})"))
    })?;
    let Realization { recipe, induced } = realize(&g_normal_form);

    let h_inverse = as_signed_permutation(h_star)
        .map_err(|why| {
            Error::InternalInconsistency(format!(
                "h_star = {h_star} has no signed-permutation form ({why})"
            ))
        })?
        .inverse()
        .to_substitution();
    let f_star = compose(&g, &h_inverse)?;

    let spec = phi.spec();
    let generator_checks = (0..spec.rank())
        .map(|i| {
            let x = spec.generator(i)?;
            Ok(f_star.apply(&x)? == phi.apply(&x)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let certificate = Certificate {
        generator_checks,
        matrix_equal: &f_star == phi,
        recipe_matches: induced == g,
    };
    if !certificate.verified() {
        return Err(Error::InternalInconsistency(format!(
            "factorization certificate failed: {certificate:?}"
        )));
    }
    Ok(Factorization {
        g,
        g_normal_form,
        recipe,
        f_star,
        certificate,
    })
}

/// [`factor_isomorphism`] with `h^* = id`, for a ring already identified
/// with the product.
pub fn factor_direct(phi: &LinearSubstitution) -> Result<Factorization> {
    factor_isomorphism(phi, &LinearSubstitution::identity(phi.spec()))
}
