//! Bivariate polynomials over `Z` and `F_p`, finite fields, and
//! irreducibility tests.

pub mod field;
pub mod int_poly;
pub mod irreducible;
pub mod mod_poly;
pub mod univariate;

pub use field::{find_irreducible_poly, ExtensionField, FiniteField, PrimeField};
pub use int_poly::IntBivariatePoly;
pub use irreducible::{
    bad_level_values, is_absolutely_irreducible, is_irreducible_bivariate, IrreducibilityTester,
    IrreducibilityVerdict, SplittingWitness,
};
pub use mod_poly::{eval_univariate, ModBivariatePoly};

/// `f(x, V)` over `F_p`, the specialization at `U = x`.
pub fn specialize_u(f: &ModBivariatePoly, x: u64) -> Vec<u64> {
    f.specialize_u(x)
}

/// Roots of a univariate polynomial over `field`, each listed once.
pub fn univariate_roots<F: FiniteField>(
    field: &F,
    g: &[F::Elem],
) -> crate::error::Result<Vec<F::Elem>> {
    univariate::roots(field, g)
}
