//! Exact-arithmetic classification of codimension-1 subalgebras of small
//! complex Clifford algebras.
//!
//! The crate derives, from first principles, which (2^n - 1)-dimensional
//! subspaces of the 2^n-dimensional Clifford algebra g(n, C) are closed
//! under the product. Everything is computed over exact scalar rings
//! (Gaussian rationals, polynomials, one quadratic extension), so every
//! claim — including "no real solutions" — is a certificate, not an
//! approximation. At n = 3 the result is the known list of eight
//! 7-dimensional subalgebras: four one-parameter families and four isolated
//! ones, none of them real.

pub mod classify;
pub mod cli;
pub mod clifford;
pub mod closure;
pub mod error;
pub mod render;
pub mod scalars;
pub mod solve;
pub mod subspace;

pub use classify::{classify, sampling_oracle, verify_lemma, verify_theorem};
pub use clifford::{blade_mul, blades_in_order, build_table, Blade, MultiVector, Sign};
pub use closure::{check_closure_concrete, derive_conditions, real_infeasible, ConditionSet};
pub use error::{Error, Result};
pub use scalars::{ExtensionElement, GaussianRational, Polynomial, Scalar};
pub use solve::{solve, SolutionFamily, SolveOutcome};
pub use subspace::{canonical_bases, membership_residual, rref_membership, CanonicalBasis};
