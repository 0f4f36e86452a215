//! Parametrized dendriform-type operads: binary quadratic presentations,
//! Koszul duals, rewrite systems, combinatorial realizations and Hilbert
//! series, all over exact rationals.

pub mod associativity;
pub mod butterfly;
pub mod error;
pub mod exact_linear;
pub mod export;
pub mod free_operad;
pub mod hilbert;
pub mod presentations;
pub mod realizations;
pub mod rewrite;
pub mod verify;

pub use error::{Error, Result};
pub use exact_linear::{Basis, LinComb, Rational};
pub use free_operad::{enumerate_trees, Signature, SyntaxTree};
pub use presentations::{build_presentation, koszul_dual, Family, Presentation};
