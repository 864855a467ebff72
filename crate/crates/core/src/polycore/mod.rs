//! Dense integer polynomials and the exact kernels built on them.

pub mod compose;
pub mod lattice;
pub mod poly;
pub mod resultant;

pub use compose::{compose_mul, compose_pow, compose_pow_pre};
pub use lattice::{
    column_hermite, hermite_smith, minimal_multiplier, smith, solve_in_lattice, HermiteForm,
    IntMatrix, NormalForms, SmithForm,
};
pub use poly::Poly;
pub use resultant::{coprime, discriminant, is_squarefree, poly_gcd, radical, resultant};
