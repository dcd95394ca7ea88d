//! Exact arithmetic foundation.

mod field;
mod finite_field;
mod gaussian;
mod integer;
mod linalg;
mod mpoly;
mod poly;
mod quaternion;
mod resultant;
mod roots;
pub mod ser;

pub use field::{format_rational, parse_rational, rat, Field, Rational};
pub use finite_field::{quadratic_character, FfElem, FiniteField};
pub use gaussian::{gaussian_valuation, GaussianRational, PrimeBranch, Valuation};
pub use integer::{
    factorize, integer_nth_root, is_prime, mod_pow, primes_up_to, rational_fourth_root,
    sqrt_minus_one_mod, squarefree_kernel,
};
pub use linalg::{det_bareiss, rank_f2, rank_over, IntMatrix};
pub use mpoly::MPoly;
pub use poly::Poly;
pub use quaternion::QuaternionRational;
pub use resultant::{cyclotomic, cyclotomic_int, discriminant, euler_phi, resultant, CyclotomicTable};
pub use roots::{complex_roots, rational_poly_roots};
