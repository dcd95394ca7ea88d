//! Computations on the Q8-symmetric hyperelliptic family
//! `y^2 = x(x^4 - 1)(x^{2g-4} + 1 + sum_j a_j (x^{2g-4-2j} + x^{2j}))`.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: exact arithmetic (rationals, Q(i), polynomials, finite
//!   fields, rational quaternions).
//! * [`family`]: models, discriminants, base change and the symmetry checks.
//! * [`frobenius`]: point counting and L-polynomials.
//! * [`monodromy`]: the ω character, candidate fields and the center certificate.
//! * [`torsion`]: two-torsion, homology matrices and the quaternionic lattice.
//! * [`periods`]: numerical period matrices in genus 4.
//! * [`degeneration`]: cluster pictures and the stable-model identities.
//! * [`schoen`]: the fourth-power identity on the subspace `P0`.

pub mod algebra;
pub mod degeneration;
pub mod error;
pub mod family;
pub mod frobenius;
pub mod monodromy;
pub mod periods;
pub mod schoen;
pub mod torsion;

pub use error::{Error, Result};
