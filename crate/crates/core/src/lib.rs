//! Orthogonal polynomials from su(1,1) and U_q(su(1,1)) representation theory.
//!
//! The crate evaluates the polynomial families that appear as expansion
//! coefficients of Hamiltonian eigenvectors in positive discrete series
//! representations, builds Clebsch-Gordan coefficients and coupled vectors,
//! and checks the resulting generating functions, Poisson kernels and integral
//! identities numerically. Every identity is computed along two independent
//! routes (series vs closed form, or quadrature vs closed form) and reported as a
//! [`kernels::CheckReport`].
//!
//! Modules, bottom-up:
//! - [`numerics`]: complex scalars, Γ and Pochhammer, compensated sums,
//!   tridiagonal eigensolver, Gauss rules.
//! - [`hyperseries`]: `pFq`, q-shifted factorials, `rφs`, very-well-poised `8W7`.
//! - [`orthopoly`]: the polynomial families, with hypergeometric and recurrence
//!   evaluation, Askey-Wilson weight and norms.
//! - [`su11`]: D⁺(k), the three Hamiltonians, eigenvector coefficients,
//!   Clebsch-Gordan coefficients, convolution identities, `exp(iαJ₂)`.
//! - [`qsu11`]: U_q(su(1,1)) positive discrete series, `Y_sA`, realized vectors
//!   and the Askey-Wilson expansion between coupled and uncoupled vectors.
//! - [`kernels`]: the identity registry and grid checks.

// negated comparisons reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hyperseries;
pub mod kernels;
pub mod numerics;
pub mod orthopoly;
pub mod qsu11;
pub mod su11;

pub use error::{Error, Result};
pub use numerics::Scalar;
