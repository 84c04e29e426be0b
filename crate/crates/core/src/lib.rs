//! Exact computer algebra for the extended affine Lie algebra gl_l(ℂ_q)
//! coordinated by a rank-two quantum torus, and its free-field module on
//! the polynomial ring in the variables `x_i(m, n)`.
//!
//! Modules, bottom-up:
//!
//! - [`scalar`]: exact coefficient fields (generic q, roots of unity, rational q)
//!   and nullspaces.
//! - [`torus`]: the quantum torus `ℂ_q[s^±1, t^±1]` with `ts = q st`.
//! - [`eala`]: the Lie algebra itself, its bracket and `n_+` generators.
//! - [`fock`]: the polynomial module and the operators realizing the algebra.
//! - [`hwv`]: weights, weight spaces, highest-weight-vector search and the
//!   irreducibility report.
//! - [`verify`]: exhaustive and sampled homomorphism / axiom sweeps.
//! - [`parse`]: the expression language shared by the CLI and golden files.

pub mod cli;
pub mod eala;
pub mod error;
pub mod fock;
pub mod hwv;
pub mod parse;
pub mod scalar;
pub mod torus;
pub mod verify;
pub mod window;

pub use eala::{AlgebraConfig, Generator, LieElem};
pub use error::{Error, Result};
pub use fock::{Monomial, Poly, RepParams, Var};
pub use scalar::{FieldMode, Scalar, ScalarMatrix};
pub use torus::TorusElem;
pub use window::ExponentWindow;
