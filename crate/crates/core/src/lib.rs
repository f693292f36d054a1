//! Three-weight p-ary linear codes from two quadratic forms.
//!
//! Given quadratic forms f on F_{p^{s1}} and g on F_{p^{s2}}, the defining
//! set D = {(x, y) ≠ (0, 0) : f(x) + g(y) = 0} yields the code
//! C_D = {(Tr(x x_i) + Tr(y y_i))_{(x_i, y_i) ∈ D}}. This crate builds these
//! codes and computes their weight distributions and generalized Hamming
//! weights exactly, alongside the closed forms predicted from the rank and
//! sign of f and g.

pub mod cli;
pub mod codes;
pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod gf;
pub mod ghw;
pub mod matrix;
pub mod quadform;
pub mod subspace;

pub use error::{Error, Result};
