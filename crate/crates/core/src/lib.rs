//! Exact decision procedures for Birkhoff-James orthogonality, level vectors
//! and isometries on finite-dimensional real normed spaces.
//!
//! Polyhedral spaces (including ℓ1ⁿ and ℓ∞ⁿ) run over exact rationals; ℓp
//! spaces with `1 < p < ∞` run in floats with a relative tolerance.

pub mod catalog;
pub mod error;
pub mod faces;
pub mod io;
pub mod isometry;
pub mod levelvec;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod orthogonality;
pub mod rational;
pub mod rng;
pub mod space;
pub mod support;

pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use rational::{Rational, Value};
pub use space::{adjoint, dual_space, norm, Exponent, Functional, Mode, Operator, Polytope, Space};
