//! Proximal-point preconditioning for linear-system solvers.
//!
//! One proximal step `x₁ = (I + ηA)⁻¹(x₀ + ηb)` replaces the solve with `A`
//! (condition number `κ`) by a solve with the better-conditioned
//! `(I + ηA)/‖I + ηA‖`, whose condition number is `κ(1 + η)/(κ + η)`. This
//! crate simulates that wrapper classically: instance generation, the
//! proximal iteration, a truncated-Taylor inexact solver, the error budget
//! that ties them together, and the query-cost models used to compare
//! wrapped and unwrapped solvers.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod complexity;
pub mod config;
pub mod error;
pub mod instance;
pub mod linalg;
pub mod ppa;
pub mod solvers;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use instance::{generate, generate_sampled, generate_with, LinearSystemInstance, Sampler, SpectrumConvention};
pub use linalg::{SymMatrix, Vector};
