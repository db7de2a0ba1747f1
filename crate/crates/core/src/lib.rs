//! Wigner-Moyal functions for states on the cylinder `S¹ × ℝ`.
//!
//! Wavefunctions are periodic up to a Bloch phase, `ψ(φ + 2π) = e^{2πiδ} ψ(φ)`,
//! and expand as `ψ(φ) = (2π)^{-1/2} Σ c_n e^{i(n+δ)φ}`. Their Wigner functions
//! are finite sums of matrix elements
//! `V_mn(θ,p) = (2π)⁻¹ e^{i(n-m)θ} sinc π[p - (m+n)/2 - δ]`.
//!
//! - [`specfun`]: sinc, quadrature, modified Bessel and Jacobi theta functions.
//! - [`states`]: Fourier-coefficient states, density matrices and operators.
//! - [`wigner`]: phase-space functions, marginals, overlaps, reconstruction.
//! - [`dynamics`]: evolution under Hamiltonians diagonal in angular momentum.
//! - [`thermal`]: canonical ensembles of the free rotor.
//! - [`cli`]: the command-line driver behind the `cylwig` binary.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod specfun;
pub mod states;
pub mod thermal;
pub mod wigner;

pub use error::{Error, Result};
pub use states::{DensityMatrix, FourierState, Operator};
pub use wigner::PhasePoint;
