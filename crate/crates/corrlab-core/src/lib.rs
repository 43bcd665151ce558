//! Numerical laboratory for noise-driven linear wave dynamics.
//!
//! The crate simulates damped wave and first-order (Schrodinger-type) equations
//! driven by random sources on modal discretizations, estimates two-point
//! correlation functions from the simulated records, and evaluates the exact
//! and asymptotic formulas those correlations are expected to satisfy:
//! stationary covariance operators, closed-form wave correlations, impulse
//! response retrieval, time-reversal symmetry, phase-space power spectra,
//! ray-transport symbols, and scattered plane-wave identities.
//!
//! Module map:
//! - [`modal`]: spectral decompositions of the spatial operators (interval,
//!   torus, rectangle, arbitrary attenuated matrices) and the modal Green kernel.
//! - [`special`]: scalar special-function evaluators used across the crate.
//! - [`quantize`]: discrete phase-space quantization on the torus and its inverse.
//! - [`noise`]: random source models (white, channel-twisted, symbol-filtered)
//!   and phase-space power spectrum estimation.
//! - [`dynamics`]: exact-transition stochastic integrators producing probe
//!   trajectories.
//! - [`correlation`]: empirical correlation estimation and the analytic
//!   correlation formulas, including the stationary-covariance (Lyapunov) solve.
//! - [`semiclassics`]: Hamiltonian ray tracing, backward transport integrals,
//!   and the high-frequency verification harness.
//! - [`scattering`]: angular averages of scattered plane waves against
//!   free-space Green functions, scalar and elastic.
//! - [`io`]: on-disk formats (matrix text, trajectory binary, series CSV,
//!   symbol JSON) with bit-exact round-trips.

pub mod correlation;
pub mod dynamics;
pub mod error;
mod fftutil;
pub mod io;
pub mod modal;
pub mod noise;
pub mod quantize;
pub mod scattering;
pub mod semiclassics;
pub mod special;
pub mod system;

pub use error::{Error, Result};
pub use modal::{BoundaryCondition, ModalModel};
pub use noise::{NoiseSpec, NoiseVariant, OmegaWindow, OperatorKernel, SymbolField};
pub use system::GeneralSystem;

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex64;
