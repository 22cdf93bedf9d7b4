//! # succonv
//!
//! Solver library for one- and two-dimensional nonlinear, possibly degenerate,
//! advection-diffusion equations
//!
//! ```text
//! u_t + f(u)_x = g(u)_xx
//! ```
//!
//! Spatial derivatives are represented through successive convolution: the
//! operators `D = I - L^{-1}` of the one-sided (`L = I ± ∂x/α`) and symmetric
//! (`L = I - ∂xx/α²`) kernels are applied with O(N) recursive sweeps, and the
//! truncated series of their powers approximates `-f(u)_x + g(u)_xx`. Local
//! cell integrals use a fifth order WENO quadrature for the first power and a
//! sixth order linear rule for the higher powers; a nonlinear filter damps the
//! higher convection terms near discontinuities. Time integration is explicit
//! SSP Runge-Kutta of order 1 to 3, and with `β` below the tabulated bound the
//! scheme is unconditionally stable.
//!
//! Module map:
//! - [`grid`], [`problem`], [`config`], [`bounds`]: shared value types and step selection
//! - [`quadrature`]: WENO and linear exponential-weighted cell quadrature
//! - [`kernel`]: convolution sweeps, boundary closures, `D` operators and their powers
//! - [`filter`]: the nonlinear filter on high-order convection terms
//! - [`operator`]: assembly of the spatial operator `H[u]`
//! - [`timestep`]: SSP-RK stepping and time advancement
//! - [`stability`]: Fourier symbols, amplification factors and `β_max` scans
//! - [`solver2d`]: dimension-by-dimension two-dimensional driver
//! - [`problems`]: benchmark catalog, exact and reference solutions, error norms
//!
//! The `parallel` feature (on by default) runs line sweeps and stability scans
//! on rayon; without it every [`Execution`] mode runs sequentially.

// `!(x > 0.0)` is the NaN-rejecting form used throughout input validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Node arrays always hold at least one entry.
#![allow(clippy::len_without_is_empty)]

pub mod bounds;
pub mod config;
mod error;
mod exec;
pub mod filter;
pub mod grid;
pub mod kernel;
pub mod operator;
pub mod problem;
pub mod problems;
pub mod quadrature;
pub mod solver2d;
pub mod stability;
pub mod timestep;

pub use bounds::{compute_bounds, compute_dt, compute_dt_2d, WaveBounds};
pub use config::{Quadrature, RkOrder, SchemeConfig};
pub use error::{Error, Result};
pub use exec::Execution;
pub use grid::{Grid1D, Grid2D};
pub use problem::{BoundaryKind, ProblemSpec, ScalarFn, SolutionField};
