//! Numerical laboratory for the quadratic family `f_a(x) = 1 - a*x^2` on `[-1, 1]`,
//! `0 < a <= 2`.
//!
//! The crate is organized around the objects that make parameter-space
//! experiments with this family reproducible:
//!
//! - [`dynamics`] — exact evaluation of the map, orbits, derivatives along
//!   orbits, the critical-orbit functions `xi_n(a) = f_a^n(0)` with their
//!   parameter derivatives, and Lyapunov exponents.
//! - [`measures`] — finite atomic measures, Birkhoff (empirical) measures,
//!   periodic-orbit measures, exact Wasserstein-1 distances between step
//!   CDFs, and the closed-form arcsine reference law at `a = 2`.
//! - [`param`] — solvers acting on parameter windows: images of windows under
//!   `xi_n`, super-stable parameters, Newton continuation of periodic orbits,
//!   parameters whose critical orbit lands on a prescribed repeller, attractor
//!   detection, and escape-window refinement.
//! - [`bc`] — growth and recurrence diagnostics: the partition of the critical
//!   neighborhood, exponential-growth checks along the critical orbit, bound
//!   periods, return itineraries of parameter windows, and deviation sums.
//! - [`experiments`] — drivers that assemble the solvers into convergence
//!   tables: approximation of natural measures by super-stable cycles, hitting
//!   parameters for repellers, shadow-then-hit-zero sequences, and the
//!   discontinuity demonstration for the measure map `a -> mu_a`.
//! - [`report`] — deterministic JSON/CSV serialization and run manifests.
//! - [`cli`] — the command-line dispatcher used by the `quadfam` binary.
//!
//! Everything is a pure function of its inputs; all randomness flows from
//! explicit seeds ([`rng::SplitMix64`]), so every result is reproducible
//! bit-for-bit.
//!
//! See the crate examples (`cargo run --example <name>`) for one runnable
//! walk-through per capability.

pub mod bc;
pub mod cli;
pub mod dynamics;
pub mod experiments;
pub mod measures;
pub mod param;
pub mod real;
pub mod report;
pub mod rng;

pub use dynamics::MapParam;
pub use real::Precision;
