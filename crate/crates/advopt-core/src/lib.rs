//! Adversarial ergodic optimization over products of shifts of finite type.
//!
//! Alice picks a bi-infinite symbol sequence `y` in a shift `Y`, Bob answers
//! with a sequence `x` in a shift `X`, and Bob pays the long-run average of a
//! letter-pair cost `F(x(j), y(j))`. This crate computes the finite-horizon
//! values of that game exactly (arbitrary-precision rationals throughout),
//! brackets the asymptotic value `delta` between a periodic-orbit lower bound
//! and a subadditivity upper bound, certifies periodic orbits as ground-state
//! candidates, and reduces the measure-theoretic value `alpha` to a classical
//! maximum-mean-cycle problem through an effective potential on `Y`.
//!
//! Module map:
//! * [`sft`] — one-step shifts of finite type, recoding, word and orbit
//!   enumeration, the transitivity (gluing) constant.
//! * [`potential`] — locally constant costs `F` as rational matrices.
//! * [`minplus`] — min-plus dynamic programs: fiber minima, endpoint tables,
//!   the max-min value `r_k`, and certified brackets for `delta`.
//! * [`cycle`] — exact minimum/maximum mean cycles (Karp), the layered-graph
//!   value `psi` of a periodic orbit, and the `alpha_per` lower bound.
//! * [`ground`] — `(f, C)`-improvements, bounded-window orbit certification,
//!   forbidden-word discovery, and the Hruskova reproduction.
//! * [`theta`] — the finite-window effective potential on `Y` with a
//!   certified error bound, turning `alpha` into a mean-cycle problem.
//! * [`scenarios`] — self-checking reproductions of the concrete examples
//!   and the report plumbing shared by the CLI.
//!
//! With the default `parallel` feature the embarrassingly parallel inner
//! loops (prefix fan-out in `r_k`, per-orbit `psi`, per-window selector
//! construction) run on rayon; results are identical to the sequential
//! fallback because every reduction is associative and order-insensitive.

pub mod cycle;
pub mod error;
mod exec;
pub mod ground;
pub mod minplus;
pub mod potential;
pub mod rat;
pub mod scenarios;
pub mod sft;
pub mod theta;

pub use error::Error;
pub use rat::Rat;

/// Default cap on exact enumeration sizes (legal `y`-words for `r_k`,
/// selector windows, forbidden-word searches). Overridable per call and via
/// `ADVOPT_BUDGET` in the CLI.
pub const DEFAULT_BUDGET: u64 = 2_000_000;
