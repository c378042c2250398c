//! Geometric bounds on the variance and recentered moments of probability
//! measures supported on compact sets.
//!
//! * [`lp`]: dense two-phase simplex and convex-hull membership.
//! * [`geometry`]: point clouds, minimal enclosing balls, regular simplices,
//!   sample shapes.
//! * [`conjugate`]: the indicator-weighted `−|x|²` function of a set, its
//!   Legendre-Fenchel conjugate and biconjugate.
//! * [`bounds`]: Bhatia-Davis/Popoviciu bounds in any dimension, the
//!   variance-maximization program and its dual.
//! * [`genvar`]: generalized variances for radial convex costs and the
//!   minimax level that bounds them.
//! * [`isodiametric`]: the diameter-constrained problem, simplex maximizers,
//!   and Jung's theorem.

// NaN-rejecting checks are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bounds;
pub mod conjugate;
pub mod error;
pub mod genvar;
pub mod geometry;
pub mod isodiametric;
pub mod json;
pub mod lp;
pub mod vecops;

pub use error::{Error, Result};
