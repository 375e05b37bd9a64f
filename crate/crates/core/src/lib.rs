//! Numerical curvature decomposition of Riemannian four-manifolds given on a
//! single coordinate chart.
//!
//! The crate evaluates a metric on a rectangular chart, builds the Levi-Civita
//! connection and Riemann tensor by finite differences, splits the curvature
//! operator on two-forms into its self-dual/anti-self-dual Weyl blocks,
//! traceless Ricci and scalar parts, and evaluates curvature conditions on the
//! self-dual Weyl spectrum pointwise and over sampling grids.
//!
//! Everything is `no_std` with `alloc`; IO, parsing of metric files and the
//! command-line front end live in the `weylscope` crate.
//!
//! Sign conventions: `R_ijkl = <R(e_i, e_j) e_l, e_k>` with
//! `R(X,Y) = [∇_X, ∇_Y] - ∇_[X,Y]`, so the unit sphere has `R_1212 = +1` and
//! `S = n(n-1)`. The rough Laplacian is `Δ = g^{ab} ∇_a ∇_b` (non-positive
//! spectrum).
#![no_std]

extern crate alloc;

pub mod catalog;
pub mod conditions;
pub mod decomp;
mod error;
pub mod frames;
pub mod linalg;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};

/// Dimension of every manifold handled here.
pub const DIM: usize = 4;
