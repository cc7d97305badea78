//! Exact Newton-Okounkov bodies of weight valuations and the wall-crossing
//! maps between adjacent maximal cones of a tropicalization.
//!
//! Everything is computed over the rationals. The modules build on each other:
//!
//! - [`kernel`]: rationals, polyhedra (double description), piecewise-linear functions;
//! - [`trees`]: trivalent trees, splits, adjacency and relabeling;
//! - [`tropcore`]: polynomials, initial forms, Plücker quadrics;
//! - [`gr2m`]: weight matrices and closed-form wall-crossing for `Gr(2,m)`;
//! - [`wallcross`]: the matrix-only engine (bodies, envelopes, shift and flip);
//! - [`mutation`]: bodies from triples of concave functions and their dual slices.

pub mod error;
pub mod gr2m;
pub mod kernel;
pub mod mutation;
pub mod trees;
pub mod tropcore;
pub mod wallcross;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polyhedra.md")]
    mod polyhedra {}
    #[doc = include_str!("../../../book/src/trees.md")]
    mod trees {}
    #[doc = include_str!("../../../book/src/grassmannian.md")]
    mod grassmannian {}
    #[doc = include_str!("../../../book/src/wall-crossing.md")]
    mod wall_crossing {}
    #[doc = include_str!("../../../book/src/mutation.md")]
    mod mutation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
