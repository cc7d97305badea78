//! Exact rational arithmetic and the polyhedral engine.

mod dd;
pub mod linalg;
mod plfunc;
mod polyhedron;
mod rat;

pub use plfunc::{refinement_vertices, Affine, Combiner, PLForm, PLFunction};
pub use polyhedron::{Constraint, HRep, Polyhedron, VRep};
pub use rat::{Rat, RatMat, RatVec};
