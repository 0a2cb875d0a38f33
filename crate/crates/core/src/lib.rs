//! Exact-arithmetic rational homotopy engine.
//!
//! Layers, bottom up:
//! - [`linalg`]: ranks, kernels, images and quotients over Q;
//! - [`graded`]: truncated graded-commutative rings, cup products, Kunneth;
//! - [`em`]: Eilenberg-MacLane cohomology and Koszul complexes;
//! - [`sullivan`]: minimal models of simply connected rings;
//! - [`obstruction`]: maps into the two-stage tower of the complexified 2-sphere;
//! - [`secondary`]: the blow-up scenario and its secondary Kodaira-Spencer pairing;
//! - [`io`]: ring, model and scenario file formats.

pub mod em;
mod error;
pub mod graded;
pub mod io;
pub mod linalg;
pub mod obstruction;
pub mod secondary;
pub mod sullivan;

pub use error::{Error, Result};
pub use graded::{
    free_gc_basis, validate_ring, Bidegree, Element, Generator, GeneratorList, GradedRing,
    GradedVectorSpace, Monomial, RingBuilder, ValidationReport,
};
pub use linalg::{quotient_dim, Matrix, SubspaceBasis, Q};
