//! Sullivan minimal models: CDGAs with explicit differential matrices, free
//! graded-commutative DGAs, and the degree-by-degree model construction.

mod cdga;
mod free_dga;
mod model;

pub use cdga::{formal_cdga, Cdga};
pub use free_dga::{scale, FreeDga, Polynomial};
pub use model::{
    build_minimal_model, certify, format_polynomial, homotopy_table, k_invariant_quadratic,
    DegreeCertificate, HomotopyTable, MinimalModel, QuadraticKInvariant,
};
