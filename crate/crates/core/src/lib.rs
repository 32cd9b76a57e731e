//! Exact rational Khovanov homology and Jones polynomials for PD-coded link
//! diagrams, together with the half-twist surgery and scans used to study
//! how the maximal homological degree grows under twisting.
//!
//! The crate is `no_std` (with `alloc`) when built without default
//! features. The `parallel` feature (default) evaluates independent
//! graded blocks on the rayon pool.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod complex;
pub mod cube;
pub mod diagram;
pub mod experiments;
pub mod homology;
pub mod jones;
pub mod laurent;
pub mod linalg;

mod union_find;

pub use complex::{build_complex, verify_d_squared, GradedComplex};
pub use cube::{classify_edge, edge_sign, resolve, CircleDecomposition, CubeEdge, SmoothingIndex};
pub use diagram::{braid_closure, Crossing, EdgeRef, LinkDiagram, Sign, TwistRegion};
pub use homology::{compute_khovanov, homology_table, KhovanovTable};
pub use jones::{jones_polynomial, kauffman_bracket, skein_check};
pub use laurent::LaurentPoly;
