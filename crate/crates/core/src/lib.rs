//! Graphs as quantum density matrices.
//!
//! A graph on `n = p·q` vertices, with vertices labelled by coordinates
//! `(i, j)` in `1..=p × 1..=q`, defines the density matrix
//! `σ(G) = L(G) / d_G` on `C^p ⊗ C^q`. This crate builds those matrices in
//! exact arithmetic, applies the `(p,q)`-partial transpose, and decides
//! separability or entanglement with checkable certificates and witnesses.
//!
//! - [`graph`]: the data model, matrix constructions and tensor product.
//! - [`generate`]: named and seeded random graph families.
//! - [`linalg`]: exact symmetric-matrix kernel plus a Jacobi eigensolver.
//! - [`separability`]: edge classes, criteria, certificates and the verdict engine.
//! - [`harness`]: seeded randomized re-verification suites.
//! - [`io`]: the line-oriented graph file format.

#![forbid(unsafe_code)]

pub mod error;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod matching;
pub mod rng;
pub mod separability;

pub use error::{Error, Result};
pub use graph::{Dims, Edge, Graph, Vertex};
pub use linalg::{IntegerMatrix, RationalMatrix, SquareMatrix, WitnessVector};
pub use separability::{Certificate, EdgeClass, Verdict, Witness};
