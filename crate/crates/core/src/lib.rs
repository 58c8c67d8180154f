//! Exact construction of the Terwilliger algebra of the Johnson geometry
//! incidence graph `J(n, m, m+1)`, with brute-force verification of its
//! structure: inclusion and intersection matrix identities, the Kronecker
//! block form of the adjacency matrix, the algebra itself computed by span
//! closure, its explicit bases, and its dimension.
//!
//! All arithmetic is exact (see [`scalar::Rational`]).

pub mod cli;
pub mod graph;
pub mod intersection;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod subsets;
pub mod terwilliger;
