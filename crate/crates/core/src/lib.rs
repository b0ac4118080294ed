//! Graph invariants built from determinant minors of the connection matrix.
//!
//! For a graph `G` with connection matrix `A` (adjacency matrix with a fixed
//! diagonal), the engine forms the matrix of pair minors `|A^{i,j}|` (rows and
//! columns `i`, `j` deleted) and the matrix of diagonal-zeroed determinants
//! `|C^{i,j}|`, all modulo a window of word-sized primes. The sorted entries
//! of both matrices and their determinants are permutation invariants; two
//! graphs whose invariants disagree are certainly non-isomorphic. The pair
//! minor matrix can be fed back in as a weighted graph and the process
//! repeated.
//!
//! Module map:
//! - [`graph`]: graphs, permutations, incidence structures, text formats.
//! - [`modular`], [`minors`], [`crt`]: exact linear algebra over `Z/pZ`.
//! - [`engine`]: signatures, the iterated comparison and certificates.
//! - [`generators`]: CFI ladders, projective planes, random graphs.
//! - [`oracle`]: independent ground truth for tests.

pub mod crt;
pub mod engine;
pub mod error;
pub mod generators;
pub mod graph;
pub mod minors;
pub mod modular;
pub mod oracle;
pub mod parallel;

pub use crt::{crt_reconstruct, prime_window, to_signed, PrimeBasis};
pub use engine::{
    certificate, certificate_verbose, compare, compare_detailed, quick_reject, signature_chain,
    signature_of, Comparison, Component, EngineConfig, PrimeComponent, Signature, Verdict, Witness,
};
pub use error::{Error, Result};
pub use graph::{
    apply_permutation, connection_matrix, incidence_graph, parse_graph, parse_incidence, Graph,
    GraphFormat, IncidenceStructure, IntMatrix, Permutation,
};
pub use minors::{minor_pair, MinorPair, MinorPath};
pub use modular::{Modulus, ResidueMatrix};
