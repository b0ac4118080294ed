//! Benchmark families: CFI ladders, Desarguesian planes, random graphs.

pub mod cfi;
pub mod field;
pub mod plane;
pub mod random;

pub use cfi::{cfi_ladder, miyazaki, twisted_miyazaki, CfiMode};
pub use field::FieldTable;
pub use plane::{desarguesian_plane, dual_plane};
pub use random::random_graph;
