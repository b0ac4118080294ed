//! Building blocks of the `giv` command-line tool: input format detection,
//! the run report, and the benchmark tables.

pub mod bench;
pub mod input;
pub mod report;
