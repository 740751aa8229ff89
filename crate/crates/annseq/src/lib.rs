//! File formats, random families, benchmarks and the `annseq` command line
//! on top of `annseq-core`.

pub mod bench;
pub mod gen;
pub mod io;
pub mod suites;
