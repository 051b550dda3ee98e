//! Standard-library side of the square tiling tools: JSON documents, the
//! sequence text format, SVG output and the `sqtile` command line.

pub mod cli;
pub mod doc;
pub mod seqspec;
pub mod svg;

pub use cli::run;
