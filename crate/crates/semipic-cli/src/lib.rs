//! Library side of the semipic command-line tool: picture documents with
//! exact-rational JSON serialization, SVG rendering, and the verification
//! suites the `verify` subcommand drives.

pub mod document;
pub mod suites;
pub mod svg;
