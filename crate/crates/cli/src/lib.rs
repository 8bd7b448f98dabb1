//! Command-line front end for the matroid-minor library: constructor
//! expressions, JSON interchange, an enumeration cache and the
//! verification suite.

pub mod cache;
pub mod commands;
pub mod expr;
pub mod json;
pub mod suite;

pub use commands::{run, Cli, CliError, Document, Format};
pub use expr::{parse_matroid_expr, ExprError};
