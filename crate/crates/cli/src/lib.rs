//! Expression syntax and the `fta` command-line driver.

pub mod commands;
pub mod parse;

pub use commands::{run, Outcome};
pub use parse::{parse, parse_element, parse_unbounded, Expr, ParseError, ParseErrorKind};
