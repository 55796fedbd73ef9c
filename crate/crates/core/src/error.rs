use thiserror::Error;

/// Errors produced by this crate.
///
/// The CLI reports `Parse` and `Domain` as rejected input (exit 3, usage
/// errors being the command line's own business) and `Internal` as a bug
/// (exit 4).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed textual input (rationals, witnesses, field elements).
    #[error("parse error: {0}")]
    Parse(String),

    /// Input outside an operation's domain (degenerate parameter where a
    /// field is required, zero determinant, witness (0,0), ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two routes that must agree disagreed. Always a bug, never bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
