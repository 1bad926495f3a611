//! Text formats: group fixtures and `E(n)` cyclotomic expressions.

mod cyclo_expr;
mod fixture;

use thiserror::Error;

pub use cyclo_expr::{parse_cyclo, render_cyclo};
pub use fixture::{parse_fixture, parse_fixture_capped, Fixture, FixtureError};

/// A positioned parse failure; `line` and `col` are 1-based.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: expected {expected}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
}

impl SyntaxError {
    pub fn new(line: usize, col: usize, expected: impl Into<String>) -> Self {
        SyntaxError { line, col, expected: expected.into() }
    }
}
