use std::fmt;

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::constructions::ConstructionError;
use crate::identity::IdentityError;
use crate::morphism::MorphismError;

/// Syntax or name-resolution error with a source position.
///
/// `line` is 1-based; it is 0 when the input was a single expression with no
/// line structure.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(col: usize, message: impl Into<String>) -> Self {
        ParseError { line: 0, col, message: message.into() }
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = line;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
        } else {
            write!(f, "column {}: {}", self.col, self.message)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("dimension mismatch: expected {expected}, found {found}")]
pub struct DimensionMismatch {
    pub expected: usize,
    pub found: usize,
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<(), DimensionMismatch> {
    if expected == found {
        Ok(())
    } else {
        Err(DimensionMismatch { expected, found })
    }
}

/// Umbrella error for callers that drive several modules at once.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}
