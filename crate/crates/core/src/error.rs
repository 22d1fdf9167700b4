use thiserror::Error;

use crate::polyomino::Cell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input contains no cells")]
    EmptyInput,
    #[error("cells are not edge-connected")]
    DisconnectedCells,
    #[error("malformed grid: {0}")]
    MalformedGrid(String),
    #[error("malformed JSON cell list: {0}")]
    MalformedJson(String),
    #[error("cell ({}, {}) is not part of the polyomino", .0.col, .0.row)]
    CellNotFound(Cell),
    #[error("operation would leave no cells")]
    EmptyResult,
    #[error("operation would leave a disconnected collection of cells")]
    DisconnectedResult,
    #[error("polyomino is not convex")]
    NotConvex,
    #[error("polyomino is not a stack polyomino")]
    NotStack,
    #[error("polyomino is a full rectangle; no decomposition applies")]
    IsRectangle,
    #[error("{what}: size {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("inner minors are not a Groebner basis under the chosen variable order")]
    GroebnerUnverified,
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("vertex set is not a facet of the expected complex")]
    NotAFacet,
    #[error("complex is not pure: expected facets of size {expected}, found one of size {found}")]
    NotPure { expected: usize, found: usize },
    #[error("link decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for errors signalling a broken internal invariant (as opposed to bad input).
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotPure { .. } | Error::DecompositionFailed(_) | Error::InvariantViolation(_)
        )
    }

    pub(crate) fn too_large(what: &'static str, size: usize, limit: usize) -> Self {
        Error::TooLarge { what, size, limit }
    }
}
