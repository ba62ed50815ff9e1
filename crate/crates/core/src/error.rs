use thiserror::Error;

use crate::group::Element;

/// Errors produced while building or analysing spaces on a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a group needs at least one cyclic factor")]
    EmptyGroup,
    #[error("modulus {0} is not a positive integer")]
    InvalidModulus(i64),
    #[error("element {element:?} is not a valid element of Z_{moduli:?}")]
    InvalidElement { element: Vec<i64>, moduli: Vec<usize> },
    #[error("expected a vector of length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("values live on different groups")]
    GroupMismatch,
    #[error("{inner} is not contained in {outer}")]
    NotContained {
        inner: &'static str,
        outer: &'static str,
    },
    #[error("{0:?} is not a section representative")]
    NotInSection(Element),
    #[error("{0:?} is not a representative of H*/M*")]
    NotInNuSection(Element),
    #[error("{0:?} is not an element of M")]
    NotInM(Element),
    #[error("the generator list is empty")]
    NoGenerators,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
