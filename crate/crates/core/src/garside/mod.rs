//! The Garside category of a flat, involutive, simplicial MH complex.
//!
//! Simples are vertex pairs u(x,y) and every operation on them reduces to
//! the betweenness predicate d(x,y) + d(y,z) = d(x,z).

mod context;
mod groupoid;
mod morphism;
mod presentation;
mod verify;

use thiserror::Error;

use crate::complex::Vertex;
use crate::mh::{MhError, Witness};
use crate::oracle::OracleError;

pub use context::{make_context, GarsideContext};
pub use groupoid::{word_source, GroupoidElement};
pub use morphism::{Morphism, Simple};
pub use presentation::{abelianization, presentation, Abelianization, GenLetter, Presentation};
pub use verify::{verify_garside, AxiomCheck, GarsideReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GarsideError {
    #[error("complex is not MH: {0}")]
    NotMh(Witness),
    #[error("complex is not flat: {0}")]
    NotFlat(String),
    #[error("complex is not involutive: {0}")]
    NotInvolutive(MhError),
    #[error("complex is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("morphisms do not share a source")]
    SourceMismatch,
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("letter {0} does not start where the word has arrived")]
    WordNotComposable(usize),
    #[error("extremum is not unique: {0}")]
    NotUniqueExtremum(String),
    #[error("no unique 2-cell through vertices {0}, {1} and {2}")]
    MissingTwoCell(Vertex, Vertex, Vertex),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
