//! Group presentations, word-problem backends, Cayley balls and Cameron permutoids.

mod ball;
mod cameron;
mod coset;
mod hom;
mod presentation;
mod realized;
mod triangulate;
mod universal;
mod word;

use thiserror::Error;

pub use ball::{cayley_ball, CayleyBall};
pub use cameron::{
    cameron_from_presentation, cameron_permutoid, radius_extension, CameronPermutoid, GroupBackend,
    RadiusExtension,
};
pub use coset::{todd_coxeter, CosetError};
pub use hom::{
    generated_group, verify_quotient_hom, verify_quotient_hom_with_cap, FiniteQuotientEvidence, HomError,
    DEFAULT_CLOSURE_CAP,
};
pub use presentation::{parse_presentation, parse_presentation_with_warnings, parse_word, ParseError, ParseWarning, Presentation};
pub use realized::{BackendTag, FreeGroup, MarkedGroup, RealizedGroup, TableError};
pub use triangulate::{triangulate, Triangulation};
pub use universal::universal_group;
pub use word::{free_reduce, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("word problem not resolved: coset enumeration exceeded {max_cosets} cosets")]
    BackendInconclusive { max_cosets: usize },
    #[error("radius {radius} too small: need 2·radius > {max_relator}")]
    PreconditionRadius { radius: usize, max_relator: usize },
    #[error("radius must be positive")]
    ZeroRadius,
    #[error("need 0 < {small} < {large}")]
    RadiusOrder { small: usize, large: usize },
    #[error("a finite multiplication table is required")]
    FiniteBackendRequired,
    #[error("constructed set is not a permutoid: {0}")]
    NotAPermutoid(crate::permutoid::ValidationError),
}
