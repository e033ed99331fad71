//! Finite developments: complete finite extensions of a permutoid.
//!
//! A development of `(Π; X)` is a finite set `Y ⊇ X` (here always `X` as the prefix of
//! `{0, …, |Y|-1}`) with a permutation `f_p` of `Y` extending each `p ∈ Π`, such that
//! `f_p ∘ f_q = f_r` whenever `r` extends `p·q`, and `f_1 = 1_Y`.

mod probe;
mod search;
mod verify;

use thiserror::Error;

use crate::partial::Perm;

pub use probe::{
    probe_finite_quotient, quotient_evidence, EvidenceError, ProbeError, ProbeOptions, ProbeReport, ProbeStats,
    ProbeVerdict,
};
pub use search::{search_development, search_with_filter, DevelopmentProblem, SearchStats, SearchVerdict};
pub use verify::{verify_development, DevelopmentError};

/// One permutation of `{0, …, target_size-1}` per source element, in element order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Development {
    pub target_size: usize,
    pub maps: Vec<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DevelopError {
    #[error("max_ground {max_ground} is smaller than the source ground set ({ground_size})")]
    MaxGroundTooSmall { max_ground: usize, ground_size: usize },
}
