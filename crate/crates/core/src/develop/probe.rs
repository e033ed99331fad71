//! Looking for a non-trivial finite quotient of a presented group through developments of
//! quotients of its Cameron permutoid.

use thiserror::Error;

use super::{search_development, verify_development, Development, DevelopmentError, DevelopmentProblem, SearchVerdict};
use crate::canon::{GroundSetTooLarge, DEFAULT_CANON_CAP};
use crate::groups::{
    cameron_permutoid, verify_quotient_hom_with_cap, CameronPermutoid, FiniteQuotientEvidence, GroupBackend,
    GroupError, HomError, Presentation, DEFAULT_CLOSURE_CAP,
};
use crate::quotient::{enumerate_quotients, Quotient, QuotientOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvidenceError {
    #[error("not a development of the quotient: {0}")]
    Development(#[from] DevelopmentError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("generator images generate the trivial group")]
    Trivial,
}

/// Sends each generator `a` to the development map of the image of `p_a` under the quotient
/// map, and certifies the result as a homomorphism onto a non-trivial permutation group.
pub fn quotient_evidence(
    p: &Presentation,
    cameron: &CameronPermutoid,
    quotient: &Quotient,
    development: &Development,
    closure_cap: usize,
) -> Result<FiniteQuotientEvidence, EvidenceError> {
    verify_development(&quotient.permutoid, development)?;
    let images: Vec<_> = cameron
        .generator_elements
        .iter()
        .map(|&e| development.maps[quotient.morphism.element_map[e]].clone())
        .collect();
    let evidence = verify_quotient_hom_with_cap(p, &images, closure_cap)?;
    if !evidence.is_nontrivial() {
        return Err(EvidenceError::Trivial);
    }
    Ok(evidence)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeOptions {
    pub radius: usize,
    pub max_ground: usize,
    /// Node budget for each quotient's search.
    pub node_budget: u64,
    pub max_cosets: usize,
    pub canon_cap: usize,
    pub closure_cap: usize,
    pub deterministic: bool,
}

impl ProbeOptions {
    pub fn new(radius: usize, max_ground: usize) -> Self {
        ProbeOptions {
            radius,
            max_ground,
            node_budget: 1_000_000,
            max_cosets: 100_000,
            canon_cap: DEFAULT_CANON_CAP,
            closure_cap: DEFAULT_CLOSURE_CAP,
            deterministic: true,
        }
    }
}

#[derive(Debug, Clone)]
pub enum ProbeVerdict {
    FoundQuotient { evidence: FiniteQuotientEvidence, quotient: Quotient, development: Development },
    /// The Cameron permutoid is trivial, so the group itself is trivial.
    DefinitivelyNone,
    /// No quotient developed within the bounds. Not evidence that no finite quotient exists.
    Inconclusive { radius: usize, max_ground: usize, node_budget: u64 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProbeStats {
    pub cameron_ground_size: usize,
    pub cameron_elements: usize,
    pub quotient_classes: usize,
    pub quotients_searched: usize,
    pub budget_exceeded: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub verdict: ProbeVerdict,
    pub stats: ProbeStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Canon(#[from] GroundSetTooLarge),
    #[error("search produced an uncertified development: {0}")]
    Evidence(#[from] EvidenceError),
}

/// Builds the Cameron permutoid at `options.radius`, then tries to develop each non-trivial
/// quotient class, smallest ground set first. The first development found is turned into a
/// certified finite quotient.
pub fn probe_finite_quotient(p: &Presentation, options: &ProbeOptions) -> Result<ProbeReport, ProbeError> {
    if 2 * options.radius <= p.max_relator_len() {
        return Err(GroupError::PreconditionRadius { radius: options.radius, max_relator: p.max_relator_len() }.into());
    }
    let backend = GroupBackend::resolve(p, options.max_cosets)?;
    let cameron = cameron_permutoid(&backend, options.radius)?;
    let mut stats = ProbeStats {
        cameron_ground_size: cameron.permutoid.ground_size(),
        cameron_elements: cameron.permutoid.len(),
        ..ProbeStats::default()
    };
    if cameron.permutoid.is_trivial() {
        return Ok(ProbeReport { verdict: ProbeVerdict::DefinitivelyNone, stats });
    }
    let quotients = enumerate_quotients(
        &cameron.permutoid,
        QuotientOptions { nontrivial_only: true, canon_cap: options.canon_cap },
    )?;
    stats.quotient_classes = quotients.len();
    for quotient in quotients {
        if quotient.permutoid.ground_size() > options.max_ground {
            break;
        }
        stats.quotients_searched += 1;
        let problem = DevelopmentProblem {
            source: quotient.permutoid.clone(),
            max_ground: options.max_ground,
            node_budget: options.node_budget,
            deterministic: options.deterministic,
        };
        let verdict = search_development(&problem).expect("max_ground checked above");
        stats.nodes += verdict.stats().nodes;
        match verdict {
            SearchVerdict::Found { development, .. } => {
                let evidence = quotient_evidence(p, &cameron, &quotient, &development, options.closure_cap)?;
                log::debug!("quotient on {} points developed at size {}", quotient.permutoid.ground_size(), development.target_size);
                return Ok(ProbeReport {
                    verdict: ProbeVerdict::FoundQuotient { evidence, quotient, development },
                    stats,
                });
            }
            SearchVerdict::BudgetExceeded { .. } => stats.budget_exceeded += 1,
            SearchVerdict::ExhaustedUpTo { .. } => {}
        }
    }
    Ok(ProbeReport {
        verdict: ProbeVerdict::Inconclusive {
            radius: options.radius,
            max_ground: options.max_ground,
            node_budget: options.node_budget,
        },
        stats,
    })
}
