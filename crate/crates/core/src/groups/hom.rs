//! Checking that generator images in a permutation group kill every relator.

use thiserror::Error;

use super::presentation::Presentation;
use crate::partial::Perm;

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("expected {expected} generator images, got {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("generator images act on sets of different sizes")]
    DegreeMismatch,
    #[error("relator {0} does not map to the identity")]
    RelatorNotKilled(usize),
    #[error("generated group exceeds {0} elements")]
    ClosureCapExceeded(usize),
}

/// Generator images of a homomorphism onto a finite permutation group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuotientEvidence {
    pub generator_images: Vec<Perm>,
    pub group_order: usize,
}

impl FiniteQuotientEvidence {
    pub fn is_nontrivial(&self) -> bool {
        self.group_order > 1
    }
}

pub fn verify_quotient_hom(p: &Presentation, images: &[Perm]) -> Result<FiniteQuotientEvidence, HomError> {
    verify_quotient_hom_with_cap(p, images, DEFAULT_CLOSURE_CAP)
}

pub fn verify_quotient_hom_with_cap(
    p: &Presentation,
    images: &[Perm],
    cap: usize,
) -> Result<FiniteQuotientEvidence, HomError> {
    if images.len() != p.rank() {
        return Err(HomError::ImageCount { expected: p.rank(), found: images.len() });
    }
    let degree = images.first().map_or(1, Perm::degree);
    if images.iter().any(|g| g.degree() != degree) {
        return Err(HomError::DegreeMismatch);
    }
    let inverses: Vec<Perm> = images.iter().map(Perm::inverse).collect();
    for (i, r) in p.relators().iter().enumerate() {
        let value = r.letters().iter().fold(Perm::identity(degree), |acc, l| {
            let g = if l.inverse { &inverses[l.generator] } else { &images[l.generator] };
            acc.compose(g)
        });
        if !value.is_identity() {
            return Err(HomError::RelatorNotKilled(i));
        }
    }
    let group = generated_group(images, degree, cap).ok_or(HomError::ClosureCapExceeded(cap))?;
    Ok(FiniteQuotientEvidence { generator_images: images.to_vec(), group_order: group.len() })
}

/// All elements of the permutation group generated by `gens`, or `None` past `cap` elements.
pub fn generated_group(gens: &[Perm], degree: usize, cap: usize) -> Option<Vec<Perm>> {
    let mut seen = std::collections::HashSet::new();
    let id = Perm::identity(degree);
    seen.insert(id.clone());
    let mut elements = vec![id];
    let mut k = 0;
    while k < elements.len() {
        for g in gens {
            let y = elements[k].compose(g);
            if seen.insert(y.clone()) {
                if elements.len() >= cap {
                    return None;
                }
                elements.push(y);
            }
        }
        k += 1;
    }
    Some(elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_presentation;

    fn perm(v: &[usize]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn five_cycle() {
        let p = parse_presentation("gens: a; rels: a^5").unwrap();
        let e = verify_quotient_hom(&p, &[perm(&[1, 2, 3, 4, 0])]).unwrap();
        assert_eq!(e.group_order, 5);
        assert!(e.is_nontrivial());
    }

    #[test]
    fn identity_image() {
        let p = parse_presentation("gens: a; rels: a^5").unwrap();
        let e = verify_quotient_hom(&p, &[perm(&[0, 1, 2])]).unwrap();
        assert_eq!(e.group_order, 1);
        assert!(!e.is_nontrivial());
    }

    #[test]
    fn transposition_does_not_kill_fifth_power() {
        let p = parse_presentation("gens: a; rels: a^5").unwrap();
        assert_eq!(verify_quotient_hom(&p, &[perm(&[1, 0])]), Err(HomError::RelatorNotKilled(0)));
    }

    #[test]
    fn closure_cap() {
        let p = parse_presentation("gens: a, b").unwrap();
        let imgs = [perm(&[1, 2, 3, 4, 0]), perm(&[1, 0, 2, 3, 4])];
        assert_eq!(verify_quotient_hom_with_cap(&p, &imgs, 10), Err(HomError::ClosureCapExceeded(10)));
        assert_eq!(verify_quotient_hom(&p, &imgs).unwrap().group_order, 120);
    }
}
