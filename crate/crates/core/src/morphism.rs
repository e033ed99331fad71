//! Morphisms of permutoids and their classification.

use thiserror::Error;

use crate::permutoid::Permutoid;

/// A pair of maps `(φ, Φ)`: `element_map` on element indices and `point_map` on ground points.
///
/// Source and target are passed alongside when validating, so the same map data can be checked
/// against different permutoid pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub point_map: Vec<usize>,
    pub element_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("point map has length {found}, expected {expected}")]
    PointMapLength { expected: usize, found: usize },
    #[error("element map has length {found}, expected {expected}")]
    ElementMapLength { expected: usize, found: usize },
    #[error("point {0} is sent outside the target ground set")]
    PointOutOfRange(usize),
    #[error("element {0} is sent outside the target element set")]
    ElementOutOfRange(usize),
    #[error("identity is not sent to the identity")]
    IdentityNotPreserved,
    #[error("element {p} is not equivariant at point {x}")]
    EquivarianceViolated { p: usize, x: usize },
    #[error("{r} extends {p}·{q} in the source but its image does not extend the image composition")]
    CompositionNotPreserved { p: usize, q: usize, r: usize },
}

/// Classification of a valid morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MorphismKind {
    pub is_isomorphism: bool,
    /// Both maps surjective.
    pub is_quotient: bool,
    /// Point map injective.
    pub is_extension: bool,
    /// Extension whose target elements are all full permutations.
    pub is_complete_extension: bool,
    /// Not one of the four flags: whether the element map is injective.
    pub element_map_injective: bool,
}

impl Morphism {
    pub fn identity(p: &Permutoid) -> Self {
        Morphism { point_map: (0..p.ground_size()).collect(), element_map: (0..p.len()).collect() }
    }

    /// Checks all three morphism clauses and classifies the morphism.
    pub fn validate(&self, source: &Permutoid, target: &Permutoid) -> Result<MorphismKind, MorphismError> {
        if self.point_map.len() != source.ground_size() {
            return Err(MorphismError::PointMapLength {
                expected: source.ground_size(),
                found: self.point_map.len(),
            });
        }
        if self.element_map.len() != source.len() {
            return Err(MorphismError::ElementMapLength {
                expected: source.len(),
                found: self.element_map.len(),
            });
        }
        if let Some(x) = self.point_map.iter().position(|&y| y >= target.ground_size()) {
            return Err(MorphismError::PointOutOfRange(x));
        }
        if let Some(p) = self.element_map.iter().position(|&q| q >= target.len()) {
            return Err(MorphismError::ElementOutOfRange(p));
        }
        if self.element_map[source.identity_index()] != target.identity_index() {
            return Err(MorphismError::IdentityNotPreserved);
        }
        for (p, elem) in source.elements().iter().enumerate() {
            let image = target.element(self.element_map[p]);
            for (x, y) in elem.iter() {
                if image.apply(self.point_map[x]) != Some(self.point_map[y]) {
                    return Err(MorphismError::EquivarianceViolated { p, x });
                }
            }
        }
        for (p, q, r) in source.witness_triples() {
            let (fp, fq, fr) = (self.element_map[p], self.element_map[q], self.element_map[r]);
            let ok = match target.element(fp).compose_unchecked(target.element(fq)) {
                Some(c) => target.element(fr).extends(&c),
                None => false,
            };
            if !ok {
                return Err(MorphismError::CompositionNotPreserved { p, q, r });
            }
        }
        Ok(self.classify(source, target))
    }

    fn classify(&self, source: &Permutoid, target: &Permutoid) -> MorphismKind {
        let points_injective = is_injective(&self.point_map, target.ground_size());
        let points_surjective = is_surjective(&self.point_map, target.ground_size());
        let elements_injective = is_injective(&self.element_map, target.len());
        let elements_surjective = is_surjective(&self.element_map, target.len());
        let is_quotient = points_surjective && elements_surjective;
        let is_extension = points_injective;
        let is_complete_extension = is_extension && target.is_complete();
        let is_isomorphism = points_injective
            && points_surjective
            && elements_injective
            && elements_surjective
            && source
                .elements()
                .iter()
                .enumerate()
                .all(|(p, e)| e.relabel(&self.point_map) == *target.element(self.element_map[p]));
        MorphismKind {
            is_isomorphism,
            is_quotient,
            is_extension,
            is_complete_extension,
            element_map_injective: elements_injective,
        }
    }
}

/// Free-standing form of [`Morphism::validate`].
pub fn validate_morphism(
    m: &Morphism,
    source: &Permutoid,
    target: &Permutoid,
) -> Result<MorphismKind, MorphismError> {
    m.validate(source, target)
}

fn is_injective(map: &[usize], codomain: usize) -> bool {
    let mut hit = vec![false; codomain];
    map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
}

fn is_surjective(map: &[usize], codomain: usize) -> bool {
    let mut hit = vec![false; codomain];
    for &y in map {
        hit[y] = true;
    }
    hit.into_iter().all(|h| h)
}
