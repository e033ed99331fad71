//! Cameron permutoids: left multiplications by elements of `B_ρ`, acting from `B_ρ` into `B_2ρ`.

use super::ball::CayleyBall;
use super::presentation::Presentation;
use super::realized::{BackendTag, FreeGroup, MarkedGroup, RealizedGroup};
use super::word::{Letter, Word};
use super::{todd_coxeter, CosetError, GroupError};
use crate::morphism::{Morphism, MorphismKind};
use crate::partial::PartialPermutation;
use crate::permutoid::Permutoid;

/// A word-problem oracle for a presentation.
#[derive(Debug, Clone)]
pub enum GroupBackend {
    Finite(RealizedGroup),
    Free(FreeGroup),
}

impl GroupBackend {
    /// Free groups (no relators) get the reduced-word backend; everything else goes through
    /// coset enumeration, and failure to close is reported as inconclusive.
    pub fn resolve(p: &Presentation, max_cosets: usize) -> Result<Self, GroupError> {
        if p.relators().is_empty() {
            return Ok(GroupBackend::Free(FreeGroup::new(p.generators().to_vec())));
        }
        match todd_coxeter(p, max_cosets) {
            Ok(g) => Ok(GroupBackend::Finite(g)),
            Err(CosetError::OutOfBounds { max_cosets }) => Err(GroupError::BackendInconclusive { max_cosets }),
            Err(CosetError::ZeroCap) => Err(GroupError::BackendInconclusive { max_cosets: 0 }),
        }
    }

    pub fn tag(&self) -> BackendTag {
        match self {
            GroupBackend::Finite(g) => g.backend(),
            GroupBackend::Free(_) => BackendTag::FreeGroupBall,
        }
    }

    pub fn generator_names(&self) -> &[String] {
        match self {
            GroupBackend::Finite(g) => g.generator_names(),
            GroupBackend::Free(f) => f.generator_names(),
        }
    }

    pub fn as_finite(&self) -> Option<&RealizedGroup> {
        match self {
            GroupBackend::Finite(g) => Some(g),
            GroupBackend::Free(_) => None,
        }
    }
}

/// A Cameron permutoid together with its group-element labels.
///
/// Point `i` of the ground set is the `i`-th element of `B_2ρ` in breadth-first order, and
/// element `i` of the permutoid is `p_b` for the point `b = i` (so `B_ρ` is the prefix
/// `0..inner_size` and element 0 is the identity on all of `B_2ρ`).
#[derive(Debug, Clone)]
pub struct CameronPermutoid {
    pub radius: usize,
    pub permutoid: Permutoid,
    /// `|B_ρ|`
    pub inner_size: usize,
    /// Geodesic word of every point of `B_2ρ`.
    pub words: Vec<Word>,
    /// For each generator, the element index of its left multiplication.
    pub generator_elements: Vec<usize>,
}

impl CameronPermutoid {
    /// Element index labelled by the point `point`, when that point lies in `B_ρ`.
    pub fn element_of_point(&self, point: usize) -> Option<usize> {
        (point < self.inner_size).then_some(point)
    }
}

pub fn cameron_permutoid(g: &GroupBackend, radius: usize) -> Result<CameronPermutoid, GroupError> {
    match g {
        GroupBackend::Finite(g) => build(g, radius).map(|(c, _)| c),
        GroupBackend::Free(f) => build(f, radius).map(|(c, _)| c),
    }
}

/// Cameron permutoid of a presentation, resolving the word problem first.
pub fn cameron_from_presentation(
    p: &Presentation,
    radius: usize,
    max_cosets: usize,
) -> Result<CameronPermutoid, GroupError> {
    cameron_permutoid(&GroupBackend::resolve(p, max_cosets)?, radius)
}

pub(crate) fn build<G: MarkedGroup>(
    g: &G,
    radius: usize,
) -> Result<(CameronPermutoid, CayleyBall<G::Element>), GroupError> {
    if radius == 0 {
        return Err(GroupError::ZeroRadius);
    }
    let ball = CayleyBall::build(g, 2 * radius);
    let inner_size = ball.prefix_len(radius);
    let n = ball.len();
    let mut elements = Vec::with_capacity(inner_size);
    elements.push(PartialPermutation::identity(n));
    for b in 1..inner_size {
        let mut images = vec![None; n];
        for (x, slot) in images.iter_mut().enumerate().take(inner_size) {
            let y = ball.partial_product(g, b, x).expect("B_ρ · B_ρ ⊆ B_2ρ");
            *slot = Some(y);
        }
        elements.push(PartialPermutation::from_images(images).expect("left multiplication is injective"));
    }
    let names: Vec<String> =
        ball.words()[..inner_size].iter().map(|w| w.display(g.generator_names()).to_string()).collect();
    let permutoid = Permutoid::with_names(n, elements, names).map_err(GroupError::NotAPermutoid)?;
    let generator_elements = (0..g.rank())
        .map(|a| ball.index_of(&g.letter(Letter::pos(a))).expect("generators lie in B_1"))
        .collect();
    let cameron = CameronPermutoid {
        radius,
        permutoid,
        inner_size,
        words: ball.words().to_vec(),
        generator_elements,
    };
    Ok((cameron, ball))
}

/// The inclusion `(Π_ρ′; B_2ρ′) → (Π_ρ; B_2ρ)` for `ρ′ < ρ`.
#[derive(Debug, Clone)]
pub struct RadiusExtension {
    pub small: CameronPermutoid,
    pub large: CameronPermutoid,
    pub morphism: Morphism,
    pub kind: MorphismKind,
}

pub fn radius_extension(g: &GroupBackend, small: usize, large: usize) -> Result<RadiusExtension, GroupError> {
    match g {
        GroupBackend::Finite(g) => radius_extension_in(g, small, large),
        GroupBackend::Free(f) => radius_extension_in(f, small, large),
    }
}

fn radius_extension_in<G: MarkedGroup>(g: &G, small: usize, large: usize) -> Result<RadiusExtension, GroupError> {
    if small == 0 || small >= large {
        return Err(GroupError::RadiusOrder { small, large });
    }
    let (cs, bs) = build(g, small)?;
    let (cl, bl) = build(g, large)?;
    let point_map: Vec<usize> =
        bs.elements().iter().map(|e| bl.index_of(e).expect("balls are nested")).collect();
    // element i of a Cameron permutoid is labelled by point i
    let element_map = (0..cs.permutoid.len()).map(|i| point_map[i]).collect();
    let morphism = Morphism { point_map, element_map };
    let kind = morphism
        .validate(&cs.permutoid, &cl.permutoid)
        .expect("ball inclusion is a morphism of Cameron permutoids");
    Ok(RadiusExtension { small: cs, large: cl, morphism, kind })
}
