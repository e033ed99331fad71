//! Finite pseudogroups of partial bijections, stored by their maximal elements.
//!
//! A pseudogroup `H` is represented by the antichain `M` of its maximal elements; `H` itself is
//! every non-empty restriction of an element of `M`. Generation closes under identity, inverses,
//! composition and restriction. Gluing of agreeing elements is not applied (on a finite discrete
//! set it would merge every pair of maps that agree somewhere, which destroys rigidity of the
//! pseudogroups of free actions).

use thiserror::Error;

use crate::develop::{search_with_filter, DevelopError, Development, DevelopmentProblem, SearchStats, SearchVerdict};
use crate::groups::{generated_group, RealizedGroup};
use crate::morphism::{Morphism, MorphismKind};
use crate::partial::{PartialPermutation, Perm};
use crate::permutoid::Permutoid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PseudogroupError {
    #[error("map {index} acts on {found} points, expected {expected}")]
    GroundSetMismatch { index: usize, expected: usize, found: usize },
    #[error("ground set must be non-empty")]
    EmptyGroundSet,
    #[error("maximal elements {a} and {b} agree at {x}")]
    NotRigid { a: usize, b: usize, x: usize },
    #[error("group element {g} fixes {y}")]
    NotFree { g: usize, y: usize },
    #[error("action does not respect the product of {g} and {h}")]
    NotAnAction { g: usize, h: usize },
    #[error("expected one permutation per group element ({expected}), got {found}")]
    ActionSize { expected: usize, found: usize },
    #[error("generated group exceeds {0} elements")]
    GroupClosureCapExceeded(usize),
    #[error(transparent)]
    Develop(#[from] DevelopError),
}

/// A pseudogroup on `{0, …, ground_size-1}` given by its maximal elements.
///
/// Maximal elements are kept sorted with the identity first, then by graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pseudogroup {
    ground_size: usize,
    maximal: Vec<PartialPermutation>,
}

impl Pseudogroup {
    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn maximal_elements(&self) -> &[PartialPermutation] {
        &self.maximal
    }

    /// Whether `f` is a restriction of some maximal element.
    pub fn contains(&self, f: &PartialPermutation) -> Result<bool, PseudogroupError> {
        if f.ground_size() != self.ground_size {
            return Err(PseudogroupError::GroundSetMismatch {
                index: 0,
                expected: self.ground_size,
                found: f.ground_size(),
            });
        }
        Ok(self.maximal.iter().any(|m| m.extends(f)))
    }

    /// The first pair of distinct maximal elements agreeing at a point, if any.
    pub fn rigidity_violation(&self) -> Option<(usize, usize, usize)> {
        for (a, ma) in self.maximal.iter().enumerate() {
            for (b, mb) in self.maximal.iter().enumerate().skip(a + 1) {
                if let Some((x, _)) = ma.iter().find(|&(x, y)| mb.apply(x) == Some(y)) {
                    return Some((a, b, x));
                }
            }
        }
        None
    }

    pub fn is_rigid(&self) -> bool {
        self.rigidity_violation().is_none()
    }

    /// Index of the unique maximal element extending `f`, when `H` is rigid and `f ∈ H`.
    pub fn maximal_extension(&self, f: &PartialPermutation) -> Option<usize> {
        self.maximal.iter().position(|m| m.extends(f))
    }
}

/// Saturates `generators ∪ {1}` under inverses and composition, keeping only maximal elements.
pub fn generate_pseudogroup(
    ground_size: usize,
    generators: &[PartialPermutation],
) -> Result<Pseudogroup, PseudogroupError> {
    if ground_size == 0 {
        return Err(PseudogroupError::EmptyGroundSet);
    }
    if let Some((index, g)) = generators.iter().enumerate().find(|(_, g)| g.ground_size() != ground_size) {
        return Err(PseudogroupError::GroundSetMismatch { index, expected: ground_size, found: g.ground_size() });
    }
    let mut sat = Saturation { maximal: Vec::new(), pending: Vec::new() };
    sat.insert(PartialPermutation::identity(ground_size));
    for g in generators {
        sat.insert(g.clone());
    }
    while let Some(f) = sat.pending.pop() {
        if !sat.maximal.contains(&f) {
            // superseded: its products are restrictions of its extension's products
            continue;
        }
        sat.insert(f.inverse());
        let snapshot = sat.maximal.clone();
        for m in &snapshot {
            for prod in [f.compose_unchecked(m), m.compose_unchecked(&f)].into_iter().flatten() {
                sat.insert(prod);
            }
        }
    }
    let mut maximal = sat.maximal;
    maximal.sort_by_cached_key(|m| (!m.is_identity(), m.pairs()));
    Ok(Pseudogroup { ground_size, maximal })
}

struct Saturation {
    maximal: Vec<PartialPermutation>,
    pending: Vec<PartialPermutation>,
}

impl Saturation {
    fn insert(&mut self, f: PartialPermutation) {
        if self.maximal.iter().any(|m| m.extends(&f)) {
            return;
        }
        self.maximal.retain(|m| !f.extends(m));
        self.maximal.push(f.clone());
        self.pending.push(f);
    }
}

/// The maximal elements of a rigid pseudogroup as a permutoid, in the pseudogroup's order.
pub fn maximal_permutoid(h: &Pseudogroup) -> Result<Permutoid, PseudogroupError> {
    if let Some((a, b, x)) = h.rigidity_violation() {
        return Err(PseudogroupError::NotRigid { a, b, x });
    }
    let names = (0..h.maximal.len()).map(|i| format!("m{i}")).collect();
    Ok(Permutoid::with_names(h.ground_size, h.maximal.clone(), names)
        .expect("maximal elements of a rigid pseudogroup form a permutoid"))
}

/// A permutoid, its generated pseudogroup, and the extension onto the maximal elements.
#[derive(Debug, Clone)]
pub struct MaximalExtension {
    pub pseudogroup: Pseudogroup,
    pub maximal: Permutoid,
    /// Identity on points; each element goes to its unique maximal extension.
    pub morphism: Morphism,
    pub kind: MorphismKind,
}

pub fn extend_to_maximal(p: &Permutoid) -> Result<MaximalExtension, PseudogroupError> {
    let pseudogroup = generate_pseudogroup(p.ground_size(), p.elements())?;
    let maximal = maximal_permutoid(&pseudogroup)?;
    let element_map = p
        .elements()
        .iter()
        .map(|e| pseudogroup.maximal_extension(e).expect("generators lie in their pseudogroup"))
        .collect();
    let morphism = Morphism { point_map: (0..p.ground_size()).collect(), element_map };
    let kind = morphism.validate(p, &maximal).expect("inclusion into the maximal elements is a morphism");
    Ok(MaximalExtension { pseudogroup, maximal, morphism, kind })
}

/// The pseudogroup of a free action: `action[g]` is the permutation by which element `g` acts.
pub fn group_action_pseudogroup(g: &RealizedGroup, action: &[Perm]) -> Result<Pseudogroup, PseudogroupError> {
    if action.len() != g.order() {
        return Err(PseudogroupError::ActionSize { expected: g.order(), found: action.len() });
    }
    let degree = action[0].degree();
    if degree == 0 {
        return Err(PseudogroupError::EmptyGroundSet);
    }
    if let Some(index) = action.iter().position(|a| a.degree() != degree) {
        return Err(PseudogroupError::GroundSetMismatch { index, expected: degree, found: action[index].degree() });
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if action[g.mul(a, b)] != action[a].compose(&action[b]) {
                return Err(PseudogroupError::NotAnAction { g: a, h: b });
            }
        }
    }
    for (i, a) in action.iter().enumerate().skip(1) {
        if let Some(y) = a.first_fixed_point() {
            return Err(PseudogroupError::NotFree { g: i, y });
        }
    }
    let mut maximal: Vec<PartialPermutation> = action.iter().map(Perm::to_partial).collect();
    maximal.sort_by_cached_key(|m| (!m.is_identity(), m.pairs()));
    Ok(Pseudogroup { ground_size: degree, maximal })
}

/// A free group action on `Y ⊇ X` whose transformations extend the maximal elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidDevelopment {
    pub target_size: usize,
    /// The group generated by the extensions, identity first.
    pub group: Vec<Perm>,
    /// For each maximal element, the index in `group` of its extension.
    pub assignment: Vec<usize>,
    /// The same data as a development of the maximal permutoid.
    pub development: Development,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RigidSearchVerdict {
    Found { development: RigidDevelopment, stats: SearchStats },
    ExhaustedUpTo { max_ground: usize, stats: SearchStats },
    BudgetExceeded { completed_up_to: Option<usize>, stats: SearchStats },
}

/// Searches for a development of the maximal permutoid whose generated group acts freely.
pub fn search_rigid_development(
    h: &Pseudogroup,
    max_ground: usize,
    node_budget: u64,
    group_cap: usize,
    deterministic: bool,
) -> Result<RigidSearchVerdict, PseudogroupError> {
    let maximal = maximal_permutoid(h)?;
    let problem = DevelopmentProblem { source: maximal, max_ground, node_budget, deterministic };
    let free = |d: &Development| -> Result<bool, PseudogroupError> {
        let group = generated_group(&d.maps, d.target_size, group_cap)
            .ok_or(PseudogroupError::GroupClosureCapExceeded(group_cap))?;
        Ok(group.iter().skip(1).all(|g| g.first_fixed_point().is_none()))
    };
    match search_with_filter(&problem, free)?? {
        SearchVerdict::Found { development, stats } => {
            let group = generated_group(&development.maps, development.target_size, group_cap)
                .expect("closure succeeded inside the search");
            let assignment = development
                .maps
                .iter()
                .map(|f| group.iter().position(|g| g == f).expect("generator lies in its group"))
                .collect();
            let development =
                RigidDevelopment { target_size: development.target_size, group, assignment, development };
            Ok(RigidSearchVerdict::Found { development, stats })
        }
        SearchVerdict::ExhaustedUpTo { max_ground, stats } => Ok(RigidSearchVerdict::ExhaustedUpTo { max_ground, stats }),
        SearchVerdict::BudgetExceeded { completed_up_to, stats } => {
            Ok(RigidSearchVerdict::BudgetExceeded { completed_up_to, stats })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::develop::verify_development;
    use crate::groups::{cameron_from_presentation, parse_presentation, todd_coxeter};

    fn pp(n: usize, pairs: &[(usize, usize)]) -> PartialPermutation {
        PartialPermutation::from_pairs(n, pairs).unwrap()
    }

    fn graphs(h: &Pseudogroup) -> Vec<Vec<(usize, usize)>> {
        h.maximal_elements().iter().map(|m| m.pairs()).collect()
    }

    #[test]
    fn single_partial_map() {
        let h = generate_pseudogroup(3, &[pp(3, &[(0, 1)])]).unwrap();
        assert_eq!(graphs(&h), vec![vec![(0, 0), (1, 1), (2, 2)], vec![(0, 1)], vec![(1, 0)]]);
        assert!(h.is_rigid());
    }

    #[test]
    fn no_generators() {
        let h = generate_pseudogroup(2, &[]).unwrap();
        assert_eq!(graphs(&h), vec![vec![(0, 0), (1, 1)]]);
    }

    #[test]
    fn mismatched_generators() {
        assert!(matches!(
            generate_pseudogroup(3, &[pp(2, &[(0, 1)])]),
            Err(PseudogroupError::GroundSetMismatch { index: 0, expected: 3, found: 2 })
        ));
    }

    #[test]
    fn cyclic_four_cameron_saturates_to_left_multiplications() {
        let c = cameron_from_presentation(&parse_presentation("gens: a; rels: a^4").unwrap(), 2, 100).unwrap();
        let h = generate_pseudogroup(4, c.permutoid.elements()).unwrap();
        assert_eq!(h.maximal_elements().len(), 4);
        assert!(h.maximal_elements().iter().all(PartialPermutation::is_total));
        // {1 ↦ a, a ↦ a³} is not a restriction of any left multiplication
        let a = c.generator_elements[0];
        let a_point = a;
        let a3 = (0..4).find(|&x| c.words[x].len() == 1 && x != a).unwrap();
        let f = pp(4, &[(0, a_point), (a_point, a3)]);
        assert!(!h.contains(&f).unwrap());
        assert!(h.contains(&pp(4, &[(0, a_point)])).unwrap());
        assert!(h.contains(&PartialPermutation::identity(4)).unwrap());
    }

    #[test]
    fn agreeing_maximal_elements_are_not_rigid() {
        let h = generate_pseudogroup(4, &[pp(4, &[(0, 1), (1, 0)]), pp(4, &[(0, 1), (2, 3)])]).unwrap();
        assert!(!h.is_rigid());
        assert!(matches!(maximal_permutoid(&h), Err(PseudogroupError::NotRigid { .. })));
        assert!(matches!(search_rigid_development(&h, 6, 1000, 100, true), Err(PseudogroupError::NotRigid { .. })));
    }

    #[test]
    fn maximal_permutoid_of_single_map() {
        let h = generate_pseudogroup(3, &[pp(3, &[(0, 1)])]).unwrap();
        let p = maximal_permutoid(&h).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.is_rigid());
        // both composites of the two partial maps extend into the identity
        assert_eq!(p.extension_witness(1, 2), crate::permutoid::Witness::Extends(0));
        assert_eq!(p.extension_witness(2, 1), crate::permutoid::Witness::Extends(0));
    }

    #[test]
    fn maximal_permutoid_of_cameron_pseudogroup() {
        let pres = parse_presentation("gens: a; rels: a^3").unwrap();
        let small = cameron_from_presentation(&pres, 1, 100).unwrap();
        let big = cameron_from_presentation(&pres, 2, 100).unwrap();
        let h = generate_pseudogroup(3, small.permutoid.elements()).unwrap();
        let m = maximal_permutoid(&h).unwrap();
        assert_eq!(crate::canon::canonical_form(&m).unwrap(), crate::canon::canonical_form(&big.permutoid).unwrap());
    }

    #[test]
    fn extension_to_maximal_elements() {
        let c = cameron_from_presentation(&parse_presentation("gens: a; rels: a^3").unwrap(), 2, 100).unwrap();
        let ext = extend_to_maximal(&c.permutoid).unwrap();
        assert!(ext.kind.is_isomorphism);
        assert!(ext.kind.element_map_injective);

        // without gluing, the two halves of a swap stay separate maximal elements
        let p = Permutoid::new(2, vec![PartialPermutation::identity(2), pp(2, &[(0, 1)]), pp(2, &[(1, 0)])]).unwrap();
        let ext = extend_to_maximal(&p).unwrap();
        assert!(ext.kind.is_isomorphism);

        // here v·u is the swap of 0 and 1, which extends both p1 and p2
        let u = pp(4, &[(0, 2), (1, 3)]);
        let v = pp(4, &[(2, 1), (3, 0)]);
        let p = Permutoid::new(
            4,
            vec![PartialPermutation::identity(4), u, v, pp(4, &[(0, 1)]), pp(4, &[(1, 0)])],
        )
        .unwrap();
        let ext = extend_to_maximal(&p).unwrap();
        assert!(ext.kind.is_extension);
        assert!(!ext.kind.element_map_injective);
        assert_eq!(ext.morphism.element_map[3], ext.morphism.element_map[4]);
        assert_eq!(ext.maximal.element(ext.morphism.element_map[3]).pairs(), vec![(0, 1), (1, 0)]);

        let t = Permutoid::new(2, vec![PartialPermutation::identity(2)]).unwrap();
        let ext = extend_to_maximal(&t).unwrap();
        assert_eq!(ext.morphism, Morphism::identity(&t));
    }

    fn regular_action(g: &RealizedGroup) -> Vec<Perm> {
        (0..g.order()).map(|a| Perm::from_images((0..g.order()).map(|x| g.mul(a, x)).collect()).unwrap()).collect()
    }

    #[test]
    fn free_actions() {
        let z2 = todd_coxeter(&parse_presentation("gens: a; rels: a^2").unwrap(), 10).unwrap();
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let h = group_action_pseudogroup(&z2, &[Perm::identity(2), swap]).unwrap();
        assert_eq!(h.maximal_elements().len(), 2);
        assert!(h.is_rigid());
        assert_eq!(
            group_action_pseudogroup(&z2, &[Perm::identity(2), Perm::identity(2)]),
            Err(PseudogroupError::NotFree { g: 1, y: 0 })
        );
        let s3 = todd_coxeter(&parse_presentation("gens: a, b; rels: a^2, b^3, a b a b").unwrap(), 100).unwrap();
        let h = group_action_pseudogroup(&s3, &regular_action(&s3)).unwrap();
        assert_eq!(h.maximal_elements().len(), 6);
        assert!(h.is_rigid());
    }

    #[test]
    fn non_action_is_rejected() {
        let z3 = todd_coxeter(&parse_presentation("gens: a; rels: a^3").unwrap(), 10).unwrap();
        let mut action = regular_action(&z3);
        action[1] = Perm::from_images(vec![1, 0, 2]).unwrap();
        assert!(matches!(group_action_pseudogroup(&z3, &action), Err(PseudogroupError::NotAnAction { .. })));
    }

    #[test]
    fn rigid_development_of_single_map_is_a_three_cycle() {
        let h = generate_pseudogroup(3, &[pp(3, &[(0, 1)])]).unwrap();
        let RigidSearchVerdict::Found { development: d, .. } = search_rigid_development(&h, 5, 100_000, 1000, true).unwrap()
        else {
            panic!("no rigid development")
        };
        assert_eq!(d.target_size, 3);
        assert_eq!(d.group.len(), 3);
        assert_eq!(d.development.maps[1].images(), &[1, 2, 0]);
        verify_development(&maximal_permutoid(&h).unwrap(), &d.development).unwrap();
    }

    #[test]
    fn rigid_development_of_cyclic_four() {
        let c = cameron_from_presentation(&parse_presentation("gens: a; rels: a^4").unwrap(), 2, 100).unwrap();
        let h = generate_pseudogroup(4, c.permutoid.elements()).unwrap();
        let RigidSearchVerdict::Found { development: d, .. } = search_rigid_development(&h, 6, 100_000, 1000, true).unwrap()
        else {
            panic!("no rigid development")
        };
        assert_eq!(d.target_size, 4);
        assert_eq!(d.group.len(), 4);
        let mut orders: Vec<usize> = d
            .group
            .iter()
            .map(|g| (1..=4).find(|&k| (0..k).fold(Perm::identity(4), |acc, _| acc.compose(g)).is_identity()).unwrap())
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4]);
    }

    #[test]
    fn closure_cap_is_reported() {
        let h = generate_pseudogroup(3, &[pp(3, &[(0, 1)])]).unwrap();
        assert_eq!(
            search_rigid_development(&h, 5, 100_000, 2, true),
            Err(PseudogroupError::GroupClosureCapExceeded(2))
        );
    }
}
