//! Permutoids: sets of partial permutations containing the identity in which every defined
//! composition has at most one extension.

use thiserror::Error;

use crate::partial::{GraphError, PartialPermutation};

/// The first violated clause found while validating a candidate permutoid.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("ground set must be non-empty")]
    EmptyGroundSet,
    #[error("element list is empty")]
    EmptyElementList,
    #[error("element {0} has an empty graph")]
    EmptyElement(usize),
    #[error("element {element} mentions point {point} outside the ground set")]
    PointOutOfRange { element: usize, point: usize },
    #[error("element {element} lives on a ground set of size {found}")]
    GroundSetMismatch { element: usize, found: usize },
    #[error("element {0} is not functional")]
    NotFunctional(usize),
    #[error("element {0} is not injective")]
    NotInjective(usize),
    #[error("the identity of the ground set is missing")]
    MissingIdentity,
    #[error("elements {0} and {1} have equal graphs")]
    DuplicateElement(usize, usize),
    #[error("composition {p}·{q} is extended by both {r1} and {r2}")]
    UniqueExtensionViolated { p: usize, q: usize, r1: usize, r2: usize },
}

impl ValidationError {
    fn from_graph(element: usize, err: GraphError) -> Self {
        match err {
            GraphError::Empty => ValidationError::EmptyElement(element),
            GraphError::OutOfRange { point, .. } => ValidationError::PointOutOfRange { element, point },
            GraphError::NotFunctional(_) => ValidationError::NotFunctional(element),
            GraphError::NotInjective(_) => ValidationError::NotInjective(element),
        }
    }
}

/// Outcome of looking up the element that extends a composition `p·q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    /// The unique element whose graph contains the graph of `p·q`.
    Extends(usize),
    /// `p·q` is defined but nothing in the permutoid extends it.
    NoWitness,
    /// `ran(q) ∩ dom(p)` is empty.
    Undefined,
}

/// A validated permutoid on the ground set `{0, …, ground_size-1}`.
///
/// The witness table is derived from the graphs at construction time and cannot be supplied
/// from outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutoid {
    ground_size: usize,
    elements: Vec<PartialPermutation>,
    names: Vec<String>,
    identity_index: usize,
    witnesses: Vec<Witness>,
}

/// Validates raw graphs; element order defines indices.
pub fn validate_permutoid(
    ground_size: usize,
    graphs: &[Vec<(usize, usize)>],
) -> Result<Permutoid, ValidationError> {
    let elements = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            PartialPermutation::from_pairs(ground_size, g).map_err(|e| ValidationError::from_graph(i, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Permutoid::new(ground_size, elements)
}

impl Permutoid {
    pub fn new(ground_size: usize, elements: Vec<PartialPermutation>) -> Result<Self, ValidationError> {
        let names = (0..elements.len()).map(|i| format!("p{i}")).collect();
        Self::with_names(ground_size, elements, names)
    }

    /// Like [`Permutoid::new`] with explicit element names. `names` must match `elements` in length.
    pub fn with_names(
        ground_size: usize,
        elements: Vec<PartialPermutation>,
        names: Vec<String>,
    ) -> Result<Self, ValidationError> {
        assert_eq!(elements.len(), names.len(), "one name per element");
        if ground_size == 0 {
            return Err(ValidationError::EmptyGroundSet);
        }
        if elements.is_empty() {
            return Err(ValidationError::EmptyElementList);
        }
        for (i, e) in elements.iter().enumerate() {
            if e.ground_size() != ground_size {
                return Err(ValidationError::GroundSetMismatch { element: i, found: e.ground_size() });
            }
            if e.is_empty() {
                return Err(ValidationError::EmptyElement(i));
            }
        }
        let identity_index =
            elements.iter().position(|e| e.is_identity()).ok_or(ValidationError::MissingIdentity)?;
        let mut sorted: Vec<usize> = (0..elements.len()).collect();
        sorted.sort_by(|&a, &b| elements[a].cmp(&elements[b]).then(a.cmp(&b)));
        for w in sorted.windows(2) {
            if elements[w[0]] == elements[w[1]] {
                return Err(ValidationError::DuplicateElement(w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        let witnesses = derive_witnesses(ground_size, &elements)?;
        Ok(Permutoid { ground_size, elements, names, identity_index, witnesses })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PartialPermutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PartialPermutation {
        &self.elements[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    /// Only the identity.
    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Every element is a permutation of the ground set.
    pub fn is_complete(&self) -> bool {
        self.elements.iter().all(PartialPermutation::is_total)
    }

    /// The element extending `p·q`, if any. Panics on out-of-range indices.
    pub fn extension_witness(&self, p: usize, q: usize) -> Witness {
        let m = self.elements.len();
        assert!(p < m && q < m, "element index out of range");
        self.witnesses[p * m + q]
    }

    /// All triples `(p, q, r)` with `r` extending `p·q`, in lexicographic `(p, q)` order.
    pub fn witness_triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let m = self.elements.len();
        self.witnesses.iter().enumerate().filter_map(move |(k, w)| match w {
            Witness::Extends(r) => Some((k / m, k % m, *r)),
            _ => None,
        })
    }

    /// No two distinct elements send a point to the same image.
    pub fn is_rigid(&self) -> bool {
        let n = self.ground_size;
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            for e in &self.elements {
                if let Some(y) = e.apply(x) {
                    if seen[y] == x {
                        return false;
                    }
                    seen[y] = x;
                }
            }
        }
        true
    }

    /// Replaces the element names. Panics if the length differs.
    pub fn renamed(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.elements.len());
        self.names = names;
        self
    }
}

/// Free-standing form of [`Permutoid::is_rigid`].
pub fn is_rigid_permutoid(p: &Permutoid) -> bool {
    p.is_rigid()
}

fn derive_witnesses(
    ground_size: usize,
    elements: &[PartialPermutation],
) -> Result<Vec<Witness>, ValidationError> {
    let m = elements.len();
    // by_domain[x]: elements defined at x
    let mut by_domain: Vec<Vec<usize>> = vec![Vec::new(); ground_size];
    for (r, e) in elements.iter().enumerate() {
        for (x, _) in e.iter() {
            by_domain[x].push(r);
        }
    }
    let mut table = Vec::with_capacity(m * m);
    for p in 0..m {
        for q in 0..m {
            let Some(pq) = elements[p].compose_unchecked(&elements[q]) else {
                table.push(Witness::Undefined);
                continue;
            };
            let (x0, y0) = pq.iter().next().expect("composition is non-empty");
            let mut found: Option<usize> = None;
            for &r in &by_domain[x0] {
                if elements[r].apply(x0) == Some(y0) && elements[r].extends(&pq) {
                    if let Some(r1) = found {
                        return Err(ValidationError::UniqueExtensionViolated { p, q, r1, r2: r });
                    }
                    found = Some(r);
                }
            }
            table.push(found.map_or(Witness::NoWitness, Witness::Extends));
        }
    }
    Ok(table)
}
