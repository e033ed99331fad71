//! Partial permutations and full permutations of a finite ground set `{0, …, n-1}`.

use std::fmt;

use thiserror::Error;

/// Reasons a list of pairs fails to describe a partial permutation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph is empty")]
    Empty,
    #[error("point {point} is outside the ground set of size {ground_size}")]
    OutOfRange { point: usize, ground_size: usize },
    #[error("point {0} has two images")]
    NotFunctional(usize),
    #[error("point {0} is the image of two points")]
    NotInjective(usize),
}

/// Raised when two maps live on different ground sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("ground set mismatch: {left} vs {right}")]
pub struct GroundSetMismatch {
    pub left: usize,
    pub right: usize,
}

/// A bijection between two non-empty subsets of `{0, …, ground_size-1}`.
///
/// Stored as a dense image table; `images[x]` is `Some(y)` exactly when `x` lies in the domain.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialPermutation {
    images: Vec<Option<usize>>,
}

impl PartialPermutation {
    /// Builds a partial permutation from its graph, checking all invariants.
    pub fn from_pairs(ground_size: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        if pairs.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut images = vec![None; ground_size];
        let mut hit = vec![false; ground_size];
        for &(x, y) in pairs {
            for p in [x, y] {
                if p >= ground_size {
                    return Err(GraphError::OutOfRange { point: p, ground_size });
                }
            }
            match images[x] {
                Some(old) if old != y => return Err(GraphError::NotFunctional(x)),
                Some(_) => continue,
                None => {}
            }
            if hit[y] {
                return Err(GraphError::NotInjective(y));
            }
            hit[y] = true;
            images[x] = Some(y);
        }
        Ok(PartialPermutation { images })
    }

    /// Builds from a dense image table. Returns `None` if the table is empty or not injective.
    pub fn from_images(images: Vec<Option<usize>>) -> Option<Self> {
        let n = images.len();
        let mut hit = vec![false; n];
        let mut any = false;
        for y in images.iter().flatten() {
            if *y >= n || hit[*y] {
                return None;
            }
            hit[*y] = true;
            any = true;
        }
        any.then_some(PartialPermutation { images })
    }

    pub fn identity(ground_size: usize) -> Self {
        PartialPermutation { images: (0..ground_size).map(Some).collect() }
    }

    pub fn ground_size(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.images.get(x).copied().flatten()
    }

    pub fn images(&self) -> &[Option<usize>] {
        &self.images
    }

    /// The graph as pairs sorted by first coordinate.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.images.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y)))
    }

    pub fn domain(&self) -> Vec<usize> {
        self.iter().map(|(x, _)| x).collect()
    }

    pub fn range(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.iter().map(|(_, y)| y).collect();
        r.sort_unstable();
        r
    }

    pub fn len(&self) -> usize {
        self.images.iter().filter(|y| y.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Defined on every point of the ground set.
    pub fn is_total(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, y)| *y == Some(x))
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![None; self.images.len()];
        for (x, y) in self.iter() {
            images[y] = Some(x);
        }
        PartialPermutation { images }
    }

    /// True when `self` extends `other`: every pair of `other` is a pair of `self`.
    pub fn extends(&self, other: &PartialPermutation) -> bool {
        self.images.len() == other.images.len()
            && other.iter().all(|(x, y)| self.images[x] == Some(y))
    }

    /// True when some point is sent to the same image by both maps.
    pub fn agrees_somewhere(&self, other: &PartialPermutation) -> bool {
        self.images.iter().zip(&other.images).any(|(a, b)| a.is_some() && a == b)
    }

    /// The composition `self · other`, i.e. `x ↦ self(other(x))`.
    ///
    /// `Ok(None)` is the undefined case where `ran(other) ∩ dom(self)` is empty.
    pub fn compose(&self, other: &PartialPermutation) -> Result<Option<Self>, GroundSetMismatch> {
        if self.images.len() != other.images.len() {
            return Err(GroundSetMismatch { left: self.images.len(), right: other.images.len() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &PartialPermutation) -> Option<Self> {
        let images: Vec<Option<usize>> =
            other.images.iter().map(|y| y.and_then(|y| self.images[y])).collect();
        images.iter().any(Option::is_some).then_some(PartialPermutation { images })
    }

    /// Conjugates by a relabelling `sigma` of the ground set: pair `(x, y)` becomes `(σx, σy)`.
    pub fn relabel(&self, sigma: &[usize]) -> Self {
        let mut images = vec![None; self.images.len()];
        for (x, y) in self.iter() {
            images[sigma[x]] = Some(sigma[y]);
        }
        PartialPermutation { images }
    }

    /// Restriction to the points of `subset` that lie in the domain.
    pub fn restrict(&self, subset: &[usize]) -> Option<Self> {
        let mut images = vec![None; self.images.len()];
        for &x in subset {
            images[x] = self.images[x];
        }
        images.iter().any(Option::is_some).then_some(PartialPermutation { images })
    }
}

impl fmt::Debug for PartialPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, y)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}↦{y}")?;
        }
        write!(f, "}}/{}", self.images.len())
    }
}

/// A permutation of `{0, …, n-1}` in image form: `self.0[x]` is the image of `x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Checks that `images` is a bijection of `{0, …, len-1}`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut hit = vec![false; images.len()];
        for &y in &images {
            if y >= images.len() || hit[y] {
                return None;
            }
            hit[y] = true;
        }
        Some(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn into_images(self) -> Vec<usize> {
        self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&y| self.0[y]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn first_fixed_point(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(x, y)| x == *y).map(|(x, _)| x)
    }

    /// True when the permutation agrees with `p` on the domain of `p`.
    pub fn extends(&self, p: &PartialPermutation) -> bool {
        p.ground_size() <= self.0.len() && p.iter().all(|(x, y)| self.0[x] == y)
    }

    pub fn to_partial(&self) -> PartialPermutation {
        PartialPermutation { images: self.0.iter().map(|&y| Some(y)).collect() }
    }
}
