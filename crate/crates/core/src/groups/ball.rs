//! Balls in the word metric of a marked group.

use std::collections::HashMap;

use super::realized::MarkedGroup;
use super::word::{Letter, Word};

/// The elements of a marked group at word length at most `radius`, in breadth-first order.
///
/// Breadth-first order means depths are non-decreasing, so the ball of any smaller radius is a
/// prefix of this one.
#[derive(Debug, Clone)]
pub struct CayleyBall<E> {
    radius: usize,
    elements: Vec<E>,
    words: Vec<Word>,
    index: HashMap<E, usize>,
}

impl<E: Clone + Eq + std::hash::Hash> CayleyBall<E> {
    /// Breadth-first closure of `{1}` under right multiplication by `a, a⁻¹, b, b⁻¹, …`.
    pub fn build<G: MarkedGroup<Element = E>>(g: &G, radius: usize) -> Self {
        let letters: Vec<(Letter, E)> = Letter::all(g.rank()).map(|l| (l, g.letter(l))).collect();
        let mut ball = CayleyBall {
            radius,
            elements: vec![g.identity()],
            words: vec![Word::empty()],
            index: HashMap::from([(g.identity(), 0)]),
        };
        let mut k = 0;
        while k < ball.elements.len() {
            if ball.words[k].len() == radius {
                // all later elements are at depth `radius` too
                break;
            }
            for (l, e) in &letters {
                let y = g.multiply(&ball.elements[k], e);
                if !ball.index.contains_key(&y) {
                    let mut w = ball.words[k].clone();
                    w.push(*l);
                    ball.index.insert(y.clone(), ball.elements.len());
                    ball.elements.push(y);
                    ball.words.push(w);
                }
            }
            k += 1;
        }
        ball
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    /// Geodesic representative of the element at `i`.
    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn depth(&self, i: usize) -> usize {
        self.words[i].len()
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Number of elements at depth at most `r` (a prefix length).
    pub fn prefix_len(&self, r: usize) -> usize {
        self.words.partition_point(|w| w.len() <= r)
    }

    /// The product `g_i g_j` when it lies in this ball.
    pub fn partial_product<G: MarkedGroup<Element = E>>(&self, g: &G, i: usize, j: usize) -> Option<usize> {
        self.index_of(&g.multiply(&self.elements[i], &self.elements[j]))
    }
}

/// Free-standing form of [`CayleyBall::build`].
pub fn cayley_ball<G: MarkedGroup>(g: &G, radius: usize) -> CayleyBall<G::Element> {
    CayleyBall::build(g, radius)
}
