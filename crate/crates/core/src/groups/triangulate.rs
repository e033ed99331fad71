//! Triangular presentations over a ball of group elements.

use super::ball::CayleyBall;
use super::cameron::GroupBackend;
use super::presentation::Presentation;
use super::realized::MarkedGroup;
use super::word::{Letter, Word};
use super::GroupError;

/// The triangulated presentation and how the old generators sit inside it.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub presentation: Presentation,
    /// Every length-three string with trivial product, reduced or not, in enumeration order.
    pub raw_relators: Vec<Word>,
    /// Geodesic word (over the original generators) of each new generator.
    pub symbol_words: Vec<Word>,
    /// For each original generator, the index of the new generator naming the same element.
    pub generator_symbols: Vec<usize>,
}

/// Generators: one symbol per element of the ball `B_m`. Relators: every string of three letters
/// over those symbols and their inverses whose product is trivial. All such strings are kept in
/// `raw_relators`; the presentation holds their free reductions, which present the same group.
///
/// Requires `2m` greater than the longest relator and a finite word-problem backend.
pub fn triangulate(p: &Presentation, m: usize, backend: &GroupBackend) -> Result<Triangulation, GroupError> {
    if 2 * m <= p.max_relator_len() || m == 0 {
        return Err(GroupError::PreconditionRadius { radius: m, max_relator: p.max_relator_len() });
    }
    let g = backend.as_finite().ok_or(GroupError::FiniteBackendRequired)?;
    let ball = CayleyBall::build(g, m);
    let k = ball.len();
    let names: Vec<String> = (0..k).map(|i| format!("b{i}")).collect();
    // value of each letter over the new symbols, as a group element
    let letters: Vec<Letter> = Letter::all(k).collect();
    let value = |l: Letter| {
        let e = ball.elements()[l.generator];
        if l.inverse {
            g.inverse(e)
        } else {
            e
        }
    };
    let mut raw_relators: Vec<Word> = Vec::new();
    let mut relators: Vec<Word> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &x in &letters {
        for &y in &letters {
            let xy = g.mul(value(x), value(y));
            for &z in &letters {
                if g.mul(xy, value(z)) == 0 {
                    let raw = Word::new(vec![x, y, z]);
                    let w = super::free_reduce(&raw);
                    raw_relators.push(raw);
                    if !w.is_empty() && seen.insert(w.clone()) {
                        relators.push(w);
                    }
                }
            }
        }
    }
    let generator_symbols = (0..p.rank())
        .map(|a| ball.index_of(&g.letter(Letter::pos(a))).expect("generators lie in B_1"))
        .collect();
    Ok(Triangulation {
        presentation: Presentation::new(names, relators),
        raw_relators,
        symbol_words: ball.words().to_vec(),
        generator_symbols,
    })
}
