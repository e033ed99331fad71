//! Marked groups with a solved word problem: finite multiplication tables and free groups.

use std::fmt::Debug;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::word::{free_reduce, Letter, Word};

/// A group with a distinguished finite generating set and a way to multiply elements.
pub trait MarkedGroup {
    type Element: Clone + Eq + Hash + Debug;

    fn generator_names(&self) -> &[String];
    fn identity(&self) -> Self::Element;
    fn letter(&self, l: Letter) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn rank(&self) -> usize {
        self.generator_names().len()
    }

    fn evaluate(&self, w: &Word) -> Self::Element {
        w.letters().iter().fold(self.identity(), |acc, &l| self.multiply(&acc, &self.letter(l)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BackendTag {
    FiniteEnumerated,
    FreeGroupBall,
    ExplicitTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table must be a non-empty square")]
    NotSquare,
    #[error("entry ({0}, {1}) is out of range")]
    EntryOutOfRange(usize, usize),
    #[error("element 0 is not a two-sided identity")]
    BadIdentity,
    #[error("row or column {0} repeats an element")]
    NotLatin(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("generator image {0} is out of range")]
    GeneratorOutOfRange(usize),
    #[error("generators reach only {reached} of {order} elements")]
    NotGenerating { reached: usize, order: usize },
}

/// A finite group given by its full multiplication table; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    generator_names: Vec<String>,
    generator_images: Vec<usize>,
    backend: BackendTag,
}

const FULL_ASSOCIATIVITY_LIMIT: usize = 64;
const SPOT_CHECKS: usize = 20_000;

impl RealizedGroup {
    /// Validates a multiplication table. `table[i][j]` is the product `g_i g_j`.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        generator_names: Vec<String>,
        generator_images: Vec<usize>,
        backend: BackendTag,
    ) -> Result<Self, TableError> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(TableError::NotSquare);
        }
        for (i, row) in table.iter().enumerate() {
            if let Some(j) = row.iter().position(|&v| v >= n) {
                return Err(TableError::EntryOutOfRange(i, j));
            }
        }
        if (0..n).any(|i| table[0][i] != i || table[i][0] != i) {
            return Err(TableError::BadIdentity);
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row_seen[table[i][j]], true)
                    || std::mem::replace(&mut col_seen[table[j][i]], true)
                {
                    return Err(TableError::NotLatin(i));
                }
            }
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(TableError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SPOT_CHECKS {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(TableError::NotAssociative(a, b, c));
                }
            }
        }
        if let Some(&g) = generator_images.iter().find(|&&g| g >= n) {
            return Err(TableError::GeneratorOutOfRange(g));
        }
        // Latin rows guarantee exactly one right inverse, which is also a left inverse in a group.
        let inverses: Vec<usize> =
            (0..n).map(|i| table[i].iter().position(|&v| v == 0).expect("latin row")).collect();
        let group = RealizedGroup { table, inverses, generator_names, generator_images, backend };
        let reached = group.closure_size();
        if reached != n {
            return Err(TableError::NotGenerating { reached, order: n });
        }
        Ok(group)
    }

    fn closure_size(&self) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in &self.generator_images {
                for y in [self.table[x][g], self.table[x][self.inverses[g]]] {
                    if !seen[y] {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.generator_images
    }

    pub fn backend(&self) -> BackendTag {
        self.backend
    }

    /// Order of each element, indexed by element.
    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order())
            .map(|g| {
                let mut x = g;
                let mut k = 1;
                while x != 0 {
                    x = self.table[x][g];
                    k += 1;
                }
                k
            })
            .collect()
    }
}

impl MarkedGroup for RealizedGroup {
    type Element = usize;

    fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    fn identity(&self) -> usize {
        0
    }

    fn letter(&self, l: Letter) -> usize {
        let g = self.generator_images[l.generator];
        if l.inverse {
            self.inverses[g]
        } else {
            g
        }
    }

    fn multiply(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }
}

/// The free group on named generators; elements are freely reduced words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroup {
    generator_names: Vec<String>,
}

impl FreeGroup {
    pub fn new(generator_names: Vec<String>) -> Self {
        FreeGroup { generator_names }
    }
}

impl MarkedGroup for FreeGroup {
    type Element = Word;

    fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn letter(&self, l: Letter) -> Word {
        Word::new(vec![l])
    }

    fn multiply(&self, a: &Word, b: &Word) -> Word {
        free_reduce(&a.concat(b))
    }
}
