//! Words over a generating set and its formal inverses.

use std::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// Column index in a coset table: `2g` for `g`, `2g + 1` for `g⁻¹`.
    pub fn column(self) -> usize {
        2 * self.generator + self.inverse as usize
    }

    pub fn from_column(col: usize) -> Self {
        Letter { generator: col / 2, inverse: col % 2 == 1 }
    }

    /// All letters over `rank` generators in column order: `a, a⁻¹, b, b⁻¹, …`.
    pub fn all(rank: usize) -> impl Iterator<Item = Letter> {
        (0..2 * rank).map(Letter::from_column)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inv())
    }

    /// Renders with generator names, collapsing runs into powers: `a^2 b^-1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = &self.names[l.generator];
            let exp = if l.inverse { -(run as i64) } else { run as i64 };
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}
