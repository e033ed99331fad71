//! Todd-Coxeter coset enumeration over the trivial subgroup (HLT strategy with lookahead).
//!
//! Cosets are defined in FIFO order and the final table is standardized by breadth-first
//! renumbering, so the output depends only on the presentation.

use std::collections::VecDeque;

use thiserror::Error;

use super::presentation::Presentation;
use super::realized::{BackendTag, RealizedGroup};
use super::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CosetError {
    /// The enumeration did not close within the coset cap. Not a proof of infiniteness.
    #[error("coset enumeration inconclusive: more than {max_cosets} live cosets needed")]
    OutOfBounds { max_cosets: usize },
    #[error("max_cosets must be at least 1")]
    ZeroCap,
}

const NONE: usize = usize::MAX;

/// Sentinel raised when a definition would exceed the live-coset cap.
struct CapHit;

struct CosetTable {
    cols: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    live: usize,
    max_live: usize,
    queue: VecDeque<usize>,
    relators: Vec<Vec<usize>>,
}

impl CosetTable {
    fn new(rank: usize, relators: &[Word], max_live: usize) -> Self {
        let cols = 2 * rank;
        CosetTable {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            live: 1,
            max_live,
            queue: VecDeque::new(),
            relators: relators
                .iter()
                .map(|r| r.letters().iter().map(|l| l.column()).collect())
                .collect(),
        }
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.cols + x] = d;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn count(&self) -> usize {
        self.parent.len()
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), CapHit> {
        if self.live >= self.max_live {
            return Err(CapHit);
        }
        let d = self.count();
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop] = keep;
        self.live -= 1;
        self.queue.push_back(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                if self.get(f, x ^ 1) == e {
                    self.set(f, x ^ 1, NONE);
                }
                let mu = self.rep(e);
                let nu = self.rep(f);
                let mu_x = self.get(mu, x);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, x ^ 1);
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Scans relator `r` at coset `c`, defining new cosets when `fill` is set.
    fn scan(&mut self, c: usize, r: usize, fill: bool) -> Result<(), CapHit> {
        let len = self.relators[r].len();
        if len == 0 {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = len; // exclusive end of the unscanned part
        loop {
            while i < j {
                let next = self.get(f, self.relators[r][i]);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let next = self.get(b, self.relators[r][j - 1] ^ 1);
                if next == NONE {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let x = self.relators[r][i];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            let x = self.relators[r][i];
            self.define(f, x)?;
        }
    }

    fn lookahead(&mut self) {
        let mut c = 0;
        while c < self.count() {
            if self.is_live(c) {
                for r in 0..self.relators.len() {
                    if !self.is_live(c) {
                        break;
                    }
                    let _ = self.scan(c, r, false);
                }
            }
            c += 1;
        }
    }

    /// Processes coset `c` fully: scan all relators, then fill its row.
    fn process(&mut self, c: usize) -> Result<(), CapHit> {
        for r in 0..self.relators.len() {
            if !self.is_live(c) {
                return Ok(());
            }
            self.scan(c, r, true)?;
        }
        for x in 0..self.cols {
            if !self.is_live(c) {
                return Ok(());
            }
            if self.get(c, x) == NONE {
                self.define(c, x)?;
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Result<(), CosetError> {
        let mut c = 0;
        while c < self.count() {
            if self.is_live(c) && self.process(c).is_err() {
                self.lookahead();
                if self.live >= self.max_live || self.process(c).is_err() {
                    return Err(CosetError::OutOfBounds { max_cosets: self.max_live });
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Live cosets renumbered breadth-first from coset 0, columns scanned in order.
    fn standardized(&mut self) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
        let mut number = vec![NONE; self.count()];
        let mut order = vec![0usize];
        let mut tree = vec![(NONE, NONE)];
        number[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for x in 0..self.cols {
                let d = self.get(c, x);
                let d = self.rep(d);
                if number[d] == NONE {
                    number[d] = order.len();
                    order.push(d);
                    tree.push((k, x));
                }
            }
            k += 1;
        }
        let mut rows = Vec::with_capacity(order.len());
        for &c in &order {
            let row = (0..self.cols).map(|x| {
                let d = self.get(c, x);
                number[self.rep(d)]
            });
            rows.push(row.collect());
        }
        (rows, tree)
    }
}

/// Enumerates the cosets of the trivial subgroup and returns the realized group.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<RealizedGroup, CosetError> {
    if max_cosets == 0 {
        return Err(CosetError::ZeroCap);
    }
    let mut ct = CosetTable::new(p.rank(), p.relators(), max_cosets);
    ct.run()?;
    let (action, tree) = ct.standardized();
    let n = action.len();
    debug_assert!(action.iter().all(|row| row.iter().all(|&d| d < n)));
    debug_assert!(p.relators().iter().all(|r| (0..n).all(|c| {
        r.letters().iter().fold(c, |acc, l| action[acc][l.column()]) == c
    })));

    // table[i][j] = coset i read along the breadth-first word of j
    let mut table = vec![vec![0usize; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        row[0] = i;
        for j in 1..n {
            let (parent, col) = tree[j];
            row[j] = action[row[parent]][col];
        }
    }
    let generator_images = (0..p.rank()).map(|g| action[0][Letter::pos(g).column()]).collect();
    let group = RealizedGroup::from_table(
        table,
        p.generators().to_vec(),
        generator_images,
        BackendTag::FiniteEnumerated,
    )
    .expect("coset enumeration yields a group table");
    Ok(group)
}
