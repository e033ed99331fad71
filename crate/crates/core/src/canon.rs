//! Canonical keys for permutoids up to isomorphism (relabelling of the ground set).

use thiserror::Error;

use crate::permutoid::Permutoid;

pub const DEFAULT_CANON_CAP: usize = 10;

const UNDEFINED: u8 = u8::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("ground set of size {size} exceeds the canonicalization cap {cap}")]
pub struct GroundSetTooLarge {
    pub size: usize,
    pub cap: usize,
}

/// Byte string equal for two permutoids iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn canonical_form(p: &Permutoid) -> Result<CanonicalKey, GroundSetTooLarge> {
    canonical_form_with_cap(p, DEFAULT_CANON_CAP)
}

/// Lexicographic minimum of a fixed serialization over relabellings of the ground set.
///
/// Only relabellings that sort points by an isomorphism-invariant colouring are tried; since
/// the colouring is preserved by isomorphisms, the minimum is still a complete invariant.
pub fn canonical_form_with_cap(p: &Permutoid, cap: usize) -> Result<CanonicalKey, GroundSetTooLarge> {
    let n = p.ground_size();
    let cap = cap.min(UNDEFINED as usize - 1);
    if n > cap {
        return Err(GroundSetTooLarge { size: n, cap });
    }
    let colour = refined_colours(p);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (colour[x], x));

    // blocks of equal colour, as ranges into `order`
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || colour[order[i]] != colour[order[start]] {
            blocks.push(start..i);
            start = i;
        }
    }

    // sigma[x] = new label of x; labels within a block are permuted
    let mut labels: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u8>> = None;
    let mut sigma = vec![0; n];
    loop {
        for (pos, &x) in order.iter().enumerate() {
            sigma[x] = labels[pos];
        }
        let key = serialize(p, &sigma);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !advance(&mut labels, &blocks) {
            break;
        }
    }
    Ok(CanonicalKey(best.expect("at least one relabelling")))
}

/// Colour refinement: start from the point signature, then repeatedly split classes by the
/// multiset of `(colour of e(x), colour of e⁻¹(x))` over all elements `e`. Colours are ranks of
/// sorted distinct keys, so they are invariant under relabelling.
fn refined_colours(p: &Permutoid) -> Vec<usize> {
    let n = p.ground_size();
    let inverses: Vec<_> = p.elements().iter().map(|e| e.inverse()).collect();
    let mut colour = rank((0..n).map(|x| point_signature(p, x)).collect());
    let mut classes = distinct(&colour);
    loop {
        let keys: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
            .map(|x| {
                let mut around: Vec<(usize, usize)> = p
                    .elements()
                    .iter()
                    .zip(&inverses)
                    .map(|(e, inv)| {
                        let c = |y: Option<usize>| y.map_or(usize::MAX, |y| colour[y]);
                        (c(e.apply(x)), c(inv.apply(x)))
                    })
                    .collect();
                around.sort_unstable();
                (colour[x], around)
            })
            .collect();
        let next = rank(keys);
        let next_classes = distinct(&next);
        colour = next;
        if next_classes == classes {
            return colour;
        }
        classes = next_classes;
    }
}

fn rank<K: Ord + Clone>(keys: Vec<K>) -> Vec<usize> {
    let mut sorted = keys.clone();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("key present")).collect()
}

fn distinct(colour: &[usize]) -> usize {
    colour.iter().max().map_or(0, |m| m + 1)
}

fn point_signature(p: &Permutoid, x: usize) -> [usize; 3] {
    let mut in_dom = 0;
    let mut in_ran = 0;
    let mut fixed = 0;
    for e in p.elements() {
        match e.apply(x) {
            Some(y) if y == x => {
                in_dom += 1;
                fixed += 1;
            }
            Some(_) => in_dom += 1,
            None => {}
        }
    }
    for e in p.elements() {
        if e.iter().any(|(_, y)| y == x) {
            in_ran += 1;
        }
    }
    [in_dom, in_ran, fixed]
}

fn serialize(p: &Permutoid, sigma: &[usize]) -> Vec<u8> {
    let n = p.ground_size();
    let mut encoded: Vec<Vec<u8>> = p
        .elements()
        .iter()
        .map(|e| {
            let mut row = vec![UNDEFINED; n];
            for (x, y) in e.iter() {
                row[sigma[x]] = sigma[y] as u8;
            }
            row
        })
        .collect();
    encoded.sort_unstable();
    let mut out = Vec::with_capacity(2 + n * encoded.len());
    out.push(n as u8);
    out.push(encoded.len().min(u8::MAX as usize) as u8);
    for row in encoded {
        out.extend(row);
    }
    out
}

/// Next permutation of every block in odometer order; false once all combinations are exhausted.
fn advance(labels: &mut [usize], blocks: &[std::ops::Range<usize>]) -> bool {
    for block in blocks {
        if next_permutation(&mut labels[block.clone()]) {
            return true;
        }
        // wrapped around: next_permutation left the block sorted ascending again
    }
    false
}

fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
