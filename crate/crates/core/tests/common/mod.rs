//! Brute-force oracles shared by the integration tests. Nothing here calls into the search or
//! validation code it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use permutoid_core::{PartialPermutation, Permutoid};

pub type Graph = BTreeSet<(usize, usize)>;

pub fn graph(p: &PartialPermutation) -> Graph {
    p.iter().collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every non-empty partial permutation of `0..n`, as graphs.
pub fn all_partial_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let domain: Vec<usize> = (0..n).filter(|&x| mask & (1 << x) != 0).collect();
        let k = domain.len();
        // injective maps domain -> 0..n
        let mut images = vec![0usize; k];
        loop {
            let distinct = (0..k).all(|i| (0..i).all(|j| images[i] != images[j]));
            if distinct {
                out.push(domain.iter().copied().zip(images.iter().copied()).collect());
            }
            let mut i = 0;
            while i < k {
                images[i] += 1;
                if images[i] < n {
                    break;
                }
                images[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    out
}

fn compose_graphs(p: &Graph, q: &Graph) -> Graph {
    q.iter()
        .filter_map(|&(x, y)| p.iter().find(|&&(a, _)| a == y).map(|&(_, z)| (x, z)))
        .collect()
}

/// Independent permutoid check over raw graphs.
pub fn brute_force_is_permutoid(n: usize, graphs: &[Vec<(usize, usize)>]) -> bool {
    if n == 0 || graphs.is_empty() {
        return false;
    }
    let mut sets = Vec::new();
    for g in graphs {
        if g.is_empty() || g.iter().any(|&(x, y)| x >= n || y >= n) {
            return false;
        }
        let s: Graph = g.iter().copied().collect();
        let xs: BTreeSet<usize> = s.iter().map(|p| p.0).collect();
        let ys: BTreeSet<usize> = s.iter().map(|p| p.1).collect();
        if xs.len() != s.len() || ys.len() != s.len() {
            return false;
        }
        sets.push(s);
    }
    let identity: Graph = (0..n).map(|x| (x, x)).collect();
    if !sets.contains(&identity) {
        return false;
    }
    for i in 0..sets.len() {
        for j in 0..i {
            if sets[i] == sets[j] {
                return false;
            }
        }
    }
    for p in &sets {
        for q in &sets {
            let pq = compose_graphs(p, q);
            if pq.is_empty() {
                continue;
            }
            if sets.iter().filter(|r| pq.is_subset(r)).count() > 1 {
                return false;
            }
        }
    }
    true
}

/// All valid permutoids on `n` points with at most `max_elements` elements, identity first.
pub fn small_permutoids(n: usize, max_elements: usize) -> Vec<Permutoid> {
    let identity: Vec<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
    let others: Vec<Vec<(usize, usize)>> = all_partial_graphs(n).into_iter().filter(|g| *g != identity).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        start: usize,
        others: &[Vec<(usize, usize)>],
        left: usize,
        chosen: &mut Vec<usize>,
        identity: &[(usize, usize)],
        n: usize,
        out: &mut Vec<Permutoid>,
    ) {
        let mut graphs = vec![identity.to_vec()];
        graphs.extend(chosen.iter().map(|&i| others[i].clone()));
        if let Ok(p) = permutoid_core::validate_permutoid(n, &graphs) {
            out.push(p);
        }
        if left == 0 {
            return;
        }
        for i in start..others.len() {
            chosen.push(i);
            go(i + 1, others, left - 1, chosen, identity, n, out);
            chosen.pop();
        }
    }
    go(0, &others, max_elements - 1, &mut chosen, &identity, n, &mut out);
    out
}

/// Witness triples recomputed from graphs alone.
pub fn brute_force_triples(p: &Permutoid) -> Vec<(usize, usize, usize)> {
    let sets: Vec<Graph> = p.elements().iter().map(graph).collect();
    let mut out = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            let ab = compose_graphs(a, b);
            if ab.is_empty() {
                continue;
            }
            for (k, c) in sets.iter().enumerate() {
                if ab.is_subset(c) {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// Smallest `|Y| ≤ max_ground` admitting a development, by trying every assignment of
/// permutations to the non-identity elements.
pub fn brute_force_development_size(p: &Permutoid, max_ground: usize) -> Option<usize> {
    let triples = brute_force_triples(p);
    let id = p.identity_index();
    for size in p.ground_size()..=max_ground {
        let perms = all_perms(size);
        let m = p.len();
        let candidates: Vec<Vec<usize>> = (0..m)
            .map(|e| {
                if e == id {
                    vec![0] // the identity permutation is first in lexicographic order
                } else {
                    (0..perms.len())
                        .filter(|&k| p.element(e).iter().all(|(x, y)| perms[k][x] == y))
                        .collect()
                }
            })
            .collect();
        let mut choice = vec![0usize; m];
        'outer: loop {
            let f = |e: usize| &perms[candidates[e][choice[e]]];
            if candidates.iter().all(|c| !c.is_empty())
                && triples.iter().all(|&(a, b, c)| (0..size).all(|y| f(a)[f(b)[y]] == f(c)[y]))
            {
                return Some(size);
            }
            if candidates.iter().any(|c| c.is_empty()) {
                break;
            }
            let mut i = 0;
            loop {
                if i == m {
                    break 'outer;
                }
                choice[i] += 1;
                if choice[i] < candidates[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
    None
}

/// Isomorphism by trying every relabelling of the ground set.
pub fn brute_force_isomorphic(p: &Permutoid, q: &Permutoid) -> bool {
    if p.ground_size() != q.ground_size() || p.len() != q.len() {
        return false;
    }
    let target: BTreeSet<Graph> = q.elements().iter().map(graph).collect();
    all_perms(p.ground_size()).iter().any(|sigma| {
        let relabelled: BTreeSet<Graph> = p
            .elements()
            .iter()
            .map(|e| e.iter().map(|(x, y)| (sigma[x], sigma[y])).collect())
            .collect();
        relabelled == target
    })
}

/// Every non-empty restriction of `m`.
pub fn restrictions(m: &PartialPermutation) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = m.iter().collect();
    (1u32..(1 << pairs.len()))
        .map(|mask| pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect())
        .collect()
}

/// Rigidity three ways: maximal elements never agree; every element of `H` has exactly one
/// maximal extension; agreeing elements glue to an element of `H`.
pub fn rigidity_three_ways(n: usize, gens: &[PartialPermutation]) -> (bool, bool, bool) {
    let h = permutoid_core::pseudogroup::generate_pseudogroup(n, gens).unwrap();
    let by_rule = h.is_rigid();
    let members: BTreeSet<Graph> = h.maximal_elements().iter().flat_map(restrictions).collect();
    let unique = members
        .iter()
        .all(|f| h.maximal_elements().iter().filter(|m| f.is_subset(&graph(m))).count() == 1);
    let glue = members.iter().all(|f| {
        members.iter().all(|g| {
            if !f.iter().any(|pair| g.contains(pair)) {
                return true;
            }
            let union: Graph = f.union(g).copied().collect();
            let xs: BTreeSet<usize> = union.iter().map(|p| p.0).collect();
            let ys: BTreeSet<usize> = union.iter().map(|p| p.1).collect();
            xs.len() == union.len() && ys.len() == union.len() && members.contains(&union)
        })
    });
    (by_rule, unique, glue)
}
