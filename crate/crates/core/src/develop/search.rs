//! Backtracking search for complete finite extensions.
//!
//! Variables are the images `f_p(y)` for every non-identity element `p` and every point `y` of
//! `Y = {0, …, N-1}`, with `X` embedded as the prefix `{0, …, |X|-1}`. The identity is fixed
//! to `1_Y`. Every witness triple `(p, q, r)` imposes `f_p ∘ f_q = f_r`; whenever two of
//! `f_q(y)`, `f_p(f_q(y))`, `f_r(y)` are known the third is forced. Points outside `X` that
//! no assignment mentions yet are interchangeable, so only the first of them is ever tried as
//! a fresh value.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{Development, DevelopError};
use crate::partial::Perm;
use crate::permutoid::Permutoid;

const NONE: usize = usize::MAX;

/// Input to [`search_development`].
#[derive(Debug, Clone)]
pub struct DevelopmentProblem {
    pub source: Permutoid,
    /// Largest `|Y|` tried.
    pub max_ground: usize,
    /// Maximum number of branching decisions over the whole run.
    pub node_budget: u64,
    /// Run strictly sequentially so that the reported development is reproducible.
    pub deterministic: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Sizes of `Y` whose search space was entered, in order.
    pub sizes_tried: Vec<usize>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchVerdict {
    Found { development: Development, stats: SearchStats },
    /// Every size up to `max_ground` was searched exhaustively without success. This says
    /// nothing about larger sizes.
    ExhaustedUpTo { max_ground: usize, stats: SearchStats },
    /// The node budget ran out; `completed_up_to` is the largest fully searched size, if any.
    BudgetExceeded { completed_up_to: Option<usize>, stats: SearchStats },
}

impl SearchVerdict {
    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchVerdict::Found { stats, .. }
            | SearchVerdict::ExhaustedUpTo { stats, .. }
            | SearchVerdict::BudgetExceeded { stats, .. } => stats,
        }
    }

    pub fn development(&self) -> Option<&Development> {
        match self {
            SearchVerdict::Found { development, .. } => Some(development),
            _ => None,
        }
    }
}

/// Iterative deepening on `|Y|` from `|X|` to `max_ground`; the first development found in
/// the search order is returned.
pub fn search_development(problem: &DevelopmentProblem) -> Result<SearchVerdict, DevelopError> {
    search_with_filter(problem, |_| Ok::<bool, std::convert::Infallible>(true))
        .map(|r| r.unwrap_or_else(|e| match e {}))
}

/// Like [`search_development`], but a complete assignment is accepted only if `accept` returns
/// `Ok(true)`. An `Err` from `accept` aborts the whole search.
pub fn search_with_filter<F, E>(
    problem: &DevelopmentProblem,
    accept: F,
) -> Result<Result<SearchVerdict, E>, DevelopError>
where
    F: Fn(&Development) -> Result<bool, E> + Sync,
    E: Send,
{
    let source = &problem.source;
    if problem.max_ground < source.ground_size() {
        return Err(DevelopError::MaxGroundTooSmall {
            max_ground: problem.max_ground,
            ground_size: source.ground_size(),
        });
    }
    let ctx = Ctx {
        nodes: AtomicU64::new(0),
        budget: problem.node_budget,
        stop: AtomicBool::new(false),
    };
    let mut stats = SearchStats::default();
    let mut completed = None;
    for size in source.ground_size()..=problem.max_ground {
        stats.sizes_tried.push(size);
        let outcome = match State::new(source, size) {
            None => Outcome::Exhausted,
            Some(state) if problem.deterministic => {
                let mut state = state;
                state.solve(&ctx, &accept)
            }
            Some(state) => state.solve_parallel(&ctx, &accept),
        };
        stats.nodes = ctx.nodes.load(Ordering::Relaxed);
        match outcome {
            Outcome::Found(development) => return Ok(Ok(SearchVerdict::Found { development, stats })),
            Outcome::Exhausted => completed = Some(size),
            Outcome::Budget => return Ok(Ok(SearchVerdict::BudgetExceeded { completed_up_to: completed, stats })),
            Outcome::Abort(e) => return Ok(Err(e)),
            Outcome::Stopped => unreachable!("stop is only raised after a result"),
        }
    }
    Ok(Ok(SearchVerdict::ExhaustedUpTo { max_ground: problem.max_ground, stats }))
}

struct Ctx {
    nodes: AtomicU64,
    budget: u64,
    stop: AtomicBool,
}

enum Outcome<E> {
    Found(Development),
    Exhausted,
    Budget,
    Abort(E),
    Stopped,
}

#[derive(Clone, Copy)]
enum Role {
    P,
    Q,
    R,
}

#[derive(Clone)]
struct State<'a> {
    source: &'a Permutoid,
    n_src: usize,
    size: usize,
    m: usize,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    assigned: Vec<usize>,
    /// How many non-identity assignments mention each point.
    touch: Vec<u32>,
    trail: Vec<(usize, usize)>,
    queue: Vec<(usize, usize)>,
    triples: std::sync::Arc<Vec<(usize, usize, usize)>>,
    roles: std::sync::Arc<Vec<Vec<(usize, Role)>>>,
}

impl<'a> State<'a> {
    /// Initial state with the source graphs and the identity imposed; `None` on conflict.
    fn new(source: &'a Permutoid, size: usize) -> Option<Self> {
        let m = source.len();
        let id = source.identity_index();
        let triples: Vec<(usize, usize, usize)> =
            source.witness_triples().filter(|&(p, q, _)| p != id && q != id).collect();
        let mut roles = vec![Vec::new(); m];
        for (t, &(p, q, r)) in triples.iter().enumerate() {
            roles[p].push((t, Role::P));
            roles[q].push((t, Role::Q));
            roles[r].push((t, Role::R));
        }
        let mut s = State {
            source,
            n_src: source.ground_size(),
            size,
            m,
            fwd: vec![NONE; m * size],
            bwd: vec![NONE; m * size],
            assigned: vec![0; m],
            touch: vec![0; size],
            trail: Vec::new(),
            queue: Vec::new(),
            triples: std::sync::Arc::new(triples),
            roles: std::sync::Arc::new(roles),
        };
        for y in 0..size {
            s.assign(id, y, y).then_some(())?;
        }
        for (e, elem) in source.elements().iter().enumerate() {
            for (x, y) in elem.iter() {
                s.assign(e, x, y).then_some(())?;
            }
        }
        s.propagate().then_some(s)
    }

    #[inline]
    fn f(&self, e: usize, y: usize) -> usize {
        self.fwd[e * self.size + y]
    }

    #[inline]
    fn finv(&self, e: usize, v: usize) -> usize {
        self.bwd[e * self.size + v]
    }

    /// Records `f_e(y) = v`; false on conflict. Propagation is deferred to [`State::propagate`].
    fn assign(&mut self, e: usize, y: usize, v: usize) -> bool {
        let cur = self.f(e, y);
        if cur == v {
            return true;
        }
        if cur != NONE || self.finv(e, v) != NONE {
            return false;
        }
        self.fwd[e * self.size + y] = v;
        self.bwd[e * self.size + v] = y;
        self.assigned[e] += 1;
        if e != self.source.identity_index() {
            self.touch[y] += 1;
            self.touch[v] += 1;
        }
        self.trail.push((e, y));
        self.queue.push((e, y));
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (e, y) = self.trail.pop().expect("trail above mark");
            let v = self.f(e, y);
            self.fwd[e * self.size + y] = NONE;
            self.bwd[e * self.size + v] = NONE;
            self.assigned[e] -= 1;
            if e != self.source.identity_index() {
                self.touch[y] -= 1;
                self.touch[v] -= 1;
            }
        }
        self.queue.clear();
    }

    fn propagate(&mut self) -> bool {
        while let Some((e, y)) = self.queue.pop() {
            let v = self.f(e, y);
            let roles = std::sync::Arc::clone(&self.roles);
            for &(t, role) in &roles[e] {
                let (p, q, r) = self.triples[t];
                let ok = match role {
                    // f_q(y) = v: f_r(y) = f_p(v)
                    Role::Q => {
                        let w = self.f(p, v);
                        let u = self.f(r, y);
                        (w == NONE || self.assign(r, y, w)) && (u == NONE || self.assign(p, v, u))
                    }
                    // f_p(y) = v, with y = f_q(z): f_r(z) = v
                    Role::P => {
                        let z = self.finv(q, y);
                        let z2 = self.finv(r, v);
                        (z == NONE || self.assign(r, z, v)) && (z2 == NONE || self.assign(q, z2, y))
                    }
                    // f_r(y) = v: f_p(f_q(y)) = v
                    Role::R => {
                        let z = self.f(q, y);
                        let z2 = self.finv(p, v);
                        (z == NONE || self.assign(p, z, v)) && (z2 == NONE || self.assign(q, y, z2))
                    }
                };
                if !ok {
                    self.queue.clear();
                    return false;
                }
            }
            if self.assigned[e] + 1 == self.size && !self.force_last(e) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    /// With one point left unassigned, its image is the one unused value.
    fn force_last(&mut self, e: usize) -> bool {
        let y = (0..self.size).find(|&y| self.f(e, y) == NONE).expect("one point left");
        let v = (0..self.size).find(|&v| self.finv(e, v) == NONE).expect("one value left");
        self.assign(e, y, v)
    }

    /// Next branching variable: the element with the fewest unassigned points, then its
    /// smallest unassigned point.
    fn pick(&self) -> Option<(usize, usize)> {
        let e = (0..self.m)
            .filter(|&e| self.assigned[e] < self.size)
            .min_by_key(|&e| (self.size - self.assigned[e], e))?;
        let y = (0..self.size).find(|&y| self.f(e, y) == NONE).expect("unassigned point");
        Some((e, y))
    }

    fn candidates(&self, e: usize, y: usize) -> Vec<usize> {
        let mut fresh_taken = false;
        let mut out = Vec::new();
        for v in 0..self.size {
            if self.finv(e, v) != NONE {
                continue;
            }
            let fresh = v >= self.n_src && self.touch[v] == 0 && v != y;
            if fresh {
                if fresh_taken {
                    continue;
                }
                fresh_taken = true;
            }
            out.push(v);
        }
        out
    }

    fn development(&self) -> Development {
        let maps = (0..self.m)
            .map(|e| {
                Perm::from_images(self.fwd[e * self.size..(e + 1) * self.size].to_vec())
                    .expect("complete assignment is bijective")
            })
            .collect();
        Development { target_size: self.size, maps }
    }

    fn solve<F, E>(&mut self, ctx: &Ctx, accept: &F) -> Outcome<E>
    where
        F: Fn(&Development) -> Result<bool, E>,
    {
        if ctx.stop.load(Ordering::Relaxed) {
            return Outcome::Stopped;
        }
        let Some((e, y)) = self.pick() else {
            let dev = self.development();
            return match accept(&dev) {
                Ok(true) => Outcome::Found(dev),
                Ok(false) => Outcome::Exhausted,
                Err(err) => Outcome::Abort(err),
            };
        };
        for v in self.candidates(e, y) {
            if ctx.nodes.fetch_add(1, Ordering::Relaxed) >= ctx.budget {
                return Outcome::Budget;
            }
            let mark = self.trail.len();
            if self.assign(e, y, v) && self.propagate() {
                match self.solve(ctx, accept) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
            self.undo_to(mark);
        }
        Outcome::Exhausted
    }

    /// Splits the first branching decision across worker threads.
    fn solve_parallel<F, E>(self, ctx: &Ctx, accept: &F) -> Outcome<E>
    where
        F: Fn(&Development) -> Result<bool, E> + Sync,
        E: Send,
    {
        let Some((e, y)) = self.pick() else {
            let mut s = self;
            return s.solve(ctx, accept);
        };
        let branches = self.candidates(e, y);
        let results: Vec<Outcome<E>> = branches
            .into_par_iter()
            .map(|v| {
                if ctx.nodes.fetch_add(1, Ordering::Relaxed) >= ctx.budget {
                    return Outcome::Budget;
                }
                let mut s = self.clone();
                if !(s.assign(e, y, v) && s.propagate()) {
                    return Outcome::Exhausted;
                }
                let out = s.solve(ctx, accept);
                if matches!(out, Outcome::Found(_) | Outcome::Abort(_)) {
                    ctx.stop.store(true, Ordering::Relaxed);
                }
                out
            })
            .collect();
        let mut budget = false;
        let mut found = None;
        for r in results {
            match r {
                Outcome::Abort(err) => return Outcome::Abort(err),
                Outcome::Found(d) => found = found.or(Some(d)),
                Outcome::Budget => budget = true,
                Outcome::Exhausted | Outcome::Stopped => {}
            }
        }
        if let Some(d) = found {
            return Outcome::Found(d);
        }
        if budget {
            Outcome::Budget
        } else {
            Outcome::Exhausted
        }
    }
}

// SAFETY-free Send/Sync: State only holds shared references and owned data.
#[cfg(test)]
mod tests {
    use super::*;
    use crate::develop::verify_development;
    use crate::permutoid::tests::restriction_pair;
    use crate::permutoid::validate_permutoid;

    fn problem(p: Permutoid, max_ground: usize) -> DevelopmentProblem {
        DevelopmentProblem { source: p, max_ground, node_budget: 1_000_000, deterministic: true }
    }

    #[test]
    fn trivial_develops_immediately() {
        let p = validate_permutoid(3, &[vec![(0, 0), (1, 1), (2, 2)]]).unwrap();
        let v = search_development(&problem(p, 5)).unwrap();
        let d = v.development().unwrap();
        assert_eq!(d.target_size, 3);
        assert!(d.maps[0].is_identity());
    }

    #[test]
    fn restriction_pair_develops_to_swap() {
        let p = restriction_pair();
        let v = search_development(&problem(p.clone(), 4)).unwrap();
        let d = v.development().unwrap();
        assert_eq!(d.target_size, 2);
        assert_eq!(d.maps[1].images(), &[1, 0]);
        assert_eq!(d.maps[2].images(), &[1, 0]);
        verify_development(&p, d).unwrap();
    }

    #[test]
    fn fresh_points_are_used_when_needed() {
        // 0↦1 together with an element fixing 0 and moving 1 away: needs a third point
        let p = validate_permutoid(2, &[vec![(0, 0), (1, 1)], vec![(0, 1)], vec![(1, 1)]]);
        // {1↦1} is a restriction of the identity, so this is not a permutoid
        assert!(p.is_err());
        let p = validate_permutoid(2, &[vec![(0, 0), (1, 1)], vec![(0, 1)], vec![(0, 0)]]);
        assert!(p.is_err());
        // a 2-point partial map whose development must move 1 somewhere new
        let p = validate_permutoid(3, &[vec![(0, 0), (1, 1), (2, 2)], vec![(0, 1), (1, 2)]]).unwrap();
        let v = search_development(&problem(p.clone(), 5)).unwrap();
        let d = v.development().unwrap();
        assert_eq!(d.target_size, 3);
        verify_development(&p, d).unwrap();
    }

    #[test]
    fn max_ground_below_source_is_rejected() {
        let p = restriction_pair();
        assert!(matches!(
            search_development(&problem(p, 1)),
            Err(DevelopError::MaxGroundTooSmall { .. })
        ));
    }

    #[test]
    fn budget_is_reported() {
        let p = validate_permutoid(3, &[vec![(0, 0), (1, 1), (2, 2)], vec![(0, 1)]]).unwrap();
        let mut prob = problem(p, 6);
        prob.node_budget = 0;
        assert!(matches!(
            search_development(&prob).unwrap(),
            SearchVerdict::BudgetExceeded { .. }
        ));
    }

    #[test]
    fn parallel_agrees_on_verdict() {
        let p = restriction_pair();
        let mut prob = problem(p.clone(), 4);
        prob.deterministic = false;
        let v = search_development(&prob).unwrap();
        verify_development(&p, v.development().unwrap()).unwrap();
    }
}
