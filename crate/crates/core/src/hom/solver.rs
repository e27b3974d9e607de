//! Backtracking homomorphism search with maintained arc consistency.
//!
//! Source vertices are assigned in index order and candidate values are tried in
//! increasing order, so the first solution is the lexicographically least one and
//! the iterator yields solutions in lexicographic order. Pruning never removes a
//! value that belongs to some solution, so ordering is unaffected by it.

use crate::{Digraph, Error, Result};
use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::borrow::Cow;
use std::collections::VecDeque;

pub const TARGET_CAP: u128 = 1 << 16;

/// Precomputed adjacency bit sets of a target graph, reusable across searches.
#[derive(Clone, Debug)]
pub struct HomSolver {
    n: usize,
    out_bits: Vec<FixedBitSet>,
    in_bits: Vec<FixedBitSet>,
    loops: FixedBitSet,
}

impl HomSolver {
    pub fn new(target: &Digraph) -> Result<Self> {
        let n = target.vertex_count();
        Error::check_cap("homomorphism target", n as u128, TARGET_CAP)?;
        let mut out_bits = vec![FixedBitSet::with_capacity(n); n];
        let mut in_bits = vec![FixedBitSet::with_capacity(n); n];
        let mut loops = FixedBitSet::with_capacity(n);
        for &(u, v) in target.arcs() {
            out_bits[u as usize].insert(v as usize);
            in_bits[v as usize].insert(u as usize);
            if u == v {
                loops.insert(u as usize);
            }
        }
        Ok(HomSolver {
            n,
            out_bits,
            in_bits,
            loops,
        })
    }

    pub fn target_size(&self) -> usize {
        self.n
    }

    pub fn full_domain(&self) -> FixedBitSet {
        let mut d = FixedBitSet::with_capacity(self.n);
        d.insert_range(..);
        d
    }

    /// Domains allowing every value except where `pins` fix a source vertex.
    pub fn pinned_domains(&self, source: &Digraph, pins: &[(u32, u32)]) -> Result<Vec<FixedBitSet>> {
        let mut doms = vec![self.full_domain(); source.vertex_count()];
        for &(s, t) in pins {
            if s as usize >= source.vertex_count() || t as usize >= self.n {
                return Err(Error::param(format!("pin {s} -> {t} out of range")));
            }
            let mut only = FixedBitSet::with_capacity(self.n);
            only.insert(t as usize);
            doms[s as usize].intersect_with(&only);
        }
        Ok(doms)
    }

    pub fn iter<'a>(&'a self, source: &Digraph, domains: Option<Vec<FixedBitSet>>) -> HomIter<'a> {
        HomIter::new(Cow::Borrowed(self), source, domains, None)
    }

    pub fn into_iter_owned(self, source: &Digraph) -> HomIter<'static> {
        HomIter::new(Cow::Owned(self), source, None, None)
    }

    pub fn find(&self, source: &Digraph, domains: Option<Vec<FixedBitSet>>) -> Option<Vec<u32>> {
        self.iter(source, domains).next()
    }

    /// A homomorphism found with candidate values tried in a seeded random order.
    pub fn random<R: Rng + ?Sized>(&self, source: &Digraph, rng: &mut R) -> Option<Vec<u32>> {
        let fork = ChaCha8Rng::from_seed(rng.gen());
        HomIter::new(Cow::Borrowed(self), source, None, Some(fork)).next()
    }

    fn propagate(&self, nbrs: &[Vec<Constraint>], doms: &mut [FixedBitSet], start: &[usize]) -> bool {
        let mut queue: VecDeque<usize> = start.iter().copied().collect();
        let mut queued = vec![false; doms.len()];
        for &s in start {
            queued[s] = true;
        }
        let mut support = FixedBitSet::with_capacity(self.n);
        while let Some(y) = queue.pop_front() {
            queued[y] = false;
            for c in &nbrs[y] {
                let z = c.other;
                for (active, bits) in [(c.forward, &self.out_bits), (c.backward, &self.in_bits)] {
                    if !active {
                        continue;
                    }
                    let before = doms[z].count_ones(..);
                    let mut ones = doms[y].ones();
                    match (ones.next(), ones.next()) {
                        (None, _) => return false,
                        (Some(b), None) => doms[z].intersect_with(&bits[b]),
                        _ => {
                            support.clear();
                            for b in doms[y].ones() {
                                support.union_with(&bits[b]);
                            }
                            doms[z].intersect_with(&support);
                        }
                    }
                    let after = doms[z].count_ones(..);
                    if after == 0 {
                        return false;
                    }
                    if after != before && !queued[z] {
                        queued[z] = true;
                        queue.push_back(z);
                    }
                }
            }
        }
        true
    }
}

/// Binary constraint seen from one endpoint: `forward` means an arc to `other`,
/// `backward` an arc from `other`.
#[derive(Clone, Copy, Debug)]
struct Constraint {
    other: usize,
    forward: bool,
    backward: bool,
}

struct Frame {
    domains: Vec<FixedBitSet>,
    candidates: Vec<u32>,
    pos: usize,
}

/// Lazy enumeration of homomorphisms, in lexicographic order unless randomised.
pub struct HomIter<'a> {
    solver: Cow<'a, HomSolver>,
    nbrs: Vec<Vec<Constraint>>,
    stack: Vec<Frame>,
    assignment: Vec<u32>,
    rng: Option<ChaCha8Rng>,
    empty_pending: bool,
}

impl<'a> HomIter<'a> {
    fn new(
        solver: Cow<'a, HomSolver>,
        source: &Digraph,
        domains: Option<Vec<FixedBitSet>>,
        rng: Option<ChaCha8Rng>,
    ) -> Self {
        let n = source.vertex_count();
        let mut nbrs: Vec<Vec<Constraint>> = vec![Vec::new(); n];
        for &(u, v) in source.arcs() {
            if u == v {
                continue;
            }
            add_constraint(&mut nbrs[u as usize], v as usize, true);
            add_constraint(&mut nbrs[v as usize], u as usize, false);
        }
        let mut it = HomIter {
            nbrs,
            stack: Vec::new(),
            assignment: vec![0; n],
            rng,
            empty_pending: n == 0,
            solver,
        };
        if n == 0 {
            return it;
        }
        let mut doms = domains.unwrap_or_else(|| vec![it.solver.full_domain(); n]);
        assert_eq!(doms.len(), n, "one domain per source vertex");
        for &(u, v) in source.arcs() {
            if u == v {
                doms[u as usize].intersect_with(&it.solver.loops);
            }
        }
        if doms.iter().any(|d| d.is_clear()) {
            return it;
        }
        let all: Vec<usize> = (0..n).collect();
        if it.solver.propagate(&it.nbrs, &mut doms, &all) {
            let candidates = it.order(&doms[0]);
            it.stack.push(Frame {
                domains: doms,
                candidates,
                pos: 0,
            });
        }
        it
    }

    fn order(&mut self, dom: &FixedBitSet) -> Vec<u32> {
        let mut c: Vec<u32> = dom.ones().map(|x| x as u32).collect();
        if let Some(rng) = self.rng.as_mut() {
            c.shuffle(rng);
        }
        c
    }
}

fn add_constraint(list: &mut Vec<Constraint>, other: usize, forward: bool) {
    let entry = match list.iter_mut().find(|c| c.other == other) {
        Some(e) => e,
        None => {
            list.push(Constraint {
                other,
                forward: false,
                backward: false,
            });
            list.last_mut().unwrap()
        }
    };
    if forward {
        entry.forward = true;
    } else {
        entry.backward = true;
    }
}

impl Iterator for HomIter<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.assignment.is_empty() {
            return std::mem::take(&mut self.empty_pending).then(Vec::new);
        }
        let n = self.assignment.len();
        loop {
            let var = self.stack.len().checked_sub(1)?;
            let frame = self.stack.last_mut().unwrap();
            if frame.pos >= frame.candidates.len() {
                self.stack.pop();
                continue;
            }
            let x = frame.candidates[frame.pos];
            frame.pos += 1;
            let mut doms = frame.domains.clone();
            doms[var].clear();
            doms[var].insert(x as usize);
            if !self.solver.propagate(&self.nbrs, &mut doms, &[var]) {
                continue;
            }
            self.assignment[var] = x;
            if var + 1 == n {
                return Some(self.assignment.clone());
            }
            let candidates = self.order(&doms[var + 1]);
            self.stack.push(Frame {
                domains: doms,
                candidates,
                pos: 0,
            });
        }
    }
}
