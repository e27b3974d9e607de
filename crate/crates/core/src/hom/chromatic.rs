//! Exact colouring by saturation-ordered backtracking.
//!
//! Colours are interchangeable, so a vertex may only open the next unused colour.

use crate::graph::has_loop;
use crate::{Digraph, Error, Result};

fn adjacency(g: &Digraph) -> Vec<Vec<u32>> {
    let u = g.underlying();
    (0..u.vertex_count() as u32)
        .map(|v| u.out_neighbors(v).to_vec())
        .collect()
}

/// Size of a largest clique of the underlying undirected graph.
pub fn clique_number(g: &Digraph) -> usize {
    let adj = adjacency(g);
    let n = adj.len();
    let mut best = 0;
    let mut current = Vec::new();
    fn grow(adj: &[Vec<u32>], cand: Vec<u32>, current: &mut Vec<u32>, best: &mut usize) {
        if current.len() + cand.len() <= *best {
            return;
        }
        if cand.is_empty() {
            *best = current.len();
            return;
        }
        for (i, &v) in cand.iter().enumerate() {
            if current.len() + cand.len() - i <= *best {
                return;
            }
            let next: Vec<u32> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|w| adj[v as usize].binary_search(w).is_ok())
                .collect();
            current.push(v);
            grow(adj, next, current, best);
            current.pop();
        }
    }
    grow(&adj, (0..n as u32).collect(), &mut current, &mut best);
    best
}

struct Colorer<'a> {
    adj: &'a [Vec<u32>],
    k: usize,
    color: Vec<u32>,
    // counts[v * k + c] = number of neighbours of v coloured c
    counts: Vec<u32>,
    saturation: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl Colorer<'_> {
    fn assign(&mut self, v: usize, c: u32) {
        self.color[v] = c;
        for &w in &self.adj[v] {
            let slot = w as usize * self.k + c as usize;
            if self.counts[slot] == 0 {
                self.saturation[w as usize] += 1;
            }
            self.counts[slot] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        for &w in &self.adj[v] {
            let slot = w as usize * self.k + c as usize;
            self.counts[slot] -= 1;
            if self.counts[slot] == 0 {
                self.saturation[w as usize] -= 1;
            }
        }
        self.color[v] = NONE;
    }

    fn pick(&self) -> Option<usize> {
        (0..self.color.len())
            .filter(|&v| self.color[v] == NONE)
            .max_by_key(|&v| (self.saturation[v], self.adj[v].len(), std::cmp::Reverse(v)))
    }

    fn solve(&mut self, used: u32) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        let limit = (used + 1).min(self.k as u32);
        for c in 0..limit {
            if self.counts[v * self.k + c as usize] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.solve(used.max(c + 1)) {
                return true;
            }
            self.unassign(v);
        }
        false
    }
}

fn color_with(adj: &[Vec<u32>], k: usize) -> Option<Vec<u32>> {
    let n = adj.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut c = Colorer {
        adj,
        k,
        color: vec![NONE; n],
        counts: vec![0; n * k],
        saturation: vec![0; n],
    };
    c.solve(0).then_some(c.color)
}

/// An optimal proper colouring, as a homomorphism into `K_chi`.
pub fn optimal_coloring(g: &Digraph) -> Result<Vec<u32>> {
    if has_loop(g) {
        return Err(Error::NoColoring);
    }
    let adj = adjacency(g);
    let lower = clique_number(g);
    (lower..=adj.len().max(lower))
        .find_map(|k| color_with(&adj, k))
        .ok_or_else(|| unreachable!("n colours always suffice"))
}

pub fn chromatic_number(g: &Digraph) -> Result<usize> {
    let coloring = optimal_coloring(g)?;
    Ok(coloring.iter().map(|&c| c as usize + 1).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circular_clique, clique, cycle, petersen};
    use crate::hom::{find_hom, is_hom};

    fn chi_by_hom_search(g: &Digraph) -> usize {
        (1..=g.vertex_count())
            .find(|&n| find_hom(g, &clique(n).unwrap()).unwrap().is_some())
            .unwrap_or(0)
    }

    #[test]
    fn examples() {
        assert_eq!(chromatic_number(&clique(4).unwrap()).unwrap(), 4);
        assert_eq!(chromatic_number(&cycle(7).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(8).unwrap()).unwrap(), 2);
        assert_eq!(chromatic_number(&petersen()).unwrap(), 3);
        assert_eq!(chromatic_number(&circular_clique(7, 2).unwrap()).unwrap(), 4);
        assert_eq!(chromatic_number(&Digraph::empty(0)).unwrap(), 0);
        assert_eq!(chromatic_number(&Digraph::empty(3)).unwrap(), 1);
        let loopy = Digraph::new(2, [(0, 0), (0, 1)]).unwrap();
        assert!(matches!(chromatic_number(&loopy), Err(Error::NoColoring)));
    }

    #[test]
    fn agrees_with_hom_search() {
        for p in 2..=9 {
            for q in 1..=p / 2 {
                let g = circular_clique(p, q).unwrap();
                assert_eq!(chromatic_number(&g).unwrap(), chi_by_hom_search(&g));
                let col = optimal_coloring(&g).unwrap();
                let chi = chromatic_number(&g).unwrap();
                assert!(is_hom(&g, &clique(chi).unwrap(), &col));
            }
        }
        let tournament = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(chromatic_number(&tournament).unwrap(), 3);
    }
}
