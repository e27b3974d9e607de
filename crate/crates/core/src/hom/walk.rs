use super::VertexMap;
use crate::{Digraph, Error, Result};
use serde::Serialize;
use std::collections::VecDeque;

/// A closed walk `w_0 -> w_1 -> ... -> w_{k-1} -> w_0` of odd length `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddWalk {
    pub vertices: Vec<u32>,
}

impl OddWalk {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The walk read as a homomorphism from the cycle `C_k` (or a loop when `k = 1`).
    pub fn as_hom(&self) -> VertexMap {
        self.vertices.clone()
    }
}

/// A shortest odd closed walk, found by breadth-first search in the bipartite
/// double cover. Ties go to the smallest start vertex, then to the walk found first.
pub fn shortest_odd_closed_walk(g: &Digraph) -> Result<OddWalk> {
    let n = g.vertex_count();
    let mut best: Option<Vec<u32>> = None;
    for s in 0..n as u32 {
        let mut parent: Vec<[Option<u32>; 2]> = vec![[None, None]; n];
        let mut seen = vec![[false; 2]; n];
        seen[s as usize][0] = true;
        let mut queue = VecDeque::from([(s, 0usize)]);
        let mut found = false;
        while let Some((u, p)) = queue.pop_front() {
            for &v in g.out_neighbors(u) {
                let q = 1 - p;
                if !seen[v as usize][q] {
                    seen[v as usize][q] = true;
                    parent[v as usize][q] = Some(u);
                    if v == s && q == 1 {
                        found = true;
                        break;
                    }
                    queue.push_back((v, q));
                }
            }
            if found {
                break;
            }
        }
        if !found {
            continue;
        }
        let mut rev = Vec::new();
        let (mut v, mut p) = (s, 1usize);
        loop {
            let u = parent[v as usize][p].expect("parent on reconstructed path");
            rev.push(u);
            p = 1 - p;
            v = u;
            if v == s && p == 0 {
                break;
            }
        }
        rev.reverse();
        if best.as_ref().is_none_or(|b| rev.len() < b.len()) {
            best = Some(rev);
        }
    }
    best.map(|vertices| OddWalk { vertices }).ok_or(Error::NoOddWalk)
}

/// The lexicographically least walk of exactly `k` arcs from `from` to `to`,
/// as its `k + 1` vertices.
pub fn walk_of_length(g: &Digraph, from: u32, to: u32, k: usize) -> Option<Vec<u32>> {
    let n = g.vertex_count();
    // reach[i][u]: `to` is reachable from u in exactly i steps
    let mut reach = vec![vec![false; n]; k + 1];
    reach[0][to as usize] = true;
    for i in 1..=k {
        for u in 0..n {
            reach[i][u] = g
                .out_neighbors(u as u32)
                .iter()
                .any(|&v| reach[i - 1][v as usize]);
        }
    }
    if !reach[k][from as usize] {
        return None;
    }
    let mut walk = vec![from];
    let mut cur = from;
    for i in (0..k).rev() {
        cur = *g
            .out_neighbors(cur)
            .iter()
            .find(|&&v| reach[i][v as usize])
            .expect("reachability table is consistent");
        walk.push(cur);
    }
    Some(walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique, cycle, petersen};
    use crate::hom::is_hom;

    #[test]
    fn odd_walks() {
        assert!(matches!(shortest_odd_closed_walk(&cycle(6).unwrap()), Err(Error::NoOddWalk)));
        let w = shortest_odd_closed_walk(&cycle(7).unwrap()).unwrap();
        assert_eq!(w.len(), 7);
        assert!(is_hom(&cycle(7).unwrap(), &cycle(7).unwrap(), &w.as_hom()));
        assert_eq!(shortest_odd_closed_walk(&clique(4).unwrap()).unwrap().len(), 3);
        let pw = shortest_odd_closed_walk(&petersen()).unwrap();
        assert_eq!(pw.len(), 5);
        assert!(is_hom(&cycle(5).unwrap(), &petersen(), &pw.as_hom()));
        let looped = Digraph::new(2, [(0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(shortest_odd_closed_walk(&looped).unwrap().vertices, vec![1]);
    }

    #[test]
    fn exact_length_walks() {
        let c5 = cycle(5).unwrap();
        assert_eq!(walk_of_length(&c5, 0, 2, 3), Some(vec![0, 4, 3, 2]));
        assert_eq!(walk_of_length(&c5, 0, 3, 3), Some(vec![0, 1, 2, 3]));
        assert_eq!(walk_of_length(&c5, 0, 0, 3), None);
    }
}
