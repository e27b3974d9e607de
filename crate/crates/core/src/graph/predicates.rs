use super::Digraph;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralPredicates {
    pub bipartite: bool,
    pub has_loop: bool,
    pub square_free: bool,
    pub connected: bool,
}

fn require_undirected(g: &Digraph, what: &str) -> Result<()> {
    if g.is_undirected() {
        Ok(())
    } else {
        Err(Error::input(format!("{what} needs an undirected graph")))
    }
}

pub fn has_loop(g: &Digraph) -> bool {
    g.arcs().iter().any(|&(u, v)| u == v)
}

pub fn is_bipartite(g: &Digraph) -> Result<bool> {
    require_undirected(g, "bipartiteness")?;
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    for start in 0..n {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        let mut queue = VecDeque::from([start as u32]);
        while let Some(u) = queue.pop_front() {
            for &v in g.out_neighbors(u) {
                let s = 1 - side[u as usize];
                if side[v as usize] == u8::MAX {
                    side[v as usize] = s;
                    queue.push_back(v);
                } else if side[v as usize] != s {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// True when no four distinct vertices span a 4-cycle.
pub fn is_square_free(g: &Digraph) -> Result<bool> {
    require_undirected(g, "square-freeness")?;
    let n = g.vertex_count() as u32;
    let mut mark = vec![false; n as usize];
    for a in 0..n {
        for &b in g.out_neighbors(a) {
            if b != a {
                mark[b as usize] = true;
            }
        }
        for c in (a + 1)..n {
            let common = g
                .out_neighbors(c)
                .iter()
                .filter(|&&b| b != a && b != c && mark[b as usize])
                .count();
            if common >= 2 {
                return Ok(false);
            }
        }
        for &b in g.out_neighbors(a) {
            mark[b as usize] = false;
        }
    }
    Ok(true)
}

/// Weak connectivity. The graph on no vertices counts as connected.
pub fn is_connected(g: &Digraph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0u32];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in g.out_neighbors(u).iter().chain(g.in_neighbors(u)) {
            if !seen[v as usize] {
                seen[v as usize] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

pub fn structural_predicates(g: &Digraph) -> Result<StructuralPredicates> {
    Ok(StructuralPredicates {
        bipartite: is_bipartite(g)?,
        has_loop: has_loop(g),
        square_free: is_square_free(g)?,
        connected: is_connected(g),
    })
}
