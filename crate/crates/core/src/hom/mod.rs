//! Homomorphism search and the derived invariants.

mod chromatic;
mod solver;
mod walk;

pub use chromatic::{chromatic_number, clique_number, optimal_coloring};
pub use solver::{HomIter, HomSolver, TARGET_CAP};
pub use walk::{shortest_odd_closed_walk, walk_of_length, OddWalk};

use crate::{Digraph, Error, Result};

/// A vertex map stored as its image table.
pub type VertexMap = Vec<u32>;

pub const DEFAULT_RESULT_CAP: usize = 1_000_000;

pub fn is_hom(source: &Digraph, target: &Digraph, map: &[u32]) -> bool {
    map.len() == source.vertex_count()
        && map.iter().all(|&x| (x as usize) < target.vertex_count())
        && source
            .arcs()
            .iter()
            .all(|&(u, v)| target.has_arc(map[u as usize], map[v as usize]))
}

/// The lexicographically least homomorphism, if any.
pub fn find_hom(source: &Digraph, target: &Digraph) -> Result<Option<VertexMap>> {
    Ok(HomSolver::new(target)?.find(source, None))
}

/// The lexicographically least homomorphism agreeing with the given pins.
pub fn find_hom_pinned(
    source: &Digraph,
    target: &Digraph,
    pins: &[(u32, u32)],
) -> Result<Option<VertexMap>> {
    let solver = HomSolver::new(target)?;
    let doms = solver.pinned_domains(source, pins)?;
    Ok(solver.find(source, Some(doms)))
}

/// Lazy lexicographic enumeration of all homomorphisms.
pub fn hom_iter(source: &Digraph, target: &Digraph) -> Result<HomIter<'static>> {
    Ok(HomSolver::new(target)?.into_iter_owned(source))
}

/// All homomorphisms in lexicographic order; fails once more than `cap` exist.
pub fn all_homs(source: &Digraph, target: &Digraph, cap: usize) -> Result<Vec<VertexMap>> {
    let mut out = Vec::new();
    for h in hom_iter(source, target)? {
        if out.len() == cap {
            return Err(Error::SizeLimit {
                what: "homomorphism list",
                size: cap as u128 + 1,
                cap: cap as u128,
            });
        }
        out.push(h);
    }
    Ok(out)
}

pub fn hom_exists(source: &Digraph, target: &Digraph) -> Result<bool> {
    Ok(find_hom(source, target)?.is_some())
}

/// Checks that `sets` assigns a nonempty set to every source vertex and that every
/// choice of representatives along every arc is an arc of the target.
pub fn is_multihom(source: &Digraph, target: &Digraph, sets: &[Vec<u32>]) -> Result<bool> {
    if sets.len() != source.vertex_count() {
        return Err(Error::param("multihomomorphism needs one set per source vertex"));
    }
    for (v, s) in sets.iter().enumerate() {
        if s.is_empty() {
            return Err(Error::param(format!("empty image set at vertex {v}")));
        }
        if s.iter().any(|&x| x as usize >= target.vertex_count()) {
            return Err(Error::param(format!("image of vertex {v} out of range")));
        }
    }
    Ok(source.arcs().iter().all(|&(u, v)| {
        sets[u as usize]
            .iter()
            .all(|&a| sets[v as usize].iter().all(|&b| target.has_arc(a, b)))
    }))
}

pub fn hom_equivalent(a: &Digraph, b: &Digraph) -> Result<bool> {
    Ok(hom_exists(a, b)? && hom_exists(b, a)?)
}
