//! Small-graph catalogue, deduplicated by brute-force canonical labelling.

use super::{is_connected, Digraph};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::sync::OnceLock;

const MAX_CANONICAL: usize = 8;
const MAX_CATALOG: usize = 6;

/// Canonical form of a digraph on at most eight vertices: the least adjacency
/// bit string over all relabellings, together with the vertex count.
pub fn canonical_form(g: &Digraph) -> Result<(usize, u64)> {
    let n = g.vertex_count();
    if n > MAX_CANONICAL {
        return Err(Error::param(format!(
            "canonical form is brute force and limited to {MAX_CANONICAL} vertices"
        )));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = encode(g, &perm);
    let mut c = vec![0usize; n];
    let mut i = 0;
    // Heap's algorithm
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(encode(g, &perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok((n, best))
}

fn encode(g: &Digraph, perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut bits = 0u64;
    for &(u, v) in g.arcs() {
        let pos = perm[u as usize] * n + perm[v as usize];
        bits |= 1 << (63 - pos);
    }
    bits
}

fn decode(n: usize, bits: u64) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if bits & (1 << (63 - (u * n + v))) != 0 {
                arcs.push((u as u32, v as u32));
            }
        }
    }
    Digraph::new(n, arcs).expect("decoded arcs in range")
}

/// All connected loopless undirected graphs on `n` vertices up to isomorphism,
/// in canonical order. Computed once per `n` and cached.
pub fn connected_graphs(n: usize) -> Result<&'static [Digraph]> {
    static CACHE: [OnceLock<Vec<Digraph>>; MAX_CATALOG + 1] = [const { OnceLock::new() }; MAX_CATALOG + 1];
    if n == 0 || n > MAX_CATALOG {
        return Err(Error::param(format!("catalogue covers 1..={MAX_CATALOG} vertices")));
    }
    Ok(CACHE[n].get_or_init(|| build(n)))
}

fn build(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| ((u + 1)..n as u32).map(move |v| (u, v)))
        .collect();
    let mut found = BTreeMap::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e);
        let g = Digraph::undirected(n, edges).expect("edges in range");
        if !is_connected(&g) {
            continue;
        }
        let key = canonical_form(&g).expect("small graph").1;
        found.entry(key).or_insert(());
    }
    found.into_keys().map(|bits| decode(n, bits)).collect()
}
