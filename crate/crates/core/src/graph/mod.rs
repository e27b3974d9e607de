//! Finite digraphs on dense vertex sets `0..n`.

mod catalog;
mod families;
mod io;
mod predicates;
mod random;
mod tuples;

pub use catalog::{canonical_form, connected_graphs};
pub use families::{
    circular_clique, clique, cycle, disjoint_union, path, petersen, tensor_power,
    tensor_power_capped, DEFAULT_TENSOR_CAP,
};
pub use io::{parse_spec, parse_text, to_text};
pub use predicates::{
    has_loop, is_bipartite, is_connected, is_square_free, structural_predicates,
    StructuralPredicates,
};
pub use random::random_graph;
pub use tuples::{tuple_count, tuple_from_index, tuple_index};

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A finite digraph. Arcs are kept sorted and deduplicated, so two graphs with
/// the same vertex count and arc set compare equal.
///
/// A digraph whose arc set is closed under reversal is treated as an undirected
/// graph; `is_undirected` reports that.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(u32, u32)>,
    undirected: bool,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
}

/// Plain serialisable form used by the JSON outputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub vertex_count: usize,
    pub arcs: Vec<[u32; 2]>,
    pub undirected: bool,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut arcs: Vec<(u32, u32)> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            if u as usize >= n || v as usize >= n {
                return Err(Error::input(format!(
                    "arc ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        Ok(Self::from_sorted(n, arcs))
    }

    /// Builds the symmetric closure of the given edges.
    pub fn undirected(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut arcs = Vec::new();
        for (u, v) in edges {
            arcs.push((u, v));
            arcs.push((v, u));
        }
        Self::new(n, arcs)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub(crate) fn from_sorted(n: usize, arcs: Vec<(u32, u32)>) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u as usize].push(v);
            in_adj[v as usize].push(u);
        }
        for list in &mut in_adj {
            list.sort_unstable();
        }
        let undirected = arcs.iter().all(|&(u, v)| arcs.binary_search(&(v, u)).is_ok());
        Digraph {
            n,
            arcs,
            undirected,
            out_adj,
            in_adj,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in lexicographic order. The position of an arc in this slice is its index.
    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.out_adj
            .get(u as usize)
            .is_some_and(|out| out.binary_search(&v).is_ok())
    }

    pub fn arc_index(&self, u: u32, v: u32) -> Option<usize> {
        self.arcs.binary_search(&(u, v)).ok()
    }

    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        &self.out_adj[v as usize]
    }

    pub fn in_neighbors(&self, v: u32) -> &[u32] {
        &self.in_adj[v as usize]
    }

    pub fn has_loop_at(&self, v: u32) -> bool {
        self.has_arc(v, v)
    }

    /// Edges `{u,v}` with `u <= v`, for undirected graphs.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.arcs.iter().copied().filter(|&(u, v)| u <= v)
    }

    /// The symmetric closure, forgetting arc directions.
    pub fn underlying(&self) -> Digraph {
        Digraph::undirected(self.n, self.arcs.iter().copied())
            .expect("endpoints already validated")
    }

    pub fn record(&self) -> GraphRecord {
        GraphRecord {
            vertex_count: self.n,
            arcs: self.arcs.iter().map(|&(u, v)| [u, v]).collect(),
            undirected: self.undirected,
        }
    }

    pub fn from_record(rec: &GraphRecord) -> Result<Self> {
        Self::new(rec.vertex_count, rec.arcs.iter().map(|a| (a[0], a[1])))
    }
}
