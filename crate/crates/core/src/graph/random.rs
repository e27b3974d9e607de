use super::Digraph;
use rand::Rng;

/// Erdős–Rényi sample without loops. Undirected samples draw each pair once.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64, directed: bool) -> Digraph {
    let n32 = n as u32;
    let mut arcs = Vec::new();
    for u in 0..n32 {
        for v in 0..n32 {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    if directed {
        Digraph::new(n, arcs).expect("arcs in range")
    } else {
        Digraph::undirected(n, arcs).expect("edges in range")
    }
}
