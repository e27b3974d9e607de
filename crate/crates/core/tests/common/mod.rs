//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use pcsp_core::circle::Turn;
use pcsp_core::Digraph;
use petgraph::graph::DiGraph;

pub fn to_petgraph(g: &Digraph) -> DiGraph<(), ()> {
    let mut p = DiGraph::new();
    let nodes: Vec<_> = (0..g.vertex_count()).map(|_| p.add_node(())).collect();
    for &(u, v) in g.arcs() {
        p.add_edge(nodes[u as usize], nodes[v as usize], ());
    }
    p
}

pub fn isomorphic(a: &Digraph, b: &Digraph) -> bool {
    petgraph::algo::is_isomorphic(&to_petgraph(a), &to_petgraph(b))
}

fn respects(h: &Digraph, g: &Digraph, map: &[u32]) -> bool {
    h.arcs().iter().all(|&(u, v)| g.has_arc(map[u as usize], map[v as usize]))
}

/// Every map `V(h) -> V(g)` in lexicographic order, filtered to homomorphisms.
pub fn brute_homs(h: &Digraph, g: &Digraph) -> Vec<Vec<u32>> {
    let (n, m) = (h.vertex_count(), g.vertex_count() as u32);
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut map = vec![0u32; n];
    loop {
        if respects(h, g, &map) {
            out.push(map.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
        }
    }
}

pub fn brute_hom_exists(h: &Digraph, g: &Digraph) -> bool {
    !brute_homs(h, g).is_empty()
}

/// Least `k` admitting a proper colouring, by trying every assignment.
pub fn brute_chromatic(g: &Digraph) -> usize {
    let n = g.vertex_count();
    (1..=n.max(1))
        .find(|&k| {
            let kk = Digraph::new(k, (0..k as u32).flat_map(|a| (0..k as u32).filter(move |&b| b != a).map(move |b| (a, b)))).unwrap();
            brute_hom_exists(g, &kk)
        })
        .unwrap()
}

/// Every digraph on `n` vertices, loops included, as bit masks over the `n*n` pairs.
pub fn all_digraphs(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|u| (0..n as u32).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let arcs = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a);
            Digraph::new(n, arcs).unwrap()
        })
        .collect()
}

/// Maximal faces of the box complex by enumerating every subset of arcs: a set
/// is a face when all tails are adjacent to all heads.
pub fn brute_maximal_faces(g: &Digraph) -> Vec<Vec<usize>> {
    let arcs = g.arcs();
    let m = arcs.len();
    assert!(m <= 20);
    let is_face = |mask: u32| {
        let chosen: Vec<(u32, u32)> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| arcs[i]).collect();
        chosen.iter().all(|&(a, _)| chosen.iter().all(|&(_, b)| g.has_arc(a, b)))
    };
    let faces: Vec<u32> = (1u32..1 << m).filter(|&s| is_face(s)).collect();
    let mut maximal: Vec<Vec<usize>> = faces
        .iter()
        .filter(|&&s| !faces.iter().any(|&t| t != s && t & s == s))
        .map(|&s| (0..m).filter(|i| s >> i & 1 == 1).collect())
        .collect();
    maximal.sort();
    maximal
}

fn frac(t: Turn) -> Turn {
    t - t.floor()
}

/// Winding number of a closed sequence of angles joined by shorter arcs, counted
/// as signed crossings of a ray that avoids every angle.
pub fn ray_crossings(angles: &[Turn]) -> i64 {
    let mut distinct: Vec<Turn> = angles.iter().map(|&a| frac(a)).collect();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < 2 {
        return 0;
    }
    let two = Turn::from_integer(2);
    let ray = (distinct[0] + distinct[1]) / two;
    let half = Turn::new(1, 2);
    let mut count = 0;
    for t in 0..angles.len() {
        let x = frac(angles[t]);
        let y = frac(angles[(t + 1) % angles.len()]);
        let up = frac(y - x);
        assert_ne!(up, half, "antipodal consecutive angles");
        if up < half {
            if frac(ray - x) < up {
                count += 1;
            }
        } else if frac(x - ray) < Turn::from_integer(1) - up {
            count -= 1;
        }
    }
    count
}
