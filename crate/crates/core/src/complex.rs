//! The box complex `Hom(K2, G)`: vertices are arcs, faces are arc sets `U x V`
//! with every pair an arc of `G`.

use crate::hom::{shortest_odd_closed_walk, OddWalk};
use crate::minion::Polymorphism;
use crate::{Digraph, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write;

pub const DEFAULT_FACE_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxComplex {
    graph: Digraph,
    involution: Vec<usize>,
    maximal_faces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxComplexRecord {
    pub vertices: Vec<[u32; 2]>,
    pub involution: Vec<usize>,
    pub maximal_faces: Vec<Vec<usize>>,
}

/// `tails x heads` of the given arcs is contained in the arc set.
pub fn is_face(g: &Digraph, arcs: &[(u32, u32)]) -> bool {
    let tails: BTreeSet<u32> = arcs.iter().map(|a| a.0).collect();
    let heads: BTreeSet<u32> = arcs.iter().map(|a| a.1).collect();
    tails.iter().all(|&u| heads.iter().all(|&v| g.has_arc(u, v)))
}

pub fn box_complex(g: &Digraph) -> Result<BoxComplex> {
    box_complex_capped(g, DEFAULT_FACE_CAP)
}

/// Maximal faces are the maximal sets `U x V`, found as the closed pairs of the
/// neighbourhood relation: each `V` is an intersection of neighbourhoods and `U`
/// is the set of common neighbours of `V`.
pub fn box_complex_capped(g: &Digraph, cap: usize) -> Result<BoxComplex> {
    if !g.is_undirected() {
        return Err(Error::input("box complex needs an undirected graph"));
    }
    let n = g.vertex_count() as u32;
    let neighborhoods: BTreeSet<Vec<u32>> = (0..n)
        .map(|u| g.out_neighbors(u).to_vec())
        .filter(|s| !s.is_empty())
        .collect();
    let mut family = neighborhoods.clone();
    let mut work: Vec<Vec<u32>> = family.iter().cloned().collect();
    while let Some(x) = work.pop() {
        for nb in &neighborhoods {
            let meet: Vec<u32> = x
                .iter()
                .copied()
                .filter(|v| nb.binary_search(v).is_ok())
                .collect();
            if !meet.is_empty() && family.insert(meet.clone()) {
                if family.len() > cap {
                    return Err(Error::SizeLimit {
                        what: "maximal face list",
                        size: family.len() as u128,
                        cap: cap as u128,
                    });
                }
                work.push(meet);
            }
        }
    }
    let mut faces: Vec<Vec<usize>> = family
        .into_iter()
        .map(|heads| {
            let tails: Vec<u32> = (0..n)
                .filter(|&u| heads.iter().all(|&v| g.has_arc(u, v)))
                .collect();
            let mut face: Vec<usize> = tails
                .iter()
                .flat_map(|&u| heads.iter().map(move |&v| (u, v)))
                .map(|(u, v)| g.arc_index(u, v).expect("closed pair spans arcs"))
                .collect();
            face.sort_unstable();
            face
        })
        .collect();
    faces.sort();
    faces.dedup();
    let involution = g
        .arcs()
        .iter()
        .map(|&(u, v)| g.arc_index(v, u).expect("undirected"))
        .collect();
    Ok(BoxComplex {
        graph: g.clone(),
        involution,
        maximal_faces: faces,
    })
}

impl BoxComplex {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn vertices(&self) -> &[(u32, u32)] {
        self.graph.arcs()
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn maximal_faces(&self) -> &[Vec<usize>] {
        &self.maximal_faces
    }

    /// No face contains an arc together with its reverse.
    pub fn is_free(&self) -> bool {
        self.maximal_faces.iter().all(|face| {
            face.iter()
                .all(|&a| face.binary_search(&self.involution[a]).is_err())
        })
    }

    /// The 1-skeleton as an undirected graph on arc indices.
    pub fn one_skeleton(&self) -> Digraph {
        let mut edges = BTreeSet::new();
        for face in &self.maximal_faces {
            for (i, &a) in face.iter().enumerate() {
                for &b in &face[i + 1..] {
                    edges.insert((a as u32, b as u32));
                }
            }
        }
        Digraph::undirected(self.vertices().len(), edges).expect("arc indices in range")
    }

    /// All faces, as sorted index lists ordered by size then lexicographically.
    pub fn all_faces(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let total: u128 = self
            .maximal_faces
            .iter()
            .map(|f| 1u128.checked_shl(f.len() as u32).unwrap_or(u128::MAX))
            .sum();
        Error::check_cap("expanded face list", total, cap as u128)?;
        let mut all = BTreeSet::new();
        for face in &self.maximal_faces {
            for mask in 1u64..(1 << face.len()) {
                let sub: Vec<usize> = face
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &a)| a)
                    .collect();
                all.insert((sub.len(), sub));
            }
        }
        Ok(all.into_iter().map(|(_, f)| f).collect())
    }

    pub fn record(&self) -> BoxComplexRecord {
        BoxComplexRecord {
            vertices: self.vertices().iter().map(|&(u, v)| [u, v]).collect(),
            involution: self.involution.clone(),
            maximal_faces: self.maximal_faces.clone(),
        }
    }

    /// OFF text of the 1-skeleton: arcs on the unit circle, edges as 2-gons.
    pub fn to_off(&self) -> String {
        let skeleton = self.one_skeleton();
        let nv = skeleton.vertex_count();
        let edges: Vec<(u32, u32)> = skeleton.edges().collect();
        let mut out = String::new();
        writeln!(out, "OFF").unwrap();
        writeln!(out, "{} {} 0", nv, edges.len()).unwrap();
        for i in 0..nv {
            let t = std::f64::consts::TAU * i as f64 / nv.max(1) as f64;
            writeln!(out, "{:.6} {:.6} 0.000000", t.cos(), t.sin()).unwrap();
        }
        for (a, b) in edges {
            writeln!(out, "2 {a} {b}").unwrap();
        }
        out
    }
}

/// `((a_1,b_1), ..., (a_n,b_n))` becomes the arc `((a_1..a_n), (b_1..b_n))` of `G^n`.
pub fn product_iso(arcs: &[(u32, u32)]) -> (Vec<u32>, Vec<u32>) {
    arcs.iter().copied().unzip()
}

/// The simplicial map induced by a polymorphism on box complexes, on one vertex.
pub fn mu1(f: &Polymorphism<'_>, arcs: &[(u32, u32)]) -> (u32, u32) {
    let (tails, heads) = product_iso(arcs);
    (f.eval(&tails), f.eval(&heads))
}

/// The closed walk `(0,1), (2,1), (2,3), (4,3), ...` through all `2k` arcs of `C_k`.
pub fn cycle_generator_arcs(k: usize) -> Vec<(u32, u32)> {
    let k32 = k as u32;
    (0..2 * k32)
        .map(|t| {
            let j = t / 2;
            if t % 2 == 0 {
                ((2 * j) % k32, (2 * j + 1) % k32)
            } else {
                ((2 * j + 2) % k32, (2 * j + 1) % k32)
            }
        })
        .collect()
}

/// The image of the cycle generator under the walk `C_k -> H`.
pub fn generator_loop_from(walk: &OddWalk) -> Vec<(u32, u32)> {
    let w = &walk.vertices;
    cycle_generator_arcs(w.len())
        .into_iter()
        .map(|(a, b)| (w[a as usize], w[b as usize]))
        .collect()
}

/// A generating loop of `Box(H)`, pushed forward along a shortest odd closed walk.
pub fn generator_loop(h: &Digraph) -> Result<Vec<(u32, u32)>> {
    if !h.is_undirected() {
        return Err(Error::input("generator loop needs an undirected graph"));
    }
    Ok(generator_loop_from(&shortest_odd_closed_walk(h)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique, cycle, is_connected, petersen};
    use crate::hom::is_multihom;

    fn components(g: &Digraph) -> Vec<usize> {
        let n = g.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            let mut stack = vec![s as u32];
            comp[s] = id;
            let mut size = 0;
            while let Some(u) = stack.pop() {
                size += 1;
                for &v in g.out_neighbors(u) {
                    if comp[v as usize] == usize::MAX {
                        comp[v as usize] = id;
                        stack.push(v);
                    }
                }
            }
            sizes.push(size);
        }
        sizes
    }

    #[test]
    fn c5_is_a_ten_cycle() {
        let bx = box_complex(&cycle(5).unwrap()).unwrap();
        assert_eq!(bx.vertices().len(), 10);
        assert_eq!(bx.maximal_faces().len(), 10);
        assert!(bx.maximal_faces().iter().all(|f| f.len() == 2));
        let sk = bx.one_skeleton();
        assert!(is_connected(&sk));
        assert!((0..10).all(|v| sk.out_neighbors(v).len() == 2));
        assert!(bx.is_free());
    }

    #[test]
    fn c6_splits_into_two_hexagons() {
        let bx = box_complex(&cycle(6).unwrap()).unwrap();
        assert_eq!(components(&bx.one_skeleton()), vec![6, 6]);
    }

    #[test]
    fn k4_faces() {
        let bx = box_complex(&clique(4).unwrap()).unwrap();
        assert_eq!(bx.vertices().len(), 12);
        let mut sizes: Vec<usize> = bx.maximal_faces().iter().map(|f| f.len()).collect();
        sizes.sort();
        assert_eq!(sizes, [vec![3; 8], vec![4; 6]].concat());
        assert!(bx.is_free());
    }

    #[test]
    fn faces_agree_with_multihomomorphisms() {
        let k2 = clique(2).unwrap();
        for g in [cycle(5).unwrap(), clique(4).unwrap(), cycle(6).unwrap()] {
            let arcs = g.arcs();
            for (i, &a) in arcs.iter().enumerate() {
                for &b in &arcs[i + 1..] {
                    let tails: Vec<u32> = BTreeSet::from([a.0, b.0]).into_iter().collect();
                    let heads: Vec<u32> = BTreeSet::from([a.1, b.1]).into_iter().collect();
                    let multi = is_multihom(&k2, &g, &[tails, heads]).unwrap();
                    assert_eq!(is_face(&g, &[a, b]), multi);
                }
            }
        }
    }

    #[test]
    fn involution_and_generator() {
        let g = petersen();
        let bx = box_complex(&g).unwrap();
        let inv = bx.involution();
        assert!((0..inv.len()).all(|i| inv[inv[i]] == i && inv[i] != i));
        let lp = generator_loop(&g).unwrap();
        assert_eq!(lp.len(), 10);
        for t in 0..lp.len() {
            assert!(is_face(&g, &[lp[t], lp[(t + 1) % lp.len()]]));
        }
        assert!(generator_loop(&cycle(6).unwrap()).is_err());
        let gen = cycle_generator_arcs(3);
        assert_eq!(gen, vec![(0, 1), (2, 1), (2, 0), (1, 0), (1, 2), (0, 2)]);
    }

    #[test]
    fn product_isomorphism() {
        assert_eq!(product_iso(&[(0, 1), (2, 3)]), (vec![0, 2], vec![1, 3]));
    }

    #[test]
    fn expansion_and_exports() {
        let bx = box_complex(&cycle(5).unwrap()).unwrap();
        let faces = bx.all_faces(1000).unwrap();
        assert_eq!(faces.len(), 20);
        assert!(bx.all_faces(3).is_err());
        let off = bx.to_off();
        assert!(off.starts_with("OFF\n10 10 0\n"));
        let json = serde_json::to_string(&bx.record()).unwrap();
        assert!(json.starts_with("{\"vertices\":[[0,1],[0,4]"));
    }
}
