//! Adjoint pairs of graph functors with explicit homomorphism converters, and a
//! seeded property checker for the adjunction laws.

use crate::functor::{
    arc_digraph, arc_right_adjoint_labeled, gadget_layout, omega_labeled, pp_power, pp_witness_with,
    subdivide, sub, sym, walk_power, FunctorTag, GadgetLayout, PPFormula, DEFAULT_DELTA_R_CAP,
    DEFAULT_OMEGA_CAP,
};
use crate::graph::{
    disjoint_union, random_graph, tuple_from_index, tuple_index, GraphRecord,
};
use crate::hom::{find_hom, hom_equivalent, is_hom, walk_of_length, HomSolver, VertexMap};
use crate::{Digraph, Error, Exec, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;

/// A pair `(L, R)` with `L I -> G` exactly when `I -> R G`, together with the
/// converters that witness it.
pub trait AdjointPair: Send + Sync {
    fn name(&self) -> String;
    fn left(&self, g: &Digraph) -> Result<Digraph>;
    fn right(&self, g: &Digraph) -> Result<Digraph>;
    /// Turns `h: L I -> G` into `I -> R G`.
    fn transpose_left(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap>;
    /// Turns `h: I -> R G` into `L I -> G`.
    fn transpose_right(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap>;
    /// Image of `f: A -> B` under `L`.
    fn map_left(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap>;
    /// Image of `f: A -> B` under `R`.
    fn map_right(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap>;
    /// Whether sampled inputs may be proper digraphs.
    fn directed_inputs(&self) -> bool {
        true
    }
    /// `G -> R L G`, witnessed by the transpose of the identity on `L G`.
    fn unit_holds(&self, g: &Digraph) -> Result<bool> {
        let lg = self.left(g)?;
        let id: Vec<u32> = (0..lg.vertex_count() as u32).collect();
        let unit = self.transpose_left(g, &lg, &id)?;
        Ok(is_hom(g, &self.right(&lg)?, &unit))
    }
    /// `L R H -> H`, witnessed by the transpose of the identity on `R H`.
    fn counit_holds(&self, h: &Digraph) -> Result<bool> {
        let rh = self.right(h)?;
        let id: Vec<u32> = (0..rh.vertex_count() as u32).collect();
        let counit = self.transpose_right(&rh, h, &id)?;
        Ok(is_hom(&self.left(&rh)?, h, &counit))
    }
}

fn set_mask(vals: impl IntoIterator<Item = u32>) -> u64 {
    vals.into_iter().fold(0, |m, v| m | 1 << v)
}

fn image_mask(mask: u64, f: &[u32]) -> u64 {
    (0..64)
        .filter(|i| mask & (1 << i) != 0)
        .fold(0, |m, i| m | 1 << f[i as usize])
}

fn require_hom(i: &Digraph, j: &Digraph, h: &[u32], what: &str) -> Result<()> {
    if is_hom(i, j, h) {
        Ok(())
    } else {
        Err(Error::input(format!("{what}: map is not a homomorphism")))
    }
}

/// `(Lambda_phi, Gamma_phi)`: gadget replacement and pp-power.
pub struct GadgetPair {
    pub phi: PPFormula,
}

impl GadgetPair {
    fn copy_index(layout: &GadgetLayout) -> HashMap<(u32, u32), usize> {
        layout
            .copies
            .iter()
            .enumerate()
            .map(|(c, &(e, _))| (e, c))
            .collect()
    }
}

impl AdjointPair for GadgetPair {
    fn name(&self) -> String {
        format!("gadget {}", self.phi)
    }

    fn left(&self, g: &Digraph) -> Result<Digraph> {
        crate::functor::gadget_replace(g, &self.phi)
    }

    fn right(&self, g: &Digraph) -> Result<Digraph> {
        pp_power(g, &self.phi)
    }

    fn transpose_left(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap> {
        let layout = gadget_layout(i, &self.phi)?;
        require_hom(&layout.graph, g, h, "transpose")?;
        let base = g.vertex_count();
        Ok(layout
            .vertex_nodes
            .iter()
            .map(|nodes| {
                let t: Vec<u32> = nodes.iter().map(|&x| h[x as usize]).collect();
                tuple_index(&t, base) as u32
            })
            .collect())
    }

    fn transpose_right(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap> {
        let layout = gadget_layout(i, &self.phi)?;
        let base = g.vertex_count();
        let n = self.phi.arity();
        if h.len() != i.vertex_count() || h.iter().any(|&x| x as u128 >= (base as u128).pow(n as u32)) {
            return Err(Error::input("transpose: map does not fit the pp-power"));
        }
        let solver = HomSolver::new(g)?;
        let mut out = vec![u32::MAX; layout.graph.vertex_count()];
        for (v, nodes) in layout.vertex_nodes.iter().enumerate() {
            let t = tuple_from_index(h[v] as usize, base, n);
            for (c, &x) in nodes.iter().enumerate() {
                out[x as usize] = t[c];
            }
        }
        for &((u, v), ref nodes) in &layout.copies {
            let a = tuple_from_index(h[u as usize] as usize, base, n);
            let b = tuple_from_index(h[v as usize] as usize, base, n);
            let w = pp_witness_with(&solver, &self.phi, &a, &b)?
                .ok_or_else(|| Error::input("transpose: map is not a homomorphism"))?;
            for (x, &node) in nodes.iter().enumerate() {
                out[node as usize] = w[x];
            }
        }
        Ok(out)
    }

    fn map_left(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap> {
        require_hom(a, b, f, "functorial image")?;
        let la = gadget_layout(a, &self.phi)?;
        let lb = gadget_layout(b, &self.phi)?;
        let index = Self::copy_index(&lb);
        let swap = self.phi.swap_automorphism();
        let mut out = vec![u32::MAX; la.graph.vertex_count()];
        for (v, nodes) in la.vertex_nodes.iter().enumerate() {
            for (c, &x) in nodes.iter().enumerate() {
                out[x as usize] = lb.vertex_nodes[f[v] as usize][c];
            }
        }
        for &((u, v), ref nodes) in &la.copies {
            let (fu, fv) = (f[u as usize], f[v as usize]);
            let (key, flip) = if lb.per_edge {
                ((fu.min(fv), fu.max(fv)), fu > fv)
            } else {
                ((fu, fv), false)
            };
            let target = &lb.copies[index[&key]].1;
            for (x, &node) in nodes.iter().enumerate() {
                let y = match (flip, swap) {
                    (true, Some(s)) => s[x] as usize,
                    _ => x,
                };
                out[node as usize] = target[y];
            }
        }
        Ok(out)
    }

    fn map_right(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap> {
        require_hom(a, b, f, "functorial image")?;
        let n = self.phi.arity();
        let (na, nb) = (a.vertex_count(), b.vertex_count());
        let count = na.pow(n as u32);
        Ok((0..count)
            .map(|idx| {
                let t: Vec<u32> = tuple_from_index(idx, na, n)
                    .into_iter()
                    .map(|x| f[x as usize])
                    .collect();
                tuple_index(&t, nb) as u32
            })
            .collect())
    }
}

/// `(Lambda_k, Gamma_k)`: subdivision and walk power on undirected graphs.
pub struct SubdivisionPair {
    k: usize,
    inner: GadgetPair,
}

impl SubdivisionPair {
    pub fn new(k: usize) -> Result<Self> {
        if k.is_multiple_of(2) {
            return Err(Error::param(format!("subdivision needs an odd k, got {k}")));
        }
        Ok(SubdivisionPair {
            k,
            inner: GadgetPair {
                phi: PPFormula::path(k),
            },
        })
    }
}

impl AdjointPair for SubdivisionPair {
    fn name(&self) -> String {
        format!("lambda:{0}/gamma:{0}", self.k)
    }
    fn left(&self, g: &Digraph) -> Result<Digraph> {
        subdivide(g, self.k)
    }
    fn right(&self, g: &Digraph) -> Result<Digraph> {
        walk_power(g, self.k)
    }
    fn transpose_left(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap> {
        self.inner.transpose_left(i, g, h)
    }
    fn transpose_right(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap> {
        require_hom(i, &walk_power(g, self.k)?, h, "transpose")?;
        let layout = gadget_layout(i, &self.inner.phi)?;
        let mut out = vec![u32::MAX; layout.graph.vertex_count()];
        for (v, nodes) in layout.vertex_nodes.iter().enumerate() {
            out[nodes[0] as usize] = h[v];
        }
        for &((u, v), ref nodes) in &layout.copies {
            let walk = walk_of_length(g, h[u as usize], h[v as usize], self.k)
                .ok_or_else(|| Error::input("transpose: no walk of the right length"))?;
            for (x, &node) in nodes.iter().enumerate() {
                out[node as usize] = walk[x];
            }
        }
        Ok(out)
    }
    fn map_left(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap> {
        self.inner.map_left(a, b, f)
    }
    fn map_right(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap> {
        require_hom(a, b, f, "functorial image")?;
        Ok(f.to_vec())
    }
    fn directed_inputs(&self) -> bool {
        false
    }
}

/// `(Gamma_k, Omega_k)` on undirected graphs.
pub struct OmegaPair {
    k: usize,
}

impl OmegaPair {
    pub fn new(k: usize) -> Result<Self> {
        if k.is_multiple_of(2) {
            return Err(Error::param(format!("Omega needs an odd k, got {k}")));
        }
        Ok(OmegaPair { k })
    }
}

/// `levels[j][v]`: vertices at the end of a walk of exactly `j` arcs from `v`, as masks.
fn walk_levels(g: &Digraph, l: usize) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    let mut levels = vec![(0..n as u32).map(|v| 1u64 << v).collect::<Vec<_>>()];
    for _ in 0..l {
        let prev = levels.last().expect("level 0");
        let next = prev
            .iter()
            .map(|&m| {
                (0..n as u32)
                    .filter(|&u| m & (1 << u) != 0)
                    .fold(0u64, |acc, u| acc | set_mask(g.out_neighbors(u).iter().copied()))
            })
            .collect();
        levels.push(next);
    }
    levels
}

impl AdjointPair for OmegaPair {
    fn name(&self) -> String {
        format!("gamma:{0}/omega:{0}", self.k)
    }
    fn left(&self, g: &Digraph) -> Result<Digraph> {
        walk_power(g, self.k)
    }
    fn right(&self, g: &Digraph) -> Result<Digraph> {
        crate::functor::omega(g, self.k)
    }
    fn transpose_left(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap> {
        require_hom(&walk_power(i, self.k)?, g, h, "transpose")?;
        if i.vertex_count() > 64 {
            return Err(Error::SizeLimit {
                what: "walk level masks",
                size: i.vertex_count() as u128,
                cap: 64,
            });
        }
        let om = omega_labeled(g, self.k, DEFAULT_OMEGA_CAP)?;
        let l = (self.k - 1) / 2;
        let levels = walk_levels(i, l);
        (0..i.vertex_count())
            .map(|v| {
                let label = crate::functor::OmegaLabel {
                    a0: h[v],
                    sets: (1..=l).map(|j| image_mask(levels[j][v], h)).collect(),
                };
                om.index_of(&label)
                    .ok_or_else(|| Error::InternalConsistency("Omega label out of range".into()))
            })
            .collect()
    }
    fn transpose_right(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap> {
        let om = omega_labeled(g, self.k, DEFAULT_OMEGA_CAP)?;
        require_hom(i, &om.graph, h, "transpose")?;
        Ok(h.iter().map(|&x| om.labels[x as usize].a0).collect())
    }
    fn map_left(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap> {
        require_hom(a, b, f, "functorial image")?;
        Ok(f.to_vec())
    }
    fn map_right(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap> {
        require_hom(a, b, f, "functorial image")?;
        let oa = omega_labeled(a, self.k, DEFAULT_OMEGA_CAP)?;
        let ob = omega_labeled(b, self.k, DEFAULT_OMEGA_CAP)?;
        oa.labels
            .iter()
            .map(|lab| {
                let image = crate::functor::OmegaLabel {
                    a0: f[lab.a0 as usize],
                    sets: lab.sets.iter().map(|&s| image_mask(s, f)).collect(),
                };
                ob.index_of(&image)
                    .ok_or_else(|| Error::InternalConsistency("Omega label out of range".into()))
            })
            .collect()
    }
    fn directed_inputs(&self) -> bool {
        false
    }
}

/// `(delta, delta_R)`: the arc digraph and its right adjoint.
pub struct ArcPair;

impl AdjointPair for ArcPair {
    fn name(&self) -> String {
        "delta/deltaR".into()
    }
    fn left(&self, g: &Digraph) -> Result<Digraph> {
        arc_digraph(g)
    }
    fn right(&self, g: &Digraph) -> Result<Digraph> {
        crate::functor::arc_right_adjoint(g)
    }
    /// `v -> (h(arcs into v), h(arcs out of v))`.
    fn transpose_left(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap> {
        require_hom(&arc_digraph(i)?, g, h, "transpose")?;
        let dr = arc_right_adjoint_labeled(g, DEFAULT_DELTA_R_CAP)?;
        (0..i.vertex_count() as u32)
            .map(|v| {
                let s = set_mask(i.in_neighbors(v).iter().map(|&u| h[i.arc_index(u, v).expect("arc")]));
                let t = set_mask(i.out_neighbors(v).iter().map(|&w| h[i.arc_index(v, w).expect("arc")]));
                dr.index_of(s, t)
                    .ok_or_else(|| Error::InternalConsistency("pair is not a vertex".into()))
            })
            .collect()
    }
    /// `(u, v) -> min (T(h u) ∩ S(h v))`.
    fn transpose_right(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap> {
        let dr = arc_right_adjoint_labeled(g, DEFAULT_DELTA_R_CAP)?;
        require_hom(i, &dr.graph, h, "transpose")?;
        Ok(i.arcs()
            .iter()
            .map(|&(u, v)| {
                let t = dr.labels[h[u as usize] as usize].1;
                let s = dr.labels[h[v as usize] as usize].0;
                (t & s).trailing_zeros()
            })
            .collect())
    }
    fn map_left(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap> {
        require_hom(a, b, f, "functorial image")?;
        Ok(a.arcs()
            .iter()
            .map(|&(u, v)| b.arc_index(f[u as usize], f[v as usize]).expect("image arc") as u32)
            .collect())
    }
    fn map_right(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap> {
        require_hom(a, b, f, "functorial image")?;
        let da = arc_right_adjoint_labeled(a, DEFAULT_DELTA_R_CAP)?;
        let db = arc_right_adjoint_labeled(b, DEFAULT_DELTA_R_CAP)?;
        da.labels
            .iter()
            .map(|&(s, t)| {
                db.index_of(image_mask(s, f), image_mask(t, f))
                    .ok_or_else(|| Error::InternalConsistency("image pair is not a vertex".into()))
            })
            .collect()
    }
    /// Checked on the explicit map without building `delta_R delta G`.
    fn unit_holds(&self, g: &Digraph) -> Result<bool> {
        let d = arc_digraph(g)?;
        let ins: Vec<Vec<u32>> = (0..g.vertex_count() as u32)
            .map(|v| g.in_neighbors(v).iter().map(|&u| g.arc_index(u, v).unwrap() as u32).collect())
            .collect();
        let outs: Vec<Vec<u32>> = (0..g.vertex_count() as u32)
            .map(|v| g.out_neighbors(v).iter().map(|&w| g.arc_index(v, w).unwrap() as u32).collect())
            .collect();
        let pairs_ok = (0..g.vertex_count())
            .all(|v| ins[v].iter().all(|&e| outs[v].iter().all(|&f| d.has_arc(e, f))));
        let arcs_ok = g
            .arcs()
            .iter()
            .all(|&(u, v)| outs[u as usize].iter().any(|e| ins[v as usize].contains(e)));
        Ok(pairs_ok && arcs_ok)
    }
    /// Checked on the explicit map without building `delta delta_R H`: around every
    /// vertex `B`, the labels of incoming arcs times those of outgoing arcs lie in `E(H)`.
    fn counit_holds(&self, h: &Digraph) -> Result<bool> {
        let dr = arc_right_adjoint_labeled(h, DEFAULT_DELTA_R_CAP)?;
        let label = |a: u32, b: u32| {
            (dr.labels[a as usize].1 & dr.labels[b as usize].0).trailing_zeros()
        };
        Ok((0..dr.graph.vertex_count() as u32).all(|b| {
            let ins: Vec<u32> = dr.graph.in_neighbors(b).iter().map(|&a| label(a, b)).collect();
            let outs: Vec<u32> = dr.graph.out_neighbors(b).iter().map(|&c| label(b, c)).collect();
            ins.iter().all(|&x| outs.iter().all(|&y| h.has_arc(x, y)))
        }))
    }
}

/// `(sym, sub)`.
pub struct SymPair;

impl AdjointPair for SymPair {
    fn name(&self) -> String {
        "sym/sub".into()
    }
    fn left(&self, g: &Digraph) -> Result<Digraph> {
        Ok(sym(g))
    }
    fn right(&self, g: &Digraph) -> Result<Digraph> {
        Ok(sub(g))
    }
    fn transpose_left(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap> {
        require_hom(&sym(i), g, h, "transpose")?;
        Ok(h.to_vec())
    }
    fn transpose_right(&self, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap> {
        require_hom(i, &sub(g), h, "transpose")?;
        Ok(h.to_vec())
    }
    fn map_left(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap> {
        require_hom(a, b, f, "functorial image")?;
        Ok(f.to_vec())
    }
    fn map_right(&self, a: &Digraph, b: &Digraph, f: &[u32]) -> Result<VertexMap> {
        require_hom(a, b, f, "functorial image")?;
        Ok(f.to_vec())
    }
}

/// The adjoint pair whose left adjoint is the given step.
pub fn pair_for(step: &FunctorTag) -> Result<Box<dyn AdjointPair>> {
    Ok(match step {
        FunctorTag::Subdivide(k) => Box::new(SubdivisionPair::new(*k)?),
        FunctorTag::WalkPower(k) => Box::new(OmegaPair::new(*k)?),
        FunctorTag::ArcDigraph => Box::new(ArcPair),
        FunctorTag::Sym => Box::new(SymPair),
        FunctorTag::Gadget(phi) => Box::new(GadgetPair { phi: phi.clone() }),
        other => return Err(Error::param(format!("{other} is not a left adjoint here"))),
    })
}

/// The pairs covered by the standard sweep, with their default sample bound.
pub fn standard_pairs() -> Vec<(Box<dyn AdjointPair>, usize)> {
    vec![
        (Box::new(SubdivisionPair::new(3).expect("odd")), 5),
        (Box::new(OmegaPair::new(3).expect("odd")), 4),
        (Box::new(ArcPair), 5),
        (Box::new(SymPair), 5),
        (Box::new(GadgetPair { phi: PPFormula::path(3) }), 5),
        (Box::new(GadgetPair { phi: PPFormula::arc_pair() }), 5),
        (Box::new(GadgetPair { phi: PPFormula::cospan() }), 5),
    ]
}

/// Given `h: step(I) -> G`, the homomorphism `I -> R G` from the adjunction.
pub fn pull_back_hom(step: &FunctorTag, i: &Digraph, g: &Digraph, h: &[u32]) -> Result<VertexMap> {
    pair_for(step)?.transpose_left(i, g, h)
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointCounterexample {
    pub sample: usize,
    pub check: String,
    pub detail: String,
    pub h: GraphRecord,
    pub g: GraphRecord,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FactFailures {
    pub iff: usize,
    pub converters: usize,
    pub unit: usize,
    pub counit: usize,
    pub monotone: usize,
    pub disjoint_union: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointReport {
    pub pair: String,
    pub samples: usize,
    pub max_vertices: usize,
    pub seed: u64,
    pub checked: usize,
    pub skipped: usize,
    /// Samples where both sides of the equivalence held.
    pub both_hold: usize,
    pub failures: FactFailures,
    pub counterexamples: Vec<AdjointCounterexample>,
}

impl AdjointReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

enum Outcome {
    Skipped,
    Checked {
        both: bool,
        failures: Vec<(&'static str, String)>,
    },
}

const EDGE_PROBABILITIES: [f64; 3] = [0.3, 0.5, 0.7];

/// The `index`-th sampled pair `(H, G)` for a seed.
pub fn sample_pair(seed: u64, index: usize, max_vertices: usize, directed: bool) -> (Digraph, Digraph) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let one = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(1..=max_vertices.max(1));
        let p = *EDGE_PROBABILITIES.choose(rng).expect("nonempty");
        random_graph(rng, n, p, directed)
    };
    let h = one(&mut rng);
    let g = one(&mut rng);
    (h, g)
}

fn check_sample(pair: &dyn AdjointPair, h: &Digraph, g: &Digraph) -> Result<(bool, Vec<(&'static str, String)>)> {
    let mut fails = Vec::new();
    let lh = pair.left(h)?;
    let rg = pair.right(g)?;
    let forward = find_hom(&lh, g)?;
    let backward = find_hom(h, &rg)?;
    if forward.is_some() != backward.is_some() {
        fails.push((
            "iff",
            format!("L H -> G is {}, H -> R G is {}", forward.is_some(), backward.is_some()),
        ));
    }
    if let Some(a) = &forward {
        let t = pair.transpose_left(h, g, a)?;
        if !is_hom(h, &rg, &t) {
            fails.push(("converters", "transpose of L H -> G is not a homomorphism".into()));
        } else if !is_hom(&lh, g, &pair.transpose_right(h, g, &t)?) {
            fails.push(("converters", "round trip from L H -> G fails".into()));
        }
    }
    if let Some(b) = &backward {
        let t = pair.transpose_right(h, g, b)?;
        if !is_hom(&lh, g, &t) {
            fails.push(("converters", "transpose of H -> R G is not a homomorphism".into()));
        } else if !is_hom(h, &rg, &pair.transpose_left(h, g, &t)?) {
            fails.push(("converters", "round trip from H -> R G fails".into()));
        }
    }
    if !pair.unit_holds(h)? {
        fails.push(("unit", "H -> R L H fails".into()));
    }
    if !pair.counit_holds(g)? {
        fails.push(("counit", "L R G -> G fails".into()));
    }
    let union = disjoint_union(h, g);
    let (b, f) = match find_hom(h, g)? {
        Some(f) => (g.clone(), f),
        None => (union.clone(), (0..h.vertex_count() as u32).collect()),
    };
    if !is_hom(&lh, &pair.left(&b)?, &pair.map_left(h, &b, &f)?) {
        fails.push(("monotone", "image under L is not a homomorphism".into()));
    }
    if !is_hom(&pair.right(h)?, &pair.right(&b)?, &pair.map_right(h, &b, &f)?) {
        fails.push(("monotone", "image under R is not a homomorphism".into()));
    }
    if !hom_equivalent(&pair.left(&union)?, &disjoint_union(&lh, &pair.left(g)?))? {
        fails.push(("disjoint_union", "L (H + G) is not equivalent to L H + L G".into()));
    }
    Ok((forward.is_some() && backward.is_some(), fails))
}

/// Samples `samples` pairs `(H, G)` with at most `max_vertices` vertices each and checks
/// the equivalence, both converters, unit, counit, monotonicity and disjoint unions.
/// Samples that hit a size cap are skipped and counted.
pub fn check_adjoint(
    pair: &dyn AdjointPair,
    samples: usize,
    max_vertices: usize,
    seed: u64,
    exec: Exec,
) -> AdjointReport {
    let directed = pair.directed_inputs();
    let outcomes = exec.map_range(samples, |idx| {
        let (h, g) = sample_pair(seed, idx, max_vertices, directed);
        let outcome = match check_sample(pair, &h, &g) {
            Ok((both, failures)) => Outcome::Checked { both, failures },
            Err(Error::SizeLimit { .. }) => Outcome::Skipped,
            Err(e) => Outcome::Checked {
                both: false,
                failures: vec![("converters", format!("error: {e}"))],
            },
        };
        (h, g, outcome)
    });
    let mut report = AdjointReport {
        pair: pair.name(),
        samples,
        max_vertices,
        seed,
        checked: 0,
        skipped: 0,
        both_hold: 0,
        failures: FactFailures::default(),
        counterexamples: Vec::new(),
    };
    for (idx, (h, g, outcome)) in outcomes.into_iter().enumerate() {
        match outcome {
            Outcome::Skipped => report.skipped += 1,
            Outcome::Checked { both, failures } => {
                report.checked += 1;
                report.both_hold += both as usize;
                for (check, detail) in failures {
                    let slot = match check {
                        "iff" => &mut report.failures.iff,
                        "converters" => &mut report.failures.converters,
                        "unit" => &mut report.failures.unit,
                        "counit" => &mut report.failures.counit,
                        "monotone" => &mut report.failures.monotone,
                        _ => &mut report.failures.disjoint_union,
                    };
                    *slot += 1;
                    report.counterexamples.push(AdjointCounterexample {
                        sample: idx,
                        check: check.into(),
                        detail,
                        h: h.record(),
                        g: g.record(),
                    });
                }
            }
        }
    }
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaAttempt {
    pub k: usize,
    /// `Some(true/false)` when decided, `None` when `Omega_k H` exceeded the cap.
    pub hom: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaSearch {
    /// Least odd `k` with `Omega_k H -> G` among those tried.
    pub k: Option<usize>,
    pub cap_k: usize,
    pub attempts: Vec<OmegaAttempt>,
}

/// Tries `k = 1, 3, ..., cap_k` in order and stops at the first `Omega_k H -> G`.
pub fn min_odd_k_omega_hom(h: &Digraph, g: &Digraph, cap_k: usize, omega_cap: u128) -> Result<OmegaSearch> {
    let mut attempts = Vec::new();
    for k in (1..=cap_k).step_by(2) {
        let hom = match omega_labeled(h, k, omega_cap) {
            Ok(om) => Some(find_hom(&om.graph, g)?.is_some()),
            Err(Error::SizeLimit { .. }) => None,
            Err(e) => return Err(e),
        };
        attempts.push(OmegaAttempt { k, hom });
        if hom == Some(true) {
            return Ok(OmegaSearch {
                k: Some(k),
                cap_k,
                attempts,
            });
        }
    }
    Ok(OmegaSearch {
        k: None,
        cap_k,
        attempts,
    })
}
