//! Graph functors: subdivision, walk powers, the `Omega` construction, arc digraphs
//! and their right adjoint, symmetrisation, and gadget (pp-formula) constructions.

use crate::graph::{parse_text, tuple_count, tuple_from_index, tuple_index};
use crate::hom::{hom_iter, is_hom, HomSolver};
use crate::{Digraph, Error, Result};
use fixedbitset::FixedBitSet;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_OMEGA_CAP: u128 = 100_000;
pub const DEFAULT_DELTA_R_CAP: u128 = 100_000;
pub const DEFAULT_PP_CAP: u128 = 100_000;
const ARC_CAP: u128 = 50_000_000;
const GADGET_HOM_CAP: usize = 2_000_000;

fn require_undirected(g: &Digraph, what: &str) -> Result<()> {
    if g.is_undirected() {
        Ok(())
    } else {
        Err(Error::input(format!("{what} needs an undirected graph")))
    }
}

fn require_odd(k: usize, what: &str) -> Result<()> {
    if k % 2 == 1 {
        Ok(())
    } else {
        Err(Error::param(format!("{what} needs an odd k, got {k}")))
    }
}

fn mask_of(set: impl IntoIterator<Item = u32>) -> u64 {
    set.into_iter().fold(0, |m, v| m | 1 << v)
}

fn ones(mask: u64) -> impl Iterator<Item = u32> {
    (0..64).filter(move |&i| mask & (1 << i) != 0)
}

/// Every subset of `upper` that contains `lower`, in increasing order.
fn between(lower: u64, upper: u64) -> Vec<u64> {
    if lower & !upper != 0 {
        return Vec::new();
    }
    let free = upper & !lower;
    let mut out = Vec::with_capacity(1 << free.count_ones());
    let mut sub = 0u64;
    loop {
        out.push(lower | sub);
        if sub == free {
            break;
        }
        sub = (sub.wrapping_sub(free)) & free;
    }
    out.sort_unstable();
    out
}

fn common_out(g: &Digraph, set: u64) -> u64 {
    let all = if g.vertex_count() == 64 {
        u64::MAX
    } else {
        (1u64 << g.vertex_count()) - 1
    };
    ones(set).fold(all, |acc, u| acc & mask_of(g.out_neighbors(u).iter().copied()))
}

fn small_graph(g: &Digraph, what: &str) -> Result<()> {
    if g.vertex_count() > 64 {
        return Err(Error::SizeLimit {
            what: if what == "omega" {
                "Omega input vertex set"
            } else {
                "right adjoint input vertex set"
            },
            size: g.vertex_count() as u128,
            cap: 64,
        });
    }
    Ok(())
}

/// The `k`-subdivision: every edge `{u,v}` with `u <= v` becomes a path of `k` edges
/// through `k - 1` new vertices, numbered after the originals in edge order. A loop
/// becomes a closed walk of length `k`.
pub fn subdivide(g: &Digraph, k: usize) -> Result<Digraph> {
    require_undirected(g, "subdivision")?;
    require_odd(k, "subdivision")?;
    let n = g.vertex_count();
    let edges: Vec<(u32, u32)> = g.edges().collect();
    let total = n + edges.len() * (k - 1);
    let mut out = Vec::new();
    let mut next = n as u32;
    for &(u, v) in &edges {
        let mut prev = u;
        for _ in 1..k {
            out.push((prev, next));
            prev = next;
            next += 1;
        }
        out.push((prev, v));
    }
    Digraph::undirected(total, out)
}

/// `u -> v` when some walk of exactly `k` arcs leads from `u` to `v`.
pub fn walk_power(g: &Digraph, k: usize) -> Result<Digraph> {
    if k == 0 {
        return Err(Error::param("walk power needs k >= 1"));
    }
    let n = g.vertex_count();
    let adj: Vec<FixedBitSet> = (0..n as u32)
        .map(|u| {
            let mut b = FixedBitSet::with_capacity(n);
            for &v in g.out_neighbors(u) {
                b.insert(v as usize);
            }
            b
        })
        .collect();
    let mut reach = adj.clone();
    for _ in 1..k {
        reach = reach
            .iter()
            .map(|row| {
                let mut next = FixedBitSet::with_capacity(n);
                for w in row.ones() {
                    next.union_with(&adj[w]);
                }
                next
            })
            .collect();
    }
    let arcs = reach
        .iter()
        .enumerate()
        .flat_map(|(u, row)| row.ones().map(move |v| (u as u32, v as u32)));
    Digraph::new(n, arcs.collect::<Vec<_>>())
}

/// Vertex labels of `Omega_k G`: the singleton `A_0 = {a0}` and the sets `A_1..A_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaLabel {
    pub a0: u32,
    pub sets: Vec<u64>,
}

/// `Omega_k G` with its vertex labels.
#[derive(Clone, Debug)]
pub struct Omega {
    pub graph: Digraph,
    pub labels: Vec<OmegaLabel>,
    n: usize,
}

impl Omega {
    pub fn index_of(&self, label: &OmegaLabel) -> Option<u32> {
        let l = label.sets.len();
        let width = self.n * l;
        let mut idx = (label.a0 as u128) << width;
        for (i, &s) in label.sets.iter().enumerate() {
            idx |= (s as u128) << (self.n * (l - 1 - i));
        }
        let idx = idx as usize;
        (idx < self.labels.len() && self.labels[idx] == *label).then_some(idx as u32)
    }
}

pub fn omega(g: &Digraph, k: usize) -> Result<Digraph> {
    Ok(omega_labeled(g, k, DEFAULT_OMEGA_CAP)?.graph)
}

/// Vertices are tuples `(A_0, ..., A_l)` with `k = 2l + 1` and `A_0` a singleton.
/// `A -> B` when `A_i ⊆ B_{i+1}` and `B_i ⊆ A_{i+1}` for `i < l`, and `A_l x B_l ⊆ E`.
pub fn omega_labeled(g: &Digraph, k: usize, cap: u128) -> Result<Omega> {
    require_undirected(g, "Omega")?;
    require_odd(k, "Omega")?;
    small_graph(g, "omega")?;
    let n = g.vertex_count();
    let l = (k - 1) / 2;
    let size = (n as u128).saturating_mul(1u128.checked_shl((n * l) as u32).unwrap_or(u128::MAX));
    Error::check_cap("Omega vertex set", size, cap)?;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut labels = Vec::with_capacity(size as usize);
    let per = 1usize << (n * l);
    for a0 in 0..n as u32 {
        for rest in 0..per {
            let sets = (0..l)
                .map(|i| ((rest >> (n * (l - 1 - i))) as u64) & full)
                .collect();
            labels.push(OmegaLabel { a0, sets });
        }
    }
    let mut omega = Omega {
        graph: Digraph::empty(0),
        labels,
        n,
    };
    let mut arcs = Vec::new();
    for (ai, a) in omega.labels.iter().enumerate() {
        let seq = |lab: &OmegaLabel, i: usize| {
            if i == 0 {
                1u64 << lab.a0
            } else {
                lab.sets[i - 1]
            }
        };
        if l == 0 {
            for &b in g.out_neighbors(a.a0) {
                arcs.push((ai as u32, b));
            }
            continue;
        }
        // B_0 ⊆ A_1, A_{i-1} ⊆ B_i ⊆ A_{i+1}, A_{l-1} ⊆ B_l ⊆ common neighbours of A_l
        let choices: Vec<Vec<u64>> = (1..=l)
            .map(|i| {
                let lower = seq(a, i - 1);
                let upper = if i < l { seq(a, i + 1) } else { common_out(g, seq(a, l)) };
                between(lower, upper)
            })
            .collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        for b0 in ones(seq(a, 1)) {
            let mut pick = vec![0usize; l];
            loop {
                let b = OmegaLabel {
                    a0: b0,
                    sets: pick.iter().enumerate().map(|(i, &p)| choices[i][p]).collect(),
                };
                arcs.push((ai as u32, omega.index_of(&b).expect("label in range")));
                let mut i = l;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    pick[i] += 1;
                    if pick[i] < choices[i].len() {
                        break;
                    }
                    pick[i] = 0;
                }
                if pick.iter().all(|&p| p == 0) {
                    break;
                }
            }
        }
        Error::check_cap("Omega arc set", arcs.len() as u128, ARC_CAP)?;
    }
    omega.graph = Digraph::new(omega.labels.len(), arcs)?;
    Ok(omega)
}

/// The arc digraph: vertices are arcs (by index), with `(u,v) -> (v,w)`.
pub fn arc_digraph(g: &Digraph) -> Result<Digraph> {
    let mut arcs = Vec::new();
    for (i, &(_, v)) in g.arcs().iter().enumerate() {
        for &w in g.out_neighbors(v) {
            let j = g.arc_index(v, w).expect("out-neighbour arc");
            arcs.push((i as u32, j as u32));
        }
        Error::check_cap("arc digraph arc set", arcs.len() as u128, ARC_CAP)?;
    }
    Digraph::new(g.arc_count(), arcs)
}

/// The right adjoint of the arc digraph, with vertex labels `(S, T)` as bit masks.
#[derive(Clone, Debug)]
pub struct DeltaR {
    pub graph: Digraph,
    pub labels: Vec<(u64, u64)>,
    index: HashMap<(u64, u64), u32>,
}

impl DeltaR {
    pub fn index_of(&self, s: u64, t: u64) -> Option<u32> {
        self.index.get(&(s, t)).copied()
    }
}

pub fn arc_right_adjoint(g: &Digraph) -> Result<Digraph> {
    Ok(arc_right_adjoint_labeled(g, DEFAULT_DELTA_R_CAP)?.graph)
}

/// Vertices are pairs `(S, T)` with `S x T ⊆ E`, including `(∅, ∅)`, ordered by
/// `(S, T)` as bit masks. `(S,T) -> (S',T')` when `T` meets `S'`.
pub fn arc_right_adjoint_labeled(g: &Digraph, cap: u128) -> Result<DeltaR> {
    small_graph(g, "deltaR")?;
    let n = g.vertex_count();
    if n > 24 {
        return Err(Error::SizeLimit {
            what: "right adjoint input vertex set",
            size: n as u128,
            cap: 24,
        });
    }
    let mut labels = Vec::new();
    for s in 0u64..(1 << n) {
        let allowed = common_out(g, s);
        let count = 1u128 << allowed.count_ones();
        Error::check_cap("right adjoint vertex set", labels.len() as u128 + count, cap)?;
        for t in between(0, allowed) {
            labels.push((s, t));
        }
    }
    let index: HashMap<(u64, u64), u32> = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i as u32))
        .collect();
    let mut by_element: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, &(s, _)) in labels.iter().enumerate() {
        for x in ones(s) {
            by_element[x as usize].push(i as u32);
        }
    }
    let mut arcs = Vec::new();
    let mut mark = vec![false; labels.len()];
    for (i, &(_, t)) in labels.iter().enumerate() {
        let mut heads = Vec::new();
        for x in ones(t) {
            for &j in &by_element[x as usize] {
                if !mark[j as usize] {
                    mark[j as usize] = true;
                    heads.push(j);
                }
            }
        }
        for &j in &heads {
            mark[j as usize] = false;
            arcs.push((i as u32, j));
        }
        Error::check_cap("right adjoint arc set", arcs.len() as u128, ARC_CAP)?;
    }
    Ok(DeltaR {
        graph: Digraph::new(labels.len(), arcs)?,
        labels,
        index,
    })
}

/// Symmetric closure.
pub fn sym(g: &Digraph) -> Digraph {
    g.underlying()
}

/// Largest symmetric subgraph: arcs whose reverse is also an arc.
pub fn sub(g: &Digraph) -> Digraph {
    let arcs: Vec<(u32, u32)> = g
        .arcs()
        .iter()
        .copied()
        .filter(|&(u, v)| g.has_arc(v, u))
        .collect();
    Digraph::from_sorted(g.vertex_count(), arcs)
}

/// A primitive positive formula `phi(x_1..x_n, y_1..y_n)` given by its gadget
/// digraph and the positions of the distinguished variables (which may coincide).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPFormula {
    pub gadget: Digraph,
    pub xs: Vec<u32>,
    pub ys: Vec<u32>,
    swap: Option<Vec<u32>>,
}

impl PPFormula {
    pub fn new(gadget: Digraph, xs: Vec<u32>, ys: Vec<u32>) -> Result<Self> {
        if xs.is_empty() || xs.len() != ys.len() {
            return Err(Error::param("need as many x as y variables, at least one"));
        }
        let n = gadget.vertex_count() as u32;
        if xs.iter().chain(&ys).any(|&v| v >= n) {
            return Err(Error::param("distinguished variable outside the gadget"));
        }
        let swap = find_swap(&gadget, &xs, &ys)?;
        Ok(PPFormula {
            gadget,
            xs,
            ys,
            swap,
        })
    }

    pub fn arity(&self) -> usize {
        self.xs.len()
    }

    /// An automorphism exchanging `x_i` and `y_i` exists.
    pub fn is_symmetric(&self) -> bool {
        self.swap.is_some()
    }

    pub fn swap_automorphism(&self) -> Option<&[u32]> {
        self.swap.as_deref()
    }

    /// Graph text followed by `x <v...>` and `y <v...>` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut graph_lines = String::new();
        let mut xs = None;
        let mut ys = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let mut words = line.split_whitespace();
            let target = match words.next() {
                Some("x") => &mut xs,
                Some("y") => &mut ys,
                _ => {
                    graph_lines.push_str(raw);
                    graph_lines.push('\n');
                    continue;
                }
            };
            let vals = words
                .map(|w| w.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: "bad variable position".into(),
                })?;
            *target = Some(vals);
        }
        let gadget = parse_text(&graph_lines)?;
        let missing = |what: &str| Error::Parse {
            line: 0,
            msg: format!("missing `{what}` line"),
        };
        Self::new(gadget, xs.ok_or_else(|| missing("x"))?, ys.ok_or_else(|| missing("y"))?)
    }

    pub fn to_text(&self) -> String {
        let mut s = crate::graph::to_text(&self.gadget);
        let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        s.push_str(&format!("x {}\ny {}\n", join(&self.xs), join(&self.ys)));
        s
    }

    /// The path with `k` edges, `x` at one end and `y` at the other.
    pub fn path(k: usize) -> Self {
        Self::new(crate::graph::path(k), vec![0], vec![k as u32]).expect("path gadget")
    }

    /// `x_1 -> x_2 = y_1 -> y_2`, the gadget of the arc digraph.
    pub fn arc_pair() -> Self {
        let g = Digraph::new(3, [(0, 1), (1, 2)]).expect("arc pair");
        Self::new(g, vec![0, 1], vec![1, 2]).expect("arc pair gadget")
    }

    /// `x -> z <- y`.
    pub fn cospan() -> Self {
        let g = Digraph::new(3, [(0, 2), (1, 2)]).expect("cospan");
        Self::new(g, vec![0], vec![1]).expect("cospan gadget")
    }

    fn pins(&self, a: &[u32], b: &[u32]) -> Option<Vec<(u32, u32)>> {
        let mut fixed: HashMap<u32, u32> = HashMap::new();
        let pairs = self.xs.iter().zip(a).chain(self.ys.iter().zip(b));
        for (&var, &val) in pairs {
            if *fixed.entry(var).or_insert(val) != val {
                return None;
            }
        }
        let mut pins: Vec<(u32, u32)> = fixed.into_iter().collect();
        pins.sort_unstable();
        Some(pins)
    }
}

fn find_swap(gadget: &Digraph, xs: &[u32], ys: &[u32]) -> Result<Option<Vec<u32>>> {
    let mut pins: Vec<(u32, u32)> = xs.iter().zip(ys).map(|(&x, &y)| (x, y)).collect();
    pins.extend(ys.iter().zip(xs).map(|(&y, &x)| (y, x)));
    let solver = HomSolver::new(gadget)?;
    let doms = match solver.pinned_domains(gadget, &pins) {
        Ok(d) => d,
        Err(_) => return Ok(None),
    };
    let n = gadget.vertex_count();
    Ok(solver.iter(gadget, Some(doms)).find(|h| {
        let distinct: BTreeSet<u32> = h.iter().copied().collect();
        distinct.len() == n
    }))
}

impl fmt::Display for PPFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pp[{} vertices, {} arcs, x={:?}, y={:?}]",
            self.gadget.vertex_count(),
            self.gadget.arc_count(),
            self.xs,
            self.ys
        )
    }
}

/// Result of gadget replacement with the position of every vertex and copy.
#[derive(Clone, Debug)]
pub struct GadgetLayout {
    pub graph: Digraph,
    /// `vertex_nodes[v][i]` is the vertex `v_i`.
    pub vertex_nodes: Vec<Vec<u32>>,
    /// One gadget copy per arc (or per edge `u <= v` in the symmetric case), with the
    /// output vertex of each gadget vertex.
    pub copies: Vec<((u32, u32), Vec<u32>)>,
    /// Whether copies were placed per undirected edge.
    pub per_edge: bool,
}

pub fn gadget_replace(g: &Digraph, phi: &PPFormula) -> Result<Digraph> {
    Ok(gadget_layout(g, phi)?.graph)
}

/// Replaces each vertex by `n` copies and each arc `(u,v)` by a fresh copy of the
/// gadget whose `x_i` is identified with `u_i` and `y_i` with `v_i`. Undirected
/// inputs with a symmetric formula get one copy per edge.
pub fn gadget_layout(g: &Digraph, phi: &PPFormula) -> Result<GadgetLayout> {
    let n = phi.arity();
    let nv = g.vertex_count();
    let j = phi.gadget.vertex_count();
    let per_edge = g.is_undirected() && phi.is_symmetric();
    let copies: Vec<(u32, u32)> = if per_edge {
        g.edges().collect()
    } else {
        g.arcs().to_vec()
    };
    let total = nv * n + copies.len() * j;
    Error::check_cap("gadget replacement node set", total as u128, ARC_CAP)?;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            parent[hi] = lo;
        }
    };
    let vnode = |v: u32, i: usize| v as usize * n + i;
    let cnode = |c: usize, x: u32| nv * n + c * j + x as usize;
    for (c, &(u, v)) in copies.iter().enumerate() {
        for i in 0..n {
            union(&mut parent, cnode(c, phi.xs[i]), vnode(u, i));
            union(&mut parent, cnode(c, phi.ys[i]), vnode(v, i));
        }
    }
    let mut label = vec![u32::MAX; total];
    let mut next = 0u32;
    let relabel: Vec<u32> = (0..total)
        .map(|node| {
            let r = find(&mut parent, node);
            if label[r] == u32::MAX {
                label[r] = next;
                next += 1;
            }
            label[r]
        })
        .collect();
    let mut arcs = Vec::new();
    for c in 0..copies.len() {
        for &(a, b) in phi.gadget.arcs() {
            arcs.push((relabel[cnode(c, a)], relabel[cnode(c, b)]));
        }
    }
    let graph = Digraph::new(next as usize, arcs)?;
    let vertex_nodes = (0..nv as u32)
        .map(|v| (0..n).map(|i| relabel[vnode(v, i)]).collect())
        .collect();
    let copies = copies
        .iter()
        .enumerate()
        .map(|(c, &e)| (e, (0..j as u32).map(|x| relabel[cnode(c, x)]).collect()))
        .collect();
    Ok(GadgetLayout {
        graph,
        vertex_nodes,
        copies,
        per_edge,
    })
}

pub fn pp_power(g: &Digraph, phi: &PPFormula) -> Result<Digraph> {
    pp_power_capped(g, phi, DEFAULT_PP_CAP)
}

/// Vertices are `n`-tuples of vertices of `G` in lexicographic order; `a -> b` when
/// the gadget maps to `G` with `x_i -> a_i` and `y_i -> b_i`.
pub fn pp_power_capped(g: &Digraph, phi: &PPFormula, cap: u128) -> Result<Digraph> {
    let n = phi.arity();
    let base = g.vertex_count();
    let size = tuple_count(base, n).unwrap_or(u128::MAX);
    Error::check_cap("pp-power vertex set", size, cap)?;
    let mut arcs = BTreeSet::new();
    let mut enumerated = true;
    let mut count = 0usize;
    for h in hom_iter(&phi.gadget, g)? {
        count += 1;
        if count > GADGET_HOM_CAP {
            enumerated = false;
            break;
        }
        let a: Vec<u32> = phi.xs.iter().map(|&x| h[x as usize]).collect();
        let b: Vec<u32> = phi.ys.iter().map(|&y| h[y as usize]).collect();
        arcs.insert((tuple_index(&a, base) as u32, tuple_index(&b, base) as u32));
    }
    if !enumerated {
        arcs.clear();
        let solver = HomSolver::new(g)?;
        for ai in 0..size as usize {
            let a = tuple_from_index(ai, base, n);
            for bi in 0..size as usize {
                let b = tuple_from_index(bi, base, n);
                if pp_satisfiable_with(&solver, phi, &a, &b)? {
                    arcs.insert((ai as u32, bi as u32));
                }
            }
        }
    }
    Ok(Digraph::from_sorted(size as usize, arcs.into_iter().collect()))
}

/// Whether `phi(a, b)` holds in `G`, with a witnessing gadget homomorphism.
pub fn pp_witness(g: &Digraph, phi: &PPFormula, a: &[u32], b: &[u32]) -> Result<Option<Vec<u32>>> {
    let solver = HomSolver::new(g)?;
    pp_witness_with(&solver, phi, a, b)
}

pub(crate) fn pp_witness_with(
    solver: &HomSolver,
    phi: &PPFormula,
    a: &[u32],
    b: &[u32],
) -> Result<Option<Vec<u32>>> {
    let Some(pins) = phi.pins(a, b) else {
        return Ok(None);
    };
    let doms = solver.pinned_domains(&phi.gadget, &pins)?;
    Ok(solver.find(&phi.gadget, Some(doms)))
}

fn pp_satisfiable_with(solver: &HomSolver, phi: &PPFormula, a: &[u32], b: &[u32]) -> Result<bool> {
    Ok(pp_witness_with(solver, phi, a, b)?.is_some())
}

/// One step of a functor pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorTag {
    Subdivide(usize),
    WalkPower(usize),
    Omega(usize),
    ArcDigraph,
    ArcRightAdjoint,
    Sym,
    Sub,
    Gadget(PPFormula),
    PpPower(PPFormula),
}

impl FunctorTag {
    pub fn apply(&self, g: &Digraph) -> Result<Digraph> {
        match self {
            FunctorTag::Subdivide(k) => subdivide(g, *k),
            FunctorTag::WalkPower(k) => walk_power(g, *k),
            FunctorTag::Omega(k) => omega(g, *k),
            FunctorTag::ArcDigraph => arc_digraph(g),
            FunctorTag::ArcRightAdjoint => arc_right_adjoint(g),
            FunctorTag::Sym => Ok(sym(g)),
            FunctorTag::Sub => Ok(sub(g)),
            FunctorTag::Gadget(phi) => gadget_replace(g, phi),
            FunctorTag::PpPower(phi) => pp_power(g, phi),
        }
    }

    /// The right adjoint of this step, when it is a left adjoint.
    pub fn right_adjoint(&self) -> Option<FunctorTag> {
        Some(match self {
            FunctorTag::Subdivide(k) => FunctorTag::WalkPower(*k),
            FunctorTag::WalkPower(k) => FunctorTag::Omega(*k),
            FunctorTag::ArcDigraph => FunctorTag::ArcRightAdjoint,
            FunctorTag::Sym => FunctorTag::Sub,
            FunctorTag::Gadget(phi) => FunctorTag::PpPower(phi.clone()),
            FunctorTag::Omega(_) | FunctorTag::ArcRightAdjoint | FunctorTag::Sub | FunctorTag::PpPower(_) => {
                return None
            }
        })
    }

    /// Maps a homomorphism `I -> J` to one `F(I) -> F(J)`, for the steps whose
    /// action on homomorphisms is direct.
    pub fn map_hom(&self, i: &Digraph, j: &Digraph, h: &[u32]) -> Result<Vec<u32>> {
        if !is_hom(i, j, h) {
            return Err(Error::param("functorial image needs a homomorphism"));
        }
        match self {
            FunctorTag::WalkPower(_) | FunctorTag::Sym | FunctorTag::Sub => Ok(h.to_vec()),
            FunctorTag::ArcDigraph => Ok(i
                .arcs()
                .iter()
                .map(|&(u, v)| {
                    j.arc_index(h[u as usize], h[v as usize]).expect("image arc") as u32
                })
                .collect()),
            other => Err(Error::Unsupported(format!("functorial image of {other}"))),
        }
    }
}

impl fmt::Display for FunctorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorTag::Subdivide(k) => write!(f, "lambda:{k}"),
            FunctorTag::WalkPower(k) => write!(f, "gamma:{k}"),
            FunctorTag::Omega(k) => write!(f, "omega:{k}"),
            FunctorTag::ArcDigraph => write!(f, "delta"),
            FunctorTag::ArcRightAdjoint => write!(f, "deltaR"),
            FunctorTag::Sym => write!(f, "sym"),
            FunctorTag::Sub => write!(f, "sub"),
            FunctorTag::Gadget(phi) => write!(f, "gadget:{phi}"),
            FunctorTag::PpPower(phi) => write!(f, "pppower:{phi}"),
        }
    }
}

/// Built-in gadget names accepted after `gadget:` and `pppower:`.
pub fn builtin_formula(name: &str) -> Option<PPFormula> {
    match name {
        "arcpair" => Some(PPFormula::arc_pair()),
        "cospan" => Some(PPFormula::cospan()),
        _ => name
            .strip_prefix("path")
            .and_then(|k| k.parse().ok())
            .filter(|&k: &usize| k >= 1)
            .map(PPFormula::path),
    }
}

fn parse_formula(arg: &str) -> Result<PPFormula> {
    if let Some(path) = arg.strip_prefix('@') {
        return PPFormula::parse(&std::fs::read_to_string(path)?);
    }
    builtin_formula(arg).ok_or_else(|| Error::param(format!("unknown gadget `{arg}`")))
}

impl FromStr for FunctorTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let k = || -> Result<usize> {
            arg.ok_or_else(|| Error::param(format!("`{name}` needs `:k`")))?
                .parse()
                .map_err(|_| Error::param(format!("bad parameter in `{s}`")))
        };
        let formula = || parse_formula(arg.ok_or_else(|| Error::param(format!("`{name}` needs a gadget")))?);
        let no_arg = |tag: FunctorTag| {
            if arg.is_some() {
                Err(Error::param(format!("`{name}` takes no parameter")))
            } else {
                Ok(tag)
            }
        };
        match name {
            "lambda" => Ok(FunctorTag::Subdivide(k()?)),
            "gamma" => Ok(FunctorTag::WalkPower(k()?)),
            "omega" => Ok(FunctorTag::Omega(k()?)),
            "delta" => no_arg(FunctorTag::ArcDigraph),
            "deltaR" => no_arg(FunctorTag::ArcRightAdjoint),
            "sym" => no_arg(FunctorTag::Sym),
            "sub" => no_arg(FunctorTag::Sub),
            "gadget" => Ok(FunctorTag::Gadget(formula()?)),
            "pppower" => Ok(FunctorTag::PpPower(formula()?)),
            _ => Err(Error::param(format!("unknown functor `{name}`"))),
        }
    }
}

/// Parses a comma-separated pipeline such as `sym,delta,gamma:3`.
pub fn parse_pipeline(s: &str) -> Result<Vec<FunctorTag>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse())
        .collect()
}

/// Applies the steps left to right.
pub fn apply_pipeline(g: &Digraph, steps: &[FunctorTag]) -> Result<Digraph> {
    let mut cur = g.clone();
    for (i, step) in steps.iter().enumerate() {
        cur = step.apply(&cur).map_err(|e| Error::Pipeline {
            step: i,
            tag: step.to_string(),
            source: Box::new(e),
        })?;
    }
    Ok(cur)
}

/// The right adjoint of a pipeline of left adjoints: the adjoints of the steps,
/// applied in reverse order.
pub fn right_adjoint_pipeline(steps: &[FunctorTag]) -> Result<Vec<FunctorTag>> {
    steps
        .iter()
        .rev()
        .map(|s| {
            s.right_adjoint()
                .ok_or_else(|| Error::param(format!("{s} has no right adjoint here")))
        })
        .collect()
}
