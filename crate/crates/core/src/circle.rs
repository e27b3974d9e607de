//! Equivariant maps from box complexes to the circle, exact winding numbers and
//! the degree vectors they induce on polymorphisms.
//!
//! Angles are exact rationals measured in turns, in `[0, 1)`.

use crate::complex::{box_complex, generator_loop_from, is_face, mu1};
use crate::exec::Exec;
use crate::graph::{circular_clique, is_square_free};
use crate::hom::{is_hom, shortest_odd_closed_walk, OddWalk};
use crate::minion::{enumerate_polymorphisms, LinearFn, Polymorphism};
use crate::{Digraph, Error, Result};
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

pub type Turn = Rational64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepRule {
    /// Consecutive images are joined by the shorter arc.
    ShorterArc,
    /// Images are antipodal pairs; a common-tail face is the upper half circle and
    /// a common-head face the lower one.
    Semicircle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CircleKind {
    CircularClique { p: usize, q: usize },
    SquareFree,
}

/// A `Z2`-map `Box(G) -> S^1`, given by its value on every arc.
#[derive(Clone, Debug)]
pub struct CircleMap {
    graph: Digraph,
    angles: Vec<Turn>,
    base_arcs: Vec<(u32, u32)>,
    kind: CircleKind,
}

fn turn(n: i64, d: i64) -> Turn {
    Turn::new(n, d)
}

fn frac(t: Turn) -> Turn {
    t - t.floor()
}

/// Largest circular gap between the given angles; at least a half turn means the
/// angles fit in an open half circle exactly when the gap is strictly larger.
fn largest_gap(angles: &mut [Turn]) -> Turn {
    angles.sort();
    let mut gap = angles[0] + Turn::one() - angles[angles.len() - 1];
    for w in angles.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    gap
}

/// The map induced by `(a, b) -> x_b - x_a` for points `x_i` of a regular `p`-gon,
/// on `K_{p/q}` with `2 < p/q < 4`. The angle of `(a,b)` is `(a+b)/(2p)` plus a
/// quarter turn when `0 < b - a`, otherwise plus three quarters.
pub fn circular_clique_map(p: usize, q: usize) -> Result<CircleMap> {
    if q == 0 || !(2 * q < p && p < 4 * q) {
        return Err(Error::param(format!("K_{{{p}/{q}}} needs 2 < p/q < 4")));
    }
    let g = circular_clique(p, q)?;
    let pi = p as i64;
    let angles: Vec<Turn> = g
        .arcs()
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (a as i64, b as i64);
            let quarter = if b > a { turn(1, 4) } else { turn(3, 4) };
            frac(turn(a + b, 2 * pi) + quarter)
        })
        .collect();
    let base_arcs = g.arcs().to_vec();
    let map = CircleMap {
        angles,
        base_arcs,
        kind: CircleKind::CircularClique { p, q },
        graph: g,
    };
    map.check_face_spans()?;
    Ok(map)
}

/// The map sending arcs `u -> v` with `u < v` to angle 0 and the rest to a half turn,
/// on a square-free undirected loopless graph.
pub fn square_free_map(g: &Digraph) -> Result<CircleMap> {
    if !is_square_free(g)? {
        return Err(Error::input("graph contains a 4-cycle"));
    }
    if crate::graph::has_loop(g) {
        return Err(Error::input("graph has a loop"));
    }
    let bx = box_complex(g)?;
    for face in bx.maximal_faces() {
        let arcs: Vec<(u32, u32)> = face.iter().map(|&i| g.arcs()[i]).collect();
        let common_tail = arcs.iter().all(|a| a.0 == arcs[0].0);
        let common_head = arcs.iter().all(|a| a.1 == arcs[0].1);
        if !common_tail && !common_head {
            return Err(Error::InternalConsistency(format!(
                "face {arcs:?} is neither a common-tail nor a common-head face"
            )));
        }
    }
    let angles = g
        .arcs()
        .iter()
        .map(|&(u, v)| if u < v { Turn::zero() } else { turn(1, 2) })
        .collect();
    Ok(CircleMap {
        graph: g.clone(),
        angles,
        base_arcs: g.arcs().to_vec(),
        kind: CircleKind::SquareFree,
    })
}

/// A circle map on the cycle `C_k` (odd `k`), pulled back from `K_{k/((k-1)/2)}`
/// along `i -> i(k+1)/2`. The cycle generator winds once positively.
pub fn odd_cycle_map(k: usize) -> Result<CircleMap> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::param("odd cycle map needs odd k >= 3"));
    }
    let base = circular_clique_map(k, (k - 1) / 2)?;
    let ck = crate::graph::cycle(k)?;
    let m = k.div_ceil(2);
    let h: Vec<u32> = (0..k).map(|i| ((i * m) % k) as u32).collect();
    base.pull_back(&ck, &h)
}

pub const AUTO_MAX_P: usize = 12;

/// A circle map for `G`: pulled back from the first `K_{p/q}` in lowest terms
/// (`p <= 12`, `2 < p/q < 4`, by increasing `p/q`) that `G` maps to, otherwise
/// the square-free construction.
pub fn auto_circle_map(g: &Digraph) -> Result<CircleMap> {
    let mut fractions: Vec<(Turn, usize, usize)> = (3..=AUTO_MAX_P)
        .flat_map(|p| (1..p).map(move |q| (p, q)))
        .filter(|&(p, q)| 2 * q < p && p < 4 * q)
        .map(|(p, q)| (turn(p as i64, q as i64), p, q))
        .filter(|&(t, p, _)| *t.numer() == p as i64)
        .collect();
    fractions.sort();
    for (_, p, q) in fractions {
        let base = circular_clique_map(p, q)?;
        if let Some(h) = crate::hom::find_hom(g, base.graph())? {
            return base.pull_back(g, &h);
        }
    }
    square_free_map(g)
}

impl CircleMap {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn kind(&self) -> CircleKind {
        self.kind
    }

    pub fn rule(&self) -> StepRule {
        match self.kind {
            CircleKind::CircularClique { .. } => StepRule::ShorterArc,
            CircleKind::SquareFree => StepRule::Semicircle,
        }
    }

    pub fn angles(&self) -> &[Turn] {
        &self.angles
    }

    pub fn angle(&self, u: u32, v: u32) -> Option<Turn> {
        self.graph.arc_index(u, v).map(|i| self.angles[i])
    }

    /// The arc of the defining graph that the given arc is sent to.
    pub fn base_arc(&self, u: u32, v: u32) -> Option<(u32, u32)> {
        self.graph.arc_index(u, v).map(|i| self.base_arcs[i])
    }

    fn check_face_spans(&self) -> Result<()> {
        let bx = box_complex(&self.graph)?;
        for face in bx.maximal_faces() {
            if face.len() < 2 {
                continue;
            }
            let mut angles: Vec<Turn> = face.iter().map(|&i| self.angles[i]).collect();
            if largest_gap(&mut angles) <= turn(1, 2) {
                let arcs: Vec<_> = face.iter().map(|&i| self.graph.arcs()[i]).collect();
                return Err(Error::InternalConsistency(format!(
                    "face {arcs:?} spans at least half a turn"
                )));
            }
        }
        Ok(())
    }

    /// Reversing an arc moves its image by half a turn.
    pub fn is_antipodal(&self) -> bool {
        self.graph.arcs().iter().enumerate().all(|(i, &(u, v))| {
            let j = self.graph.arc_index(v, u);
            j.is_some_and(|j| frac(self.angles[i] + turn(1, 2)) == self.angles[j])
        })
    }

    /// Composes with the map `Box(G) -> Box(base)` induced by a homomorphism `G -> base`.
    pub fn pull_back(&self, g: &Digraph, h: &[u32]) -> Result<CircleMap> {
        if !g.is_undirected() {
            return Err(Error::input("circle maps need undirected graphs"));
        }
        if !is_hom(g, &self.graph, h) {
            return Err(Error::param("pull-back map is not a homomorphism"));
        }
        let mut angles = Vec::with_capacity(g.arc_count());
        let mut base_arcs = Vec::with_capacity(g.arc_count());
        for &(u, v) in g.arcs() {
            let i = self
                .graph
                .arc_index(h[u as usize], h[v as usize])
                .expect("homomorphism image is an arc");
            angles.push(self.angles[i]);
            base_arcs.push(self.base_arcs[i]);
        }
        Ok(CircleMap {
            graph: g.clone(),
            angles,
            base_arcs,
            kind: self.kind,
        })
    }

    /// Signed angle travelled from the image of `a` to the image of `b`, which
    /// must share a face.
    pub fn step(&self, a: (u32, u32), b: (u32, u32)) -> Result<Turn> {
        let ia = self.graph.arc_index(a.0, a.1);
        let ib = self.graph.arc_index(b.0, b.1);
        let (Some(ia), Some(ib)) = (ia, ib) else {
            return Err(Error::CertificateViolation { from: a, to: b });
        };
        if !is_face(&self.graph, &[a, b]) {
            return Err(Error::CertificateViolation { from: a, to: b });
        }
        let (x, y) = (self.angles[ia], self.angles[ib]);
        match self.rule() {
            StepRule::ShorterArc => {
                let d = frac(y - x);
                if d == turn(1, 2) {
                    return Err(Error::DegenerateStep { from: a, to: b });
                }
                Ok(if d > turn(1, 2) { d - Turn::one() } else { d })
            }
            StepRule::Semicircle => {
                if x == y {
                    return Ok(Turn::zero());
                }
                let (ba, bb) = (self.base_arcs[ia], self.base_arcs[ib]);
                let upper = if ba.0 == bb.0 {
                    true
                } else if ba.1 == bb.1 {
                    false
                } else {
                    return Err(Error::CertificateViolation { from: a, to: b });
                };
                let positive_to_negative = x.is_zero();
                let half = turn(1, 2);
                Ok(if upper == positive_to_negative { half } else { -half })
            }
        }
    }

    /// Winding number of the closed walk `walk[0], walk[1], ..., walk[0]`.
    pub fn winding_number(&self, walk: &[(u32, u32)]) -> Result<i64> {
        winding_number(self, walk)
    }
}

pub fn winding_number(map: &CircleMap, walk: &[(u32, u32)]) -> Result<i64> {
    let mut total = Turn::zero();
    for t in 0..walk.len() {
        total += map.step(walk[t], walk[(t + 1) % walk.len()])?;
    }
    if !total.is_integer() {
        return Err(Error::NonIntegralWinding(total.to_string()));
    }
    Ok(total.to_integer())
}

fn check_loop(f: &Polymorphism<'_>, r0: &OddWalk, s: &CircleMap) -> Result<Vec<(u32, u32)>> {
    if *s.graph() != *f.target() {
        return Err(Error::param("circle map is defined on a different graph than the target"));
    }
    let gen = generator_loop_from(r0);
    let h = f.source();
    if r0.is_empty() || gen.iter().any(|&(a, b)| !h.has_arc(a, b)) {
        return Err(Error::param("odd walk is not a closed walk of the source"));
    }
    Ok(gen)
}

/// Image in `Box(G)` of the loop that runs the generator in slot `i` and keeps
/// the base arc (the first generator arc) in the other slots.
pub fn coordinate_loop(f: &Polymorphism<'_>, gen: &[(u32, u32)], i: usize) -> Vec<(u32, u32)> {
    let base = gen[0];
    let mut slots = vec![base; f.arity()];
    gen.iter()
        .map(|&arc| {
            slots[i] = arc;
            mu1(f, &slots)
        })
        .collect()
}

/// Image of the loop running the generator in every slot at once.
pub fn diagonal_loop(f: &Polymorphism<'_>, gen: &[(u32, u32)]) -> Vec<(u32, u32)> {
    gen.iter().map(|&arc| mu1(f, &vec![arc; f.arity()])).collect()
}

/// `c_i` is the winding number of the `i`-th coordinate loop under `s`.
pub fn degree_vector(f: &Polymorphism<'_>, r0: &OddWalk, s: &CircleMap) -> Result<LinearFn> {
    let gen = check_loop(f, r0, s)?;
    let c = (0..f.arity())
        .map(|i| s.winding_number(&coordinate_loop(f, &gen, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearFn(c))
}

/// Winding number of the diagonal loop. Equals the coefficient sum of the degree vector.
pub fn diagonal_degree(f: &Polymorphism<'_>, r0: &OddWalk, s: &CircleMap) -> Result<i64> {
    let gen = check_loop(f, r0, s)?;
    s.winding_number(&diagonal_loop(f, &gen))
}

pub fn degree_vectors(
    exec: Exec,
    fs: &[Polymorphism<'_>],
    r0: &OddWalk,
    s: &CircleMap,
) -> Result<Vec<LinearFn>> {
    exec.map(fs.iter().collect(), |f| degree_vector(f, r0, s))
        .into_iter()
        .collect()
}

/// `N = max |c_1| + |c_2|` over all binary polymorphisms `H^2 -> G`.
pub fn compute_bound_n(h: &Digraph, g: &Digraph, s: &CircleMap, exec: Exec) -> Result<i64> {
    let r0 = shortest_odd_closed_walk(h)?;
    let fs: Vec<_> = enumerate_polymorphisms(h, g, 2)?.collect();
    let vs = degree_vectors(exec, &fs, &r0, s)?;
    Ok(vs.iter().map(|c| c.abs_sum()).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cycle_generator_arcs, generator_loop};
    use crate::graph::{clique, cycle, petersen};

    #[test]
    fn circular_clique_angles() {
        let m = circular_clique_map(5, 2).unwrap();
        assert_eq!(m.angle(0, 2), Some(turn(9, 20)));
        // x_3 - x_0 points just past the half turn
        assert_eq!(m.angle(0, 3), Some(turn(11, 20)));
        assert!(m.is_antipodal());
        for (p, q) in [(3, 1), (5, 2), (7, 2), (11, 3), (7, 3)] {
            assert!(circular_clique_map(p, q).is_ok(), "{p}/{q}");
        }
        assert!(circular_clique_map(4, 2).is_err());
        assert!(circular_clique_map(8, 2).is_err());
    }

    #[test]
    fn square_free_maps() {
        for g in [cycle(5).unwrap(), cycle(7).unwrap(), petersen()] {
            let m = square_free_map(&g).unwrap();
            assert!(m.is_antipodal());
            let w = m.winding_number(&generator_loop(&g).unwrap()).unwrap();
            assert_eq!(w.abs() % 2, 1);
        }
        assert!(square_free_map(&clique(4).unwrap()).is_err());
    }

    #[test]
    fn odd_cycle_generator_winds_once() {
        for k in (3..=11).step_by(2) {
            let m = odd_cycle_map(k).unwrap();
            assert_eq!(m.winding_number(&cycle_generator_arcs(k)).unwrap(), 1, "k = {k}");
        }
    }

    #[test]
    fn steps_need_shared_faces() {
        let m = odd_cycle_map(5).unwrap();
        assert!(matches!(
            m.winding_number(&[(0, 1), (2, 3)]),
            Err(Error::CertificateViolation { .. })
        ));
        assert_eq!(m.winding_number(&[(0, 1)]).unwrap(), 0);
    }

    #[test]
    fn unit_degrees() {
        let c5 = cycle(5).unwrap();
        let s = odd_cycle_map(5).unwrap();
        let r0 = shortest_odd_closed_walk(&c5).unwrap();
        for n in 1..=3 {
            for i in 0..n {
                let proj = Polymorphism::from_rule(&c5, &c5, n, move |x: &[u32]| x[i], 0).unwrap();
                let mut e = vec![0; n];
                e[i] = 1;
                assert_eq!(degree_vector(&proj, &r0, &s).unwrap(), LinearFn(e));
            }
        }
        let reflect = Polymorphism::from_rule(&c5, &c5, 1, |x: &[u32]| (5 - x[0]) % 5, 0).unwrap();
        assert_eq!(degree_vector(&reflect, &r0, &s).unwrap(), LinearFn(vec![-1]));
        let wrong = circular_clique_map(3, 1).unwrap();
        let proj = Polymorphism::from_rule(&c5, &c5, 1, |x: &[u32]| x[0], 0).unwrap();
        assert!(degree_vector(&proj, &r0, &wrong).is_err());
    }
}
