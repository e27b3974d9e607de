//! Polymorphisms, their minors, and the linear minion `Z` with its bounded parts.

use crate::graph::{clique, cycle, tensor_power_capped, tuple_count, tuple_index, GraphRecord};
use crate::hom::{find_hom_pinned, HomIter, HomSolver};
use crate::{Digraph, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

pub const DEFAULT_TABLE_CAP: u128 = 1_000_000;
const SPOT_CHECKS: usize = 10_000;

type Rule<'g> = Arc<dyn Fn(&[u32]) -> u32 + Send + Sync + 'g>;

#[derive(Clone)]
enum Backing<'g> {
    Table(Vec<u32>),
    Rule(Rule<'g>),
}

/// A homomorphism `H^n -> G`, stored as a full table over `V(H)^n` in
/// lexicographic order or as a rule evaluated on demand.
#[derive(Clone)]
pub struct Polymorphism<'g> {
    source: &'g Digraph,
    target: &'g Digraph,
    arity: usize,
    backing: Backing<'g>,
}

impl fmt::Debug for Polymorphism<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Polymorphism");
        d.field("arity", &self.arity);
        match &self.backing {
            Backing::Table(t) => d.field("table", t),
            Backing::Rule(_) => d.field("table", &"<rule>"),
        };
        d.finish()
    }
}

/// JSON form of a table-backed polymorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolymorphismRecord {
    pub source: GraphRecord,
    pub target: GraphRecord,
    pub arity: usize,
    pub table: Vec<u32>,
}

/// Calls `visit` on every `n`-tuple over `0..base` in lexicographic order.
fn for_each_tuple(base: usize, n: usize, mut visit: impl FnMut(&[u32])) {
    let mut t = vec![0u32; n];
    if base == 0 && n > 0 {
        return;
    }
    loop {
        visit(&t);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if (t[i] as usize) < base {
                break;
            }
            t[i] = 0;
        }
    }
}

fn table_size(source: &Digraph, arity: usize, cap: u128) -> Result<usize> {
    let size = tuple_count(source.vertex_count(), arity).unwrap_or(u128::MAX);
    Error::check_cap("polymorphism table", size, cap)?;
    Ok(size as usize)
}

impl<'g> Polymorphism<'g> {
    /// Builds a table-backed polymorphism after checking every arc of `H^n`.
    pub fn from_table(
        source: &'g Digraph,
        target: &'g Digraph,
        arity: usize,
        table: Vec<u32>,
    ) -> Result<Self> {
        if arity == 0 {
            return Err(Error::param("arity must be positive"));
        }
        let size = table_size(source, arity, DEFAULT_TABLE_CAP)?;
        if table.len() != size {
            return Err(Error::param(format!(
                "table has {} entries, expected {size}",
                table.len()
            )));
        }
        if table.iter().any(|&x| x as usize >= target.vertex_count()) {
            return Err(Error::param("table value outside the target"));
        }
        let f = Polymorphism {
            source,
            target,
            arity,
            backing: Backing::Table(table),
        };
        f.check_arcs(None)?;
        Ok(f)
    }

    pub(crate) fn from_table_unchecked(
        source: &'g Digraph,
        target: &'g Digraph,
        arity: usize,
        table: Vec<u32>,
    ) -> Self {
        Polymorphism {
            source,
            target,
            arity,
            backing: Backing::Table(table),
        }
    }

    /// Builds a rule-backed polymorphism. Arc preservation is checked on every arc
    /// of `H^n` when there are at most ten thousand, otherwise on that many arcs
    /// drawn with the given seed.
    pub fn from_rule(
        source: &'g Digraph,
        target: &'g Digraph,
        arity: usize,
        rule: impl Fn(&[u32]) -> u32 + Send + Sync + 'g,
        seed: u64,
    ) -> Result<Self> {
        if arity == 0 {
            return Err(Error::param("arity must be positive"));
        }
        let f = Polymorphism {
            source,
            target,
            arity,
            backing: Backing::Rule(Arc::new(rule)),
        };
        f.check_arcs(Some(seed))?;
        Ok(f)
    }

    fn check_arcs(&self, seed: Option<u64>) -> Result<()> {
        let arcs = self.source.arcs();
        let m = arcs.len();
        if m == 0 {
            return Ok(());
        }
        let total = tuple_count(m, self.arity).unwrap_or(u128::MAX);
        let mut tails = vec![0u32; self.arity];
        let mut heads = vec![0u32; self.arity];
        let mut check = |choice: &[u32]| -> Result<()> {
            for (slot, &c) in choice.iter().enumerate() {
                tails[slot] = arcs[c as usize].0;
                heads[slot] = arcs[c as usize].1;
            }
            let (a, b) = (self.eval(&tails), self.eval(&heads));
            if !self.target.has_arc(a, b) {
                return Err(Error::CorruptPolymorphism(format!(
                    "{tails:?} -> {heads:?} maps to ({a},{b})"
                )));
            }
            Ok(())
        };
        match seed {
            Some(seed) if total > SPOT_CHECKS as u128 => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut choice = vec![0u32; self.arity];
                for _ in 0..SPOT_CHECKS {
                    for c in choice.iter_mut() {
                        *c = rng.gen_range(0..m as u32);
                    }
                    check(&choice)?;
                }
                Ok(())
            }
            _ => {
                let mut result = Ok(());
                for_each_tuple(m, self.arity, |choice| {
                    if result.is_ok() {
                        result = check(choice);
                    }
                });
                result
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn source(&self) -> &'g Digraph {
        self.source
    }

    pub fn target(&self) -> &'g Digraph {
        self.target
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        debug_assert_eq!(x.len(), self.arity);
        match &self.backing {
            Backing::Table(t) => t[tuple_index(x, self.source.vertex_count())],
            Backing::Rule(r) => r(x),
        }
    }

    pub fn table(&self) -> Option<&[u32]> {
        match &self.backing {
            Backing::Table(t) => Some(t),
            Backing::Rule(_) => None,
        }
    }

    /// A table-backed copy, evaluating a rule on every tuple.
    pub fn materialize(&self) -> Result<Polymorphism<'g>> {
        if self.table().is_some() {
            return Ok(self.clone());
        }
        let size = table_size(self.source, self.arity, DEFAULT_TABLE_CAP)?;
        let mut table = Vec::with_capacity(size);
        for_each_tuple(self.source.vertex_count(), self.arity, |t| table.push(self.eval(t)));
        Ok(Self::from_table_unchecked(self.source, self.target, self.arity, table))
    }

    pub fn record(&self) -> Result<PolymorphismRecord> {
        let f = self.materialize()?;
        Ok(PolymorphismRecord {
            source: self.source.record(),
            target: self.target.record(),
            arity: self.arity,
            table: f.table().unwrap().to_vec(),
        })
    }

    /// Tables of two polymorphisms agree on every tuple.
    pub fn same_function(&self, other: &Polymorphism<'_>) -> bool {
        if self.arity != other.arity || self.source.vertex_count() != other.source.vertex_count() {
            return false;
        }
        if let (Some(a), Some(b)) = (self.table(), other.table()) {
            return a == b;
        }
        let mut same = true;
        for_each_tuple(self.source.vertex_count(), self.arity, |t| {
            same &= self.eval(t) == other.eval(t);
        });
        same
    }
}

/// Lazy lexicographic enumeration of `Pol(H, G)` at a fixed arity.
pub struct PolymorphismIter<'g> {
    source: &'g Digraph,
    target: &'g Digraph,
    arity: usize,
    inner: HomIter<'static>,
}

impl<'g> Iterator for PolymorphismIter<'g> {
    type Item = Polymorphism<'g>;

    fn next(&mut self) -> Option<Self::Item> {
        let table = self.inner.next()?;
        Some(Polymorphism::from_table_unchecked(
            self.source,
            self.target,
            self.arity,
            table,
        ))
    }
}

pub fn enumerate_polymorphisms<'g>(
    h: &'g Digraph,
    g: &'g Digraph,
    arity: usize,
) -> Result<PolymorphismIter<'g>> {
    enumerate_polymorphisms_capped(h, g, arity, DEFAULT_TABLE_CAP)
}

pub fn enumerate_polymorphisms_capped<'g>(
    h: &'g Digraph,
    g: &'g Digraph,
    arity: usize,
    cap: u128,
) -> Result<PolymorphismIter<'g>> {
    let power = tensor_power_capped(h, arity, cap)?;
    let inner = HomSolver::new(g)?.into_iter_owned(&power);
    Ok(PolymorphismIter {
        source: h,
        target: g,
        arity,
        inner,
    })
}

/// A polymorphism found by search with seeded random value order.
pub fn random_polymorphism<'g, R: Rng + ?Sized>(
    h: &'g Digraph,
    g: &'g Digraph,
    arity: usize,
    rng: &mut R,
) -> Result<Option<Polymorphism<'g>>> {
    let power = tensor_power_capped(h, arity, DEFAULT_TABLE_CAP)?;
    let solver = HomSolver::new(g)?;
    Ok(solver
        .random(&power, rng)
        .map(|t| Polymorphism::from_table_unchecked(h, g, arity, t)))
}

/// `count` seeded samples; sample `i` uses its own stream, so the list does not
/// depend on how it is consumed.
pub fn random_polymorphisms<'g>(
    h: &'g Digraph,
    g: &'g Digraph,
    arity: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Polymorphism<'g>>> {
    let power = tensor_power_capped(h, arity, DEFAULT_TABLE_CAP)?;
    let solver = HomSolver::new(g)?;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        match solver.random(&power, &mut rng) {
            Some(t) => out.push(Polymorphism::from_table_unchecked(h, g, arity, t)),
            None => break,
        }
    }
    Ok(out)
}

fn check_minor_map(pi: &[usize], m: usize, n: usize) -> Result<()> {
    if pi.len() != m {
        return Err(Error::param(format!(
            "minor map has length {}, arity is {m}",
            pi.len()
        )));
    }
    if let Some(&bad) = pi.iter().find(|&&j| j >= n) {
        return Err(Error::param(format!("minor map value {bad} outside 0..{n}")));
    }
    if n == 0 {
        return Err(Error::param("minor arity must be positive"));
    }
    Ok(())
}

/// The minor `f^pi` of arity `n`: `f^pi(x_0..x_{n-1}) = f(x_{pi(0)}, ..., x_{pi(m-1)})`.
pub fn minor<'g>(f: &Polymorphism<'g>, pi: &[usize], n: usize) -> Result<Polymorphism<'g>> {
    check_minor_map(pi, f.arity, n)?;
    match &f.backing {
        Backing::Table(_) => {
            let size = table_size(f.source, n, DEFAULT_TABLE_CAP)?;
            let mut table = Vec::with_capacity(size);
            let mut y = vec![0u32; f.arity];
            for_each_tuple(f.source.vertex_count(), n, |x| {
                for (slot, &j) in pi.iter().enumerate() {
                    y[slot] = x[j];
                }
                table.push(f.eval(&y));
            });
            Ok(Polymorphism::from_table_unchecked(f.source, f.target, n, table))
        }
        Backing::Rule(rule) => {
            let rule = rule.clone();
            let pi = pi.to_vec();
            let inner: Rule<'g> = Arc::new(move |x: &[u32]| {
                let y: Vec<u32> = pi.iter().map(|&j| x[j]).collect();
                rule(&y)
            });
            Ok(Polymorphism {
                source: f.source,
                target: f.target,
                arity: n,
                backing: Backing::Rule(inner),
            })
        }
    }
}

/// Coordinates `i` such that changing `x_i` alone changes the value somewhere.
pub fn essential_coords(f: &Polymorphism<'_>) -> Result<Vec<usize>> {
    let Some(table) = f.table() else {
        return Err(Error::Unsupported(
            "essential coordinates need a table; call materialize first".into(),
        ));
    };
    let base = f.source.vertex_count();
    let n = f.arity;
    let mut essential = vec![false; n];
    let mut stride = 1usize;
    for i in (0..n).rev() {
        // positions sharing all coordinates but i differ by multiples of stride
        'scan: for (idx, &val) in table.iter().enumerate() {
            let digit = (idx / stride) % base;
            if digit != 0 {
                continue;
            }
            for d in 1..base {
                if table[idx + d * stride] != val {
                    essential[i] = true;
                    break 'scan;
                }
            }
        }
        stride *= base;
    }
    Ok((0..n).filter(|&i| essential[i]).collect())
}

/// An element of the minion `Z`: an integer vector, read as a linear form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearFn(pub Vec<i64>);

impl LinearFn {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn abs_sum(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }
}

/// Minor in `Z`: `d_j = sum of c_i over i with pi(i) = j`.
pub fn linear_minor(c: &LinearFn, pi: &[usize], n: usize) -> Result<LinearFn> {
    check_minor_map(pi, c.arity(), n)?;
    let mut d = vec![0i64; n];
    for (i, &j) in pi.iter().enumerate() {
        d[j] += c.0[i];
    }
    Ok(LinearFn(d))
}

/// Membership in `Z_{<=N}`: odd coefficient sum and absolute sum at most `N`.
pub fn z_leq_n_member(c: &LinearFn, bound: i64) -> bool {
    c.coefficient_sum().rem_euclid(2) == 1 && c.abs_sum() <= bound
}

/// The `H`-loop condition for `f` of arity `|E(H)|`: with the arcs
/// `(a_1,b_1), ..., (a_m,b_m)` of `H` in order, the minors
/// `f(x_{a_1}, ..., x_{a_m})` and `f(x_{b_1}, ..., x_{b_m})` coincide.
pub fn h_loop_check(h: &Digraph, f: &Polymorphism<'_>) -> Result<bool> {
    if f.arity != h.arc_count() {
        return Err(Error::param(format!(
            "H has {} arcs but f has arity {}",
            h.arc_count(),
            f.arity
        )));
    }
    let tails: Vec<usize> = h.arcs().iter().map(|&(a, _)| a as usize).collect();
    let heads: Vec<usize> = h.arcs().iter().map(|&(_, b)| b as usize).collect();
    let n = h.vertex_count();
    table_size(f.source, n, DEFAULT_TABLE_CAP)?;
    let left = minor(f, &tails, n)?;
    let right = minor(f, &heads, n)?;
    Ok(left.same_function(&right))
}

/// The function `f(x) = 2` if every `x_i = 1`, otherwise `h(x_1)`, from `C_k^n` to
/// `K_3`. Here `h` is the lexicographically least 3-colouring of `C_k` with
/// `h(0) = h(2) = 0` and `h(1) = 1`. Every coordinate is essential.
pub fn ones_switch_function<'g>(
    ck: &'g Digraph,
    k3: &'g Digraph,
    n: usize,
) -> Result<Polymorphism<'g>> {
    let k = ck.vertex_count();
    if k < 5 || k.is_multiple_of(2) || *ck != cycle(k)? {
        return Err(Error::param("source must be an odd cycle C_k with k >= 5"));
    }
    if *k3 != clique(3)? {
        return Err(Error::param("target must be K3"));
    }
    let h = find_hom_pinned(ck, k3, &[(0, 0), (1, 1), (2, 0)])?
        .ok_or_else(|| Error::input("no colouring with the required prefix"))?;
    Polymorphism::from_rule(
        ck,
        k3,
        n,
        move |x: &[u32]| {
            if x.iter().all(|&v| v == 1) {
                2
            } else {
                h[x[0] as usize]
            }
        },
        0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique, cycle, tensor_power};
    use crate::hom::is_hom;

    fn projection<'g>(h: &'g Digraph, n: usize, i: usize) -> Polymorphism<'g> {
        Polymorphism::from_rule(h, h, n, move |x: &[u32]| x[i], 1).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let k3 = clique(3).unwrap();
        let k2 = clique(2).unwrap();
        assert_eq!(enumerate_polymorphisms(&k3, &k3, 1).unwrap().count(), 6);
        assert_eq!(enumerate_polymorphisms(&k3, &k3, 2).unwrap().count(), 12);
        assert_eq!(enumerate_polymorphisms(&k2, &k2, 2).unwrap().count(), 4);
    }

    #[test]
    fn enumerated_tables_are_homomorphisms_in_order() {
        let c5 = cycle(5).unwrap();
        let k3 = clique(3).unwrap();
        let power = tensor_power(&c5, 2).unwrap();
        let tables: Vec<Vec<u32>> = enumerate_polymorphisms(&c5, &k3, 2)
            .unwrap()
            .map(|f| f.table().unwrap().to_vec())
            .collect();
        assert!(tables.windows(2).all(|w| w[0] < w[1]));
        assert!(tables.iter().all(|t| is_hom(&power, &k3, t)));
    }

    #[test]
    fn corrupt_tables_are_rejected() {
        let k3 = clique(3).unwrap();
        assert!(matches!(
            Polymorphism::from_table(&k3, &k3, 1, vec![0, 0, 1]),
            Err(Error::CorruptPolymorphism(_))
        ));
        assert!(Polymorphism::from_table(&k3, &k3, 1, vec![0, 1]).is_err());
        assert!(Polymorphism::from_table(&k3, &k3, 1, vec![2, 0, 1]).is_ok());
        assert!(Polymorphism::from_rule(&k3, &k3, 3, |_: &[u32]| 0, 0).is_err());
    }

    #[test]
    fn minors_of_projections() {
        let c5 = cycle(5).unwrap();
        let p0 = projection(&c5, 2, 0).materialize().unwrap();
        let diag = minor(&p0, &[0, 0], 1).unwrap();
        assert_eq!(diag.table().unwrap(), &[0, 1, 2, 3, 4]);
        let swapped = minor(&p0, &[1, 0], 2).unwrap();
        assert!(swapped.same_function(&projection(&c5, 2, 1)));
        // introducing an inessential variable
        let padded = minor(&diag, &[1], 3).unwrap();
        assert_eq!(essential_coords(&padded).unwrap(), vec![1]);
        assert!(matches!(minor(&p0, &[0, 3], 2), Err(Error::InvalidParameter(_))));
        assert!(matches!(minor(&p0, &[0], 2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn minor_composition() {
        let k3 = clique(3).unwrap();
        let fs: Vec<_> = enumerate_polymorphisms(&k3, &k3, 3).unwrap().collect();
        let pi = [1usize, 0, 1];
        let rho = [0usize, 0];
        let composed: Vec<usize> = pi.iter().map(|&j| rho[j]).collect();
        for f in &fs {
            let a = minor(&minor(f, &pi, 2).unwrap(), &rho, 1).unwrap();
            let b = minor(f, &composed, 1).unwrap();
            assert!(a.same_function(&b));
        }
    }

    #[test]
    fn essential_coordinates_of_k3() {
        let k3 = clique(3).unwrap();
        for n in 1..=3 {
            for f in enumerate_polymorphisms(&k3, &k3, n).unwrap() {
                assert_eq!(essential_coords(&f).unwrap().len(), 1);
            }
        }
        let rule = projection(&k3, 2, 0);
        assert!(matches!(essential_coords(&rule), Err(Error::Unsupported(_))));
    }

    #[test]
    fn ones_switch() {
        let c5 = cycle(5).unwrap();
        let k3 = clique(3).unwrap();
        for n in 1..=4 {
            let f = ones_switch_function(&c5, &k3, n).unwrap();
            let table = f.materialize().unwrap();
            let fresh = Polymorphism::from_table(&c5, &k3, n, table.table().unwrap().to_vec());
            assert!(fresh.is_ok());
            assert_eq!(essential_coords(&table).unwrap(), (0..n).collect::<Vec<_>>());
        }
        assert!(ones_switch_function(&cycle(3).unwrap(), &k3, 2).is_err());
    }

    #[test]
    fn linear_minion() {
        let c = LinearFn(vec![1, 0, 2]);
        assert_eq!(linear_minor(&c, &[0, 0, 0], 1).unwrap(), LinearFn(vec![3]));
        assert_eq!(linear_minor(&c, &[1, 0, 1], 2).unwrap(), LinearFn(vec![0, 3]));
        assert!(z_leq_n_member(&LinearFn(vec![1, 0, 0]), 1));
        assert!(!z_leq_n_member(&LinearFn(vec![1, 1]), 5));
        assert!(!z_leq_n_member(&LinearFn(vec![3, -2, 0]), 4));
        assert!(z_leq_n_member(&LinearFn(vec![3, -2, 0]), 5));
        assert!(linear_minor(&c, &[0, 1], 2).is_err());
    }

    #[test]
    fn loop_conditions() {
        let k2 = clique(2).unwrap();
        let c5 = cycle(5).unwrap();
        let k3 = clique(3).unwrap();
        let p0 = projection(&c5, 2, 0);
        assert!(!h_loop_check(&k2, &p0).unwrap());
        // a loop of length one is satisfied by every unary function
        let single = Digraph::new(1, [(0, 0)]).unwrap();
        let unary = projection(&c5, 1, 0);
        assert!(h_loop_check(&single, &unary).unwrap());
        // no binary polymorphism C5 -> K3 is symmetric: (x,y) ~ (y,x) whenever x ~ y
        let symmetric = enumerate_polymorphisms(&c5, &k3, 2)
            .unwrap()
            .filter(|f| h_loop_check(&k2, f).unwrap())
            .count();
        assert_eq!(symmetric, 0);
        // with a looped target the constant map is symmetric
        let looped = Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0), (0, 0)]).unwrap();
        let found = enumerate_polymorphisms(&c5, &looped, 2)
            .unwrap()
            .any(|f| h_loop_check(&k2, &f).unwrap());
        assert!(found);
        assert!(h_loop_check(&k3, &p0).is_err());
    }
}
