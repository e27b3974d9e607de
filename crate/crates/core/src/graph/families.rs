use super::tuples::{tuple_count, tuple_index};
use super::Digraph;
use crate::{Error, Result};

pub const DEFAULT_TENSOR_CAP: u128 = 1_000_000;
const TENSOR_ARC_CAP: u128 = 50_000_000;

/// The complete graph `K_n`.
pub fn clique(n: usize) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::param("clique needs at least one vertex"));
    }
    let n32 = n as u32;
    let arcs = (0..n32).flat_map(|u| (0..n32).filter(move |&v| v != u).map(move |v| (u, v)));
    Digraph::new(n, arcs)
}

/// The cycle `C_k` on `0..k` with edges `i ~ i+1 mod k`.
pub fn cycle(k: usize) -> Result<Digraph> {
    if k < 3 {
        return Err(Error::param(format!("cycle length {k} is below 3")));
    }
    let k32 = k as u32;
    Digraph::undirected(k, (0..k32).map(|i| (i, (i + 1) % k32)))
}

/// The circular clique `K_{p/q}`: `a ~ b` when the cyclic distance is at least `q`.
pub fn circular_clique(p: usize, q: usize) -> Result<Digraph> {
    if q == 0 || p < 2 * q {
        return Err(Error::param(format!("K_{{{p}/{q}}} needs q >= 1 and p >= 2q")));
    }
    let arcs = (0..p).flat_map(|a| {
        (0..p).filter_map(move |b| {
            let d = (b + p - a) % p;
            (d >= q && d <= p - q).then_some((a as u32, b as u32))
        })
    });
    Digraph::new(p, arcs)
}

/// The path with `k` edges on vertices `0..=k`.
pub fn path(k: usize) -> Digraph {
    let k32 = k as u32;
    Digraph::undirected(k + 1, (0..k32).map(|i| (i, i + 1))).expect("valid path")
}

pub fn petersen() -> Digraph {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Digraph::undirected(10, edges).expect("valid Petersen graph")
}

/// The disjoint union; vertices of `b` are shifted by `|V(a)|`.
pub fn disjoint_union(a: &Digraph, b: &Digraph) -> Digraph {
    let shift = a.vertex_count() as u32;
    let arcs = a
        .arcs()
        .iter()
        .copied()
        .chain(b.arcs().iter().map(|&(u, v)| (u + shift, v + shift)))
        .collect::<Vec<_>>();
    Digraph::new(a.vertex_count() + b.vertex_count(), arcs).expect("shifted arcs in range")
}

pub fn tensor_power(g: &Digraph, n: usize) -> Result<Digraph> {
    tensor_power_capped(g, n, DEFAULT_TENSOR_CAP)
}

/// The categorical power `G^n`. Vertex `i` is the `i`-th tuple in lexicographic order.
pub fn tensor_power_capped(g: &Digraph, n: usize, cap: u128) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::param("tensor power needs n >= 1"));
    }
    let base = g.vertex_count();
    let size = tuple_count(base, n).unwrap_or(u128::MAX);
    Error::check_cap("tensor power vertex set", size, cap)?;
    let arc_total = tuple_count(g.arc_count(), n).unwrap_or(u128::MAX);
    Error::check_cap("tensor power arc set", arc_total, TENSOR_ARC_CAP)?;

    let arcs = g.arcs();
    let m = arcs.len();
    let mut out = Vec::with_capacity(arc_total as usize);
    if m > 0 {
        let mut choice = vec![0usize; n];
        let mut tails = vec![0u32; n];
        let mut heads = vec![0u32; n];
        loop {
            for (slot, &c) in choice.iter().enumerate() {
                tails[slot] = arcs[c].0;
                heads[slot] = arcs[c].1;
            }
            out.push((tuple_index(&tails, base) as u32, tuple_index(&heads, base) as u32));
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < m {
                    break;
                }
                choice[i] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(Digraph::from_sorted(size as usize, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shapes() {
        assert!(clique(0).is_err());
        assert_eq!(clique(4).unwrap().arc_count(), 12);
        assert!(cycle(2).is_err());
        assert_eq!(cycle(5).unwrap().arc_count(), 10);
        assert!(circular_clique(3, 2).is_err());
        assert_eq!(circular_clique(5, 1).unwrap(), clique(5).unwrap());
        assert_eq!(circular_clique(5, 2).unwrap().arc_count(), 10);
        assert_eq!(petersen().arc_count(), 30);
    }

    #[test]
    fn tensor_square_of_k2() {
        let k2 = clique(2).unwrap();
        let sq = tensor_power(&k2, 2).unwrap();
        assert_eq!(sq.vertex_count(), 4);
        // (0,0)-(1,1) and (0,1)-(1,0)
        assert_eq!(sq.arcs(), &[(0, 3), (1, 2), (2, 1), (3, 0)]);
    }

    #[test]
    fn tensor_cap() {
        let k3 = clique(3).unwrap();
        assert!(matches!(
            tensor_power_capped(&k3, 13, DEFAULT_TENSOR_CAP),
            Err(Error::SizeLimit { .. })
        ));
    }
}
